#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qslit/dynamics.hpp>
#include <qslit/validation.hpp>

#include <cmath>
#include <random>

using namespace qslit;

namespace {

const PhysParams kDefault{};

PhaseState beam_state(double y0) {
    PhaseState st;
    st.x = 400;
    st.y = y0;
    st.px = -5000;
    st.sx = 0.2;
    st.sy = 0.2;
    return st;
}

// independent route: four explicit evaluations of the barrier, plain exp
double hamiltonian_2d_reference(const PhaseState& st, const PhysParams& p) {
    auto v = [&](double x, double y) {
        const double poly = p.v0 - 0.5 * p.m * p.omega * p.omega * y * y +
                            p.m * p.m * std::pow(p.omega, 4) * std::pow(y, 4) / (16.0 * p.v0);
        return poly * std::exp(-(x / p.alpha) * (x / p.alpha));
    };
    const double kin = (st.px * st.px + st.psx * st.psx + st.py * st.py + st.psy * st.psy) /
                       (2.0 * p.m);
    const double cas = p.u / (2.0 * p.m) * (1.0 / (st.sx * st.sx) + 1.0 / (st.sy * st.sy));
    const double pot = 0.25 * (v(st.x + st.sx, st.y + st.sy) + v(st.x + st.sx, st.y - st.sy) +
                               v(st.x - st.sx, st.y + st.sy) + v(st.x - st.sx, st.y - st.sy));
    return kin + cas + pot;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

}  // namespace

TEST_CASE("2-D Hamiltonian values") {
    // beam state far from the barrier: kinetic + two Casimir terms only
    const PhaseState st = beam_state(0);
    CHECK(hamiltonian_2d(st, kDefault) == doctest::Approx(12500006.25).epsilon(1e-12));

    // free particle: V scaled away, s = 1 leaves U/(2ms^2) twice
    PhaseState unit;
    unit.sx = unit.sy = 1.0;
    const PhysParams free_p = scale_barrier(kDefault, 1e-30);
    CHECK(hamiltonian_2d(unit, free_p) == doctest::Approx(0.25).epsilon(1e-12));

    // mirror symmetry in (y, py)
    PhaseState a = beam_state(1.3);
    a.py = 77;
    a.x = 1.0;
    PhaseState b = a;
    b.y = -a.y;
    b.py = -a.py;
    CHECK(hamiltonian_2d(a, kDefault) == hamiltonian_2d(b, kDefault));

    PhaseState bad = st;
    bad.sx = 0;
    CHECK_THROWS_AS(hamiltonian_2d(bad, kDefault), domain_error);
}

TEST_CASE("2-D Hamiltonian agrees with the four-point reference") {
    std::mt19937_64 rng(512);
    for (int i = 0; i < 300; ++i) {
        PhaseState st;
        st.x = uniform(rng, -8, 8);
        st.y = uniform(rng, -3, 3);
        st.px = uniform(rng, -6000, 6000);
        st.py = uniform(rng, -300, 300);
        st.sx = uniform(rng, 0.05, 0.8);
        st.sy = uniform(rng, 0.05, 0.8);
        st.psx = uniform(rng, -300, 300);
        st.psy = uniform(rng, -300, 300);
        const double h1 = hamiltonian_2d(st, kDefault);
        const double h2 = hamiltonian_2d_reference(st, kDefault);
        // the expanded-trinomial route loses digits near the openings
        CHECK(std::abs(h1 - h2) <= 1e-8 * (std::abs(h1) + kDefault.v0));
    }
}

TEST_CASE("equations of motion in the force-free region") {
    const StateDerivative d = rhs_2d(beam_state(0), kDefault);
    CHECK(d.dx == -5000.0);
    CHECK(d.dy == 0.0);
    CHECK(d.dpx == 0.0);
    CHECK(d.dpy == 0.0);
    CHECK(d.dsx == 0.0);
    CHECK(d.dsy == 0.0);
    // pure Casimir repulsion: U/(m s^3)
    CHECK(d.dpsx == doctest::Approx(31.25).epsilon(1e-12));
    CHECK(d.dpsy == doctest::Approx(31.25).epsilon(1e-12));

    PhaseState unit;
    unit.sx = unit.sy = 1.0;
    const StateDerivative df = rhs_2d(unit, scale_barrier(kDefault, 1e-30));
    CHECK(df.dpsx == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("mirror property of the flow") {
    std::mt19937_64 rng(81);
    for (int i = 0; i < 100; ++i) {
        PhaseState a;
        a.x = uniform(rng, -5, 5);
        a.y = uniform(rng, -2, 2);
        a.px = uniform(rng, -6000, 0);
        a.py = uniform(rng, -100, 100);
        a.sx = uniform(rng, 0.05, 0.5);
        a.sy = uniform(rng, 0.05, 0.5);
        a.psx = uniform(rng, -100, 100);
        a.psy = uniform(rng, -100, 100);
        PhaseState b = a;
        b.y = -a.y;
        b.py = -a.py;

        const StateDerivative da = rhs_2d(a, kDefault);
        const StateDerivative db = rhs_2d(b, kDefault);
        CHECK(db.dy == -da.dy);
        CHECK(db.dpy == -da.dpy);
        CHECK(db.dx == da.dx);
        CHECK(db.dpx == da.dpx);
        CHECK(db.dsx == da.dsx);
        CHECK(db.dpsx == da.dpsx);
        CHECK(db.dsy == da.dsy);
        CHECK(db.dpsy == da.dpsy);
    }
}

TEST_CASE("1-D Hamiltonian and derivatives") {
    PhysParams p = kDefault;
    CHECK(hamiltonian_1d(State1D{0, 0, 0.2, 0}, 0.25, PotentialKind::free_particle(), p) ==
          doctest::Approx(3.125).epsilon(1e-12));
    CHECK(hamiltonian_1d(State1D{1, 0, 1, 0}, 0.25, PotentialKind::harmonic(1.0), p) ==
          doctest::Approx(1.125).epsilon(1e-12));

    // harmonic expands to (px^2+ps^2)/2m + u/2ms^2 + m w^2 (x^2 + s^2)/2
    const State1D st{0.7, 13.0, 0.4, -2.0};
    const double u = 0.3;
    const double w = 3.0;
    const double expect = (13.0 * 13.0 + 4.0) / 2.0 + u / (2.0 * 0.16) +
                          0.5 * w * w * (0.49 + 0.16);
    CHECK(hamiltonian_1d(st, u, PotentialKind::harmonic(w), p) ==
          doctest::Approx(expect).epsilon(1e-12));

    const Derivative1D free_d = rhs_1d(State1D{0, 0, 0.2, 0}, 0.25, PotentialKind::free_particle(), p);
    CHECK(free_d.dps == doctest::Approx(31.25).epsilon(1e-12));
    CHECK(free_d.dpx == 0.0);

    const Derivative1D harm = rhs_1d(State1D{0.5, 0, 0.3, 0}, 0.25, PotentialKind::harmonic(2.0), p);
    CHECK(harm.dps == doctest::Approx(0.25 / 0.027 - 4.0 * 0.3).epsilon(1e-12));
    CHECK(harm.dpx == doctest::Approx(-4.0 * 0.5).epsilon(1e-12));

    PhysParams m2 = p;
    m2.m = 2.0;
    const Derivative1D d2 = rhs_1d(State1D{0, 3.0, 1.0, 3.0}, 0.25, PotentialKind::free_particle(), m2);
    CHECK(d2.ds == doctest::Approx(1.5).epsilon(1e-12));

    CHECK_THROWS_AS(rhs_1d(State1D{0, 0, 0, 0}, 0.25, PotentialKind::free_particle(), p), domain_error);
    CHECK_THROWS_AS(hamiltonian_1d(State1D{0, 0, -1, 0}, 0.25, PotentialKind::free_particle(), p),
                    domain_error);
}

TEST_CASE("gradient consistency") {
    // force-free: everything analytic and tiny
    CHECK(grad_check(beam_state(0.7), kDefault) < 1e-10);

    // barrier center: steep exponentials, looser bound
    PhaseState center;
    center.x = 0;
    center.y = 0;
    center.px = -5000;
    center.sx = center.sy = 0.2;
    CHECK(grad_check(center, kDefault) < 1e-5);

    // random states around the beam ranges
    const StateRanges ranges{-6, 6, -3, 3, -6000, -1000, -200, 200, 0.05, 0.5, -200, 200};
    CHECK(max_grad_error(kDefault, ranges, 100, 2024) < 1e-5);
}

TEST_CASE("a corrupted derivative is caught") {
    Rhs2DFn flipped = [](const PhaseState& st, const PhysParams& p) {
        StateDerivative d = rhs_2d(st, p);
        d.dpy = -d.dpy;
        return d;
    };
    PhaseState st;
    st.x = 0.5;
    st.y = 0.8;  // off-axis so dpy != 0
    st.px = -5000;
    st.sx = st.sy = 0.2;
    CHECK(grad_check_against(flipped, st, kDefault) > 1e-2);
    CHECK(grad_check(st, kDefault) < 1e-5);
}
