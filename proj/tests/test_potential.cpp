#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qslit/potential.hpp>

#include <cmath>
#include <random>

using namespace qslit;

namespace {

const PhysParams kDefault{};

// independent reference: expanded trinomial prefactor with a plain exp
double v_slit_reference(double x, double y, const PhysParams& p) {
    const double poly = p.v0 - 0.5 * p.m * p.omega * p.omega * y * y +
                        p.m * p.m * std::pow(p.omega, 4) * std::pow(y, 4) / (16.0 * p.v0);
    return poly * std::exp(-(x / p.alpha) * (x / p.alpha));
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

// bisection root of f on [lo, hi]; assumes one sign change
template <typename F>
double bisect(F f, double lo, double hi, double tol) {
    double flo = f(lo);
    for (int i = 0; i < 200 && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((flo <= 0) == (fm <= 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("barrier values") {
    CHECK(v_slit(0, 0, kDefault) == doctest::Approx(1e7).epsilon(1e-14));

    // the prefactor is a perfect square: zero at y = 2 sqrt(v0/(m omega^2))
    const double y_zero = 2.0 * std::sqrt(kDefault.v0 / (kDefault.m * kDefault.omega * kDefault.omega));
    CHECK(y_zero == doctest::Approx(0.6324555320336759).epsilon(1e-14));
    CHECK(std::abs(v_slit(0, y_zero, kDefault)) < 1e-6 * kDefault.v0);

    // the source region is force-free: the envelope underflows to exactly 0
    CHECK(v_slit(400, 0, kDefault) == 0.0);
}

TEST_CASE("barrier symmetry, positivity, locality") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 500; ++i) {
        const double x = uniform(rng, -20, 20);
        const double y = uniform(rng, -8, 8);
        const double v = v_slit(x, y, kDefault);
        CHECK(v >= 0.0);
        CHECK(v == v_slit(-x, y, kDefault));
        CHECK(v == v_slit(x, -y, kDefault));
    }
    // beyond 10 alpha the barrier is numerically dead
    CHECK(v_slit(10.0 * kDefault.alpha + 1e-9, 0, kDefault) < kDefault.v0 * std::exp(-100.0));

    // matches the expanded form away from the cancellation-prone zeros
    for (int i = 0; i < 200; ++i) {
        const double x = uniform(rng, -10, 10);
        const double y = uniform(rng, -3, 3);
        const double a = v_slit(x, y, kDefault);
        const double b = v_slit_reference(x, y, kDefault);
        CHECK(std::abs(a - b) <= 1e-8 * (std::abs(a) + kDefault.v0));
    }
}

TEST_CASE("slit centers") {
    const SlitGeometry geo = slit_centers(kDefault);
    CHECK(geo.y_slit == doctest::Approx(0.6324555320336759).epsilon(1e-14));
    CHECK(geo.d == doctest::Approx(1.2649110640673518).epsilon(1e-14));

    // cross-check: root of the linear-in-y^2 factor, bracketed numerically
    const double q = kDefault.m * kDefault.omega * kDefault.omega / (4.0 * kDefault.v0);
    const double root = bisect([&](double y) { return 1.0 - q * y * y; }, 0.0, 4.0, 1e-12);
    CHECK(geo.y_slit == doctest::Approx(root).epsilon(1e-9));

    PhysParams p2{1.0, 2.0, 1.0, 1.5, 1.0, 0.25};
    CHECK(slit_centers(p2).y_slit == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(slit_centers(p2).d == doctest::Approx(2.0).epsilon(1e-14));

    PhysParams p3{4.0, 1.0, 1.0, 1.5, 1.0, 0.25};
    CHECK(slit_centers(p3).y_slit == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("slit width at a probe energy") {
    CHECK_THROWS_AS(slit_width(kDefault, 12.5e6), domain_error);  // above v0
    CHECK_THROWS_AS(slit_width(kDefault, kDefault.v0), domain_error);  // boundary is out of range
    CHECK_THROWS_AS(slit_width(kDefault, 0.0), domain_error);
    CHECK_THROWS_AS(slit_width(kDefault, -1.0), domain_error);

    // bisection oracle on V(0, y) - e around the opening
    const double e_probe = 0.25 * kDefault.v0;
    const double y_slit = slit_centers(kDefault).y_slit;
    auto f = [&](double y) { return v_slit(0, y, kDefault) - e_probe; };
    const double y_lo = bisect(f, 0.0, y_slit, 1e-12);
    const double y_hi = bisect(f, y_slit, 2.0 * y_slit, 1e-12);
    CHECK(slit_width(kDefault, e_probe) == doctest::Approx(y_hi - y_lo).epsilon(1e-9));
}

TEST_CASE("validation potentials") {
    CHECK(v_validation(PotentialKind::free_particle(), 17.0, kDefault) == 0.0);
    PhysParams m1 = kDefault;
    CHECK(v_validation(PotentialKind::harmonic(2.0), 3.0, m1) == doctest::Approx(18.0));
    PhysParams m2 = kDefault;
    m2.m = 2.0;
    CHECK(v_validation(PotentialKind::harmonic(1.0), 1.0, m2) == doctest::Approx(1.0));
    CHECK(dv_validation(PotentialKind::harmonic(1.0), 1.0, m2) == doctest::Approx(2.0));

    CHECK_THROWS_AS(PotentialKind::harmonic(0.0), domain_error);
    CHECK_THROWS_AS(v_validation(PotentialKind::double_slit(), 0.0, kDefault), domain_error);
}

TEST_CASE("barrier scaling keeps geometry") {
    const PhysParams scaled = scale_barrier(kDefault, 1e-30);
    CHECK_NOTHROW(validate_params(scaled));
    CHECK(slit_centers(scaled).y_slit == doctest::Approx(slit_centers(kDefault).y_slit).epsilon(1e-12));
    CHECK(v_slit(0, 0, scaled) == doctest::Approx(1e-30 * v_slit(0, 0, kDefault)).epsilon(1e-12));
    CHECK_THROWS_AS(scale_barrier(kDefault, 0.0), domain_error);
}
