#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qslit/analysis.hpp>
#include <qslit/potential.hpp>
#include <qslit/validation.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

using namespace qslit;

namespace {

const PhysParams kDefault{};
const IntegratorConfig kIntegrator{};

std::vector<ArrivalRecord> make_arrivals(const std::vector<double>& ys) {
    std::vector<ArrivalRecord> out;
    for (std::size_t i = 0; i < ys.size(); ++i)
        out.push_back(ArrivalRecord{static_cast<int>(i), 0.0, ys[i], 0.16});
    return out;
}

PhaseState beam_state(double y0) {
    PhaseState st;
    st.x = 400;
    st.y = y0;
    st.px = -5000;
    st.sx = 0.2;
    st.sy = 0.2;
    return st;
}

}  // namespace

TEST_CASE("histogram basics") {
    HistogramSpec spec;
    const Histogram one = histogram(make_arrivals({0.0}), spec);
    CHECK(std::accumulate(one.counts.begin(), one.counts.end(), 0.0) == 1.0);
    int nonzero = 0;
    for (const double c : one.counts) nonzero += c != 0;
    CHECK(nonzero == 1);

    const Histogram pair = histogram(make_arrivals({0.35, -0.35}), spec);
    const std::size_t n = pair.counts.size();
    for (std::size_t i = 0; i < n; ++i) CHECK(pair.counts[i] == pair.counts[n - 1 - i]);
    CHECK(std::accumulate(pair.counts.begin(), pair.counts.end(), 0.0) == 2.0);

    // mass conservation incl. the kernel-smoothed column
    const Histogram many = histogram(make_arrivals({-5.9, -0.21, 0.0, 0.05, 1.4, 5.95}), spec);
    CHECK(std::accumulate(many.counts.begin(), many.counts.end(), 0.0) == 6.0);
    CHECK(std::accumulate(many.smoothed.begin(), many.smoothed.end(), 0.0) ==
          doctest::Approx(6.0).epsilon(1e-9));

    // out-of-range arrivals are counted separately, never lost
    const Histogram out = histogram(make_arrivals({0.0, 7.0, -6.5}), spec);
    CHECK(std::accumulate(out.counts.begin(), out.counts.end(), 0.0) + out.underflow +
              out.overflow ==
          3.0);

    CHECK_THROWS_AS(histogram({}, spec), empty_input_error);
}

TEST_CASE("two-slit reference curve") {
    FraunhoferSpec spec;
    spec.lambda = 2.0 * std::numbers::pi / 5000.0;
    spec.d = 1.2649110640673518;
    spec.a = 0.5;
    spec.big_l = 350.0;
    spec.amplitude = 2.0;

    CHECK(fraunhofer_intensity(spec, 0.0) == 2.0);  // sinc(0) handled exactly
    const double spacing = fringe_spacing(spec);
    CHECK(spacing == doctest::Approx(0.34771).epsilon(1e-4));
    // first null of the cos^2 factor
    CHECK(fraunhofer_intensity(spec, 0.5 * spacing) < 1e-25);

    // even, with the global maximum at zero
    for (const double y : {0.1, 0.7, 1.3, 2.9}) {
        CHECK(fraunhofer_intensity(spec, y) == fraunhofer_intensity(spec, -y));
        CHECK(fraunhofer_intensity(spec, y) <= 2.0);
    }

    const FraunhoferSpec derived = fraunhofer_spec(kDefault, kIntegrator, EnsembleConfig{});
    CHECK(derived.lambda == doctest::Approx(2.0 * std::numbers::pi / 5000.0).epsilon(1e-12));
    CHECK(derived.d == doctest::Approx(1.2649110640673518).epsilon(1e-12));
    CHECK(derived.big_l == 350.0);
    CHECK(fringe_spacing(derived) == doctest::Approx(0.3477).epsilon(1e-3));
    // beam rides above the barrier: the probe falls back to v0/2
    CHECK(derived.probe_energy == doctest::Approx(0.5 * kDefault.v0));
    CHECK(derived.a < derived.d);
}

TEST_CASE("uncertainty belt") {
    const Trajectory traj = integrate(beam_state(0.25), kDefault, kIntegrator);
    const auto belts = belt(traj);
    REQUIRE(belts.size() == traj.samples.size());
    CHECK(belts.front().y_lo == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(belts.front().y_hi == doctest::Approx(0.45).epsilon(1e-12));
    for (std::size_t i = 0; i < belts.size(); ++i) {
        CHECK(belts[i].x_hi >= belts[i].x_lo);
        CHECK(belts[i].y_hi >= belts[i].y_lo);
        CHECK(belts[i].x_hi - belts[i].x_lo == doctest::Approx(2.0 * traj.samples[i].sx));
    }

    // mirrored trajectories have mirrored belts
    const Trajectory dn = integrate(beam_state(-0.25), kDefault, kIntegrator);
    const auto belts_dn = belt(dn);
    REQUIRE(belts_dn.size() == belts.size());
    for (std::size_t i = 0; i < belts.size(); ++i) {
        CHECK(belts[i].y_hi == doctest::Approx(-belts_dn[i].y_lo).epsilon(1e-10));
        CHECK(belts[i].y_lo == doctest::Approx(-belts_dn[i].y_hi).epsilon(1e-10));
    }

    // free flight: belt half-width matches the dispersion closed form
    const PhysParams free_p = scale_barrier(kDefault, 1e-30);
    IntegratorConfig tight = kIntegrator;  // tight enough for the 1e-8 comparison
    tight.rtol = 1e-11;
    tight.atol = 1e-14;
    const Trajectory free_traj = integrate(beam_state(0), free_p, tight);
    const auto free_belts = belt(free_traj);
    const auto& last = free_belts.back();
    const double want = free_dispersion(0.2, free_p.u, free_p.m, free_traj.t_end());
    CHECK(0.5 * (last.x_hi - last.x_lo) == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("ensemble snapshots") {
    EnsembleConfig cfg;
    cfg.n = 7;
    cfg.y_min = -0.6;
    cfg.y_max = 0.6;
    cfg.retain_trajectories = true;
    const EnsembleResult res = run_ensemble(cfg, kDefault, kIntegrator);

    const auto t0 = snapshot(res, 0.0);
    const auto ics = build_ics(cfg, kDefault);
    REQUIRE(t0.size() == 7);
    for (std::size_t i = 0; i < 7; ++i) {
        CHECK(t0[i][0] == 400.0);
        CHECK(t0[i][1] == ics[i].y);
    }

    // free flight: every particle sits at x = 400 - 5000 t
    EnsembleConfig fcfg = cfg;
    const PhysParams free_p = scale_barrier(kDefault, 1e-30);
    const EnsembleResult fres = run_ensemble(fcfg, free_p, kIntegrator);
    const auto mid = snapshot(fres, 0.07);
    for (const auto& pt : mid) CHECK(pt[0] == doctest::Approx(400.0 - 5000.0 * 0.07).epsilon(1e-9));

    // not retained -> configuration error
    EnsembleConfig plain = cfg;
    plain.retain_trajectories = false;
    const EnsembleResult bare = run_ensemble(plain, kDefault, kIntegrator);
    CHECK_THROWS_AS(snapshot(bare, 0.0), config_error);
}

TEST_CASE("post-barrier snapshots cluster") {
    // a uniform ingoing grid leaves the barrier bunched: nearest-neighbor
    // spacing becomes uneven
    EnsembleConfig cfg;
    cfg.n = 41;
    cfg.y_min = -0.9;
    cfg.y_max = 0.9;
    cfg.retain_trajectories = true;
    const EnsembleResult res = run_ensemble(cfg, kDefault, kIntegrator);

    auto spacing_variance = [](std::vector<std::array<double, 2>> pts) {
        std::vector<double> ys;
        for (const auto& pt : pts) ys.push_back(pt[1]);
        std::sort(ys.begin(), ys.end());
        std::vector<double> gaps;
        for (std::size_t i = 1; i < ys.size(); ++i) gaps.push_back(ys[i] - ys[i - 1]);
        double mean = 0;
        for (const double g : gaps) mean += g;
        mean /= static_cast<double>(gaps.size());
        double var = 0;
        for (const double g : gaps) var += (g - mean) * (g - mean);
        return var / static_cast<double>(gaps.size());
    };

    const double v0 = spacing_variance(snapshot(res, 0.0));
    const double v1 = spacing_variance(snapshot(res, 0.12));
    CHECK(v0 == doctest::Approx(0.0).epsilon(1e-18));  // grid is exactly even
    CHECK(v1 > v0 + 1e-6);
}

TEST_CASE("arrival time statistics") {
    const PhysParams free_p = scale_barrier(kDefault, 1e-30);
    EnsembleConfig cfg;
    cfg.n = 9;
    cfg.y_min = -1;
    cfg.y_max = 1;
    const EnsembleResult res = run_ensemble(cfg, free_p, kIntegrator);
    const ArrivalTimeStats stats = arrival_times(res);
    REQUIRE(stats.times.size() == 9);
    CHECK(stats.t_min == doctest::Approx(0.15).epsilon(1e-9));
    CHECK(stats.t_max == doctest::Approx(0.15).epsilon(1e-9));
    CHECK(stats.t_median == doctest::Approx(0.15).epsilon(1e-9));

    EnsembleResult empty;
    empty.records.push_back(ParticleRecord{0, 0.0, Outcome{Timeout{}}, "", 1.0});
    CHECK_THROWS_AS(arrival_times(empty), empty_input_error);
}

TEST_CASE("fringe score") {
    HistogramSpec spec;
    spec.smoothing = 0;  // compare raw columns directly
    FraunhoferSpec ref;
    ref.lambda = 2.0 * std::numbers::pi / 5000.0;
    ref.d = 1.2649110640673518;
    ref.a = 0.48;
    ref.big_l = 350.0;
    ref.amplitude = 100.0;

    // histogram whose counts equal the sampled reference: perfect score
    Histogram h = histogram(make_arrivals({0.0}), spec);
    h.counts = fraunhofer_reference(ref, h.centers);
    h.smoothed = h.counts;
    CHECK(fringe_score(h, ref) == doctest::Approx(1.0).epsilon(1e-12));

    // negated (plus offset to stay positive): anti-correlated
    Histogram neg = h;
    for (auto& c : neg.counts) c = 100.0 - c;
    neg.smoothed = neg.counts;
    CHECK(fringe_score(neg, ref) <= 0.0);

    // constant histogram: correlation undefined
    Histogram flat = h;
    for (auto& c : flat.counts) c = 3.0;
    flat.smoothed = flat.counts;
    CHECK_THROWS_AS(fringe_score(flat, ref), domain_error);
}

TEST_CASE("fringe detection on a synthetic pattern") {
    // build a histogram directly from the reference shape
    HistogramSpec spec;
    FraunhoferSpec ref;
    ref.lambda = 2.0 * std::numbers::pi / 5000.0;
    ref.d = 1.2649110640673518;
    ref.a = 0.48;
    ref.big_l = 350.0;
    ref.amplitude = 500.0;

    Histogram h = histogram(make_arrivals({0.0}), spec);
    h.counts = fraunhofer_reference(ref, h.centers);
    h.smoothed = h.counts;

    const FringeAnalysis fa = find_fringes(h);
    CHECK(std::abs(fa.global_max_y) <= 0.1);
    CHECK(fa.peak_ys.size() >= 3);
    CHECK(fa.has_symmetric_secondary);
    CHECK(fa.spacing == doctest::Approx(fringe_spacing(ref)).epsilon(0.15));
}

TEST_CASE("mirror chi-square accepts symmetric data") {
    HistogramSpec spec;
    std::vector<double> ys;
    // deterministic symmetric sample, kept off y = 0 and off bin edges
    for (int i = 0; i < 400; ++i) {
        const double y = 0.01 * (i % 57) - 0.285;
        ys.push_back(y);
        ys.push_back(-y);
    }
    const Histogram h = histogram(make_arrivals(ys), spec);
    const MirrorTest mt = mirror_chi_square(h);
    CHECK(mt.p_value > 0.99);  // exactly mirrored
    CHECK(mt.dof > 0);
}
