// Acceptance suite: every release criterion with its tolerance pinned, one
// pass/fail line each. Exits nonzero if any criterion fails.

#include <qslit/analysis.hpp>
#include <qslit/csv.hpp>
#include <qslit/ensemble.hpp>
#include <qslit/potential.hpp>
#include <qslit/validation.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

using namespace qslit;

namespace {

int failures = 0;
std::chrono::steady_clock::time_point block_start;

void tic() { block_start = std::chrono::steady_clock::now(); }

void report(const std::string& id, bool pass, const std::string& detail) {
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - block_start).count();
    std::printf("[%s] %-24s %s  (%.1fs)\n", pass ? "PASS" : "FAIL", id.c_str(), detail.c_str(),
                dt);
    std::fflush(stdout);
    if (!pass) ++failures;
    tic();
}

std::string fmt(const char* f, double a, double b = 0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), f, a, b);
    return buf;
}

const CheckResult& find_check(const std::vector<CheckResult>& checks, const std::string& name) {
    for (const auto& c : checks)
        if (c.name == name) return c;
    std::fprintf(stderr, "missing check %s\n", name.c_str());
    std::exit(2);
}

std::string ensemble_csvs(const EnsembleConfig& cfg, const PhysParams& p,
                          const IntegratorConfig& icfg, const HistogramSpec& hspec) {
    const EnsembleResult res = run_ensemble(cfg, p, icfg);
    std::ostringstream os;
    write_outcomes_csv(os, res);
    const auto arrivals = arrivals_of(res);
    write_arrival_times_csv(os, arrivals);
    if (!arrivals.empty()) {
        const Histogram h = histogram(arrivals, hspec);
        const FraunhoferSpec ref = fraunhofer_spec(p, icfg, cfg);
        write_histogram_csv(os, h, fraunhofer_reference(ref, h.centers));
    }
    return os.str();
}

}  // namespace

int main() {
    const PhysParams params{};
    const IntegratorConfig icfg{};
    const HistogramSpec hspec{};

    std::printf("acceptance: double-slit semiclassical simulator\n");
    tic();

    // 1..5 — dynamics and integrator oracles -------------------------------
    const auto checks = validation_suite(params, icfg);
    {
        const auto& random = find_check(checks, "grad-random");
        const auto& barrier = find_check(checks, "grad-barrier");
        const auto& forcefree = find_check(checks, "grad-forcefree");
        const bool pass = random.pass && barrier.pass && forcefree.pass;
        report("1 gradient-consistency", pass,
               fmt("max_rel=%.2e force_free=%.2e (tol 1e-5, 1e-10)",
                   std::max(random.measured, barrier.measured), forcefree.measured));
    }
    {
        const auto& c = find_check(checks, "energy-drift");
        report("2 energy-conservation", c.pass, fmt("drift=%.2e (tol 1e-6)", c.measured));
    }
    {
        const auto& c = find_check(checks, "free-dispersion");
        report("3 free-dispersion", c.pass, fmt("rel_err=%.2e (tol 1e-8)", c.measured));
    }
    {
        const auto& c = find_check(checks, "harmonic-exact");
        report("4 harmonic-exactness", c.pass, fmt("rel_err=%.2e (tol 1e-6)", c.measured));
    }
    {
        const auto& mirror = find_check(checks, "mirror-parity");
        const auto& axis = find_check(checks, "on-axis");
        report("5 parity", mirror.pass && axis.pass,
               fmt("mirror=%.2e (1e-8)  on_axis=%.2e (1e-6)", mirror.measured, axis.measured));
    }

    // 6 — interference pattern (n = 10^4, density-weighted beam) -----------
    {
        EnsembleConfig cfg;
        cfg.n = 10000;
        cfg.sampler = SamplerKind::GaussianWeighted;
        cfg.seed = 42;
        const EnsembleResult res = run_ensemble(cfg, params, icfg);
        const auto arrivals = arrivals_of(res);
        const Histogram hist = histogram(arrivals, hspec);
        const FraunhoferSpec ref = fraunhofer_spec(params, icfg, cfg);
        const FringeAnalysis fa = find_fringes(hist);
        const double expected = fringe_spacing(ref);
        const double score = fringe_score(hist, ref);

        const bool central_ok = std::abs(fa.global_max_y) <= 0.2;
        const bool secondary_ok = fa.has_symmetric_secondary;
        const bool spacing_ok =
            fa.spacing > 0 && std::abs(fa.spacing - expected) <= 0.25 * expected;
        const bool score_ok = score >= 0.7;
        report("6 interference-pattern",
               central_ok && secondary_ok && spacing_ok && score_ok,
               fmt("peak_y=%.3f score=%.3f", fa.global_max_y, score) +
                   fmt("  spacing=%.3f vs %.3f (25%%)", fa.spacing, expected) +
                   (secondary_ok ? "  symmetric secondaries" : "  NO symmetric secondaries"));

        // declared ensemble invariant: mirror symmetry within sampling noise
        const MirrorTest mt = mirror_chi_square(hist);
        report("6b statistical-parity", mt.p_value > 0.01,
               fmt("chi2/dof=%.2f p=%.3f (p > 0.01)", mt.chi2 / std::max(1, mt.dof), mt.p_value));
    }

    // 7/8/9 — crossing trajectories, reflections, time of arrival ----------
    {
        EnsembleConfig cfg;  // defaults: n=2000 grid on [-4, 4]
        const EnsembleResult res = run_ensemble(cfg, params, icfg);
        const auto arrivals = arrivals_of(res);

        int base = 0, crossing = 0;
        for (const auto& a : arrivals) {
            if (a.y0 > 0.3) {
                ++base;
                if (a.y_hit < 0) ++crossing;
            }
        }
        const double rate = base > 0 ? static_cast<double>(crossing) / base : 0.0;
        report("7 crossing-trajectories", crossing >= 1 && rate >= 0.01,
               fmt("crossings=%.0f of %.0f arrivals with y0>0.3", crossing, base) +
                   fmt(" (rate %.1f%% >= 1%%)", 100.0 * rate));

        bool reflections_ok = res.counts.reflections > 0;
        std::string refl_detail = fmt("reflections=%.0f at default energy",
                                      res.counts.reflections);
        if (!reflections_ok) {
            EnsembleConfig slow = cfg;
            slow.px0 = -3000;  // kinetic energy 4.5e6 < v0: forbidden core
            const EnsembleResult res2 = run_ensemble(slow, params, icfg);
            reflections_ok = res2.counts.reflections > 0;
            refl_detail += fmt("; px0=-3000 rerun: %.0f", res2.counts.reflections);
        }
        report("8 reflections-exist", reflections_ok, refl_detail);

        const ArrivalTimeStats times = arrival_times(res);
        const bool min_ok = times.t_min >= 0.15 && times.t_min <= 0.18;

        const PhysParams free_p = scale_barrier(params, 1e-30);
        PhaseState beam;
        beam.x = 400;
        beam.px = -5000;
        beam.sx = beam.sy = 0.2;
        const Trajectory control = integrate(beam, free_p, icfg);
        const double t_free =
            is_arrival(control.outcome) ? std::get<Arrival>(control.outcome).t_hit : -1.0;
        const bool free_ok = std::abs(t_free - 0.15) <= 1e-9;
        report("9 time-of-arrival", min_ok && free_ok,
               fmt("min=%.5f in [0.15, 0.18]; free control |dt|=%.1e (1e-9)", times.t_min,
                   std::abs(t_free - 0.15)));
    }

    // 10 — determinism: byte-identical CSVs --------------------------------
    {
        EnsembleConfig cfg;
        cfg.n = 200;
        cfg.sampler = SamplerKind::UniformRandom;
        cfg.seed = 12345;
        const std::string a = ensemble_csvs(cfg, params, icfg, hspec);
        const std::string b = ensemble_csvs(cfg, params, icfg, hspec);
        report("10 determinism", !a.empty() && a == b,
               fmt("%.0f CSV bytes, identical across seeded reruns", double(a.size())));
    }

    std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "OK" : "FAILED", failures);
    return failures == 0 ? 0 : 1;
}
