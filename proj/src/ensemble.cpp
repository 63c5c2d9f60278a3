#include <qslit/ensemble.hpp>

#include <cmath>
#include <numbers>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qslit {

const char* sampler_name(SamplerKind k) {
    switch (k) {
        case SamplerKind::Grid: return "grid";
        case SamplerKind::UniformRandom: return "uniform";
        case SamplerKind::GaussianWeighted: return "gaussian";
    }
    return "?";
}

SamplerKind sampler_from_name(const std::string& name) {
    if (name == "grid") return SamplerKind::Grid;
    if (name == "uniform") return SamplerKind::UniformRandom;
    if (name == "gaussian") return SamplerKind::GaussianWeighted;
    throw config_error("unknown sampler '" + name + "' (expected grid|uniform|gaussian)");
}

EnsembleConfig validate_ensemble(const EnsembleConfig& cfg, const PhysParams& p) {
    if (cfg.n < 1) throw domain_error("n", "particle count must be >= 1");
    if (!(cfg.y_min < cfg.y_max)) throw domain_error("y_range", "y range must be non-degenerate");
    if (!(cfg.sx0 > 0)) throw domain_error("sx0", "initial dispersion must be positive");
    if (!(cfg.sy0 > 0)) throw domain_error("sy0", "initial dispersion must be positive");
    if (cfg.u < p.heisenberg_bound())
        throw heisenberg_error("u", "Casimir below the Heisenberg bound hbar^2/4");
    if (cfg.sampler == SamplerKind::GaussianWeighted && cfg.sigma < 0)
        throw domain_error("sigma", "Gaussian sampler width must be positive (0 selects sy0)");
    if (cfg.threads < 0) throw domain_error("threads", "worker count must be non-negative");
    return cfg;
}

MomentSet gaussian_initial_moments(double sigma0, const PhysParams& p) {
    if (!(sigma0 > 0)) throw domain_error("sigma0", "width must be positive");
    return MomentSet{sigma0 * sigma0, 0.0, p.hbar * p.hbar / (4.0 * sigma0 * sigma0)};
}

namespace {

// Samplers draw from mt19937_64 through explicit arithmetic so runs are
// reproducible from the seed alone.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double gaussian01(std::mt19937_64& rng) {
    // Box-Muller; one draw per call keeps the stream layout simple.
    double u1 = uniform01(rng);
    while (u1 == 0.0) u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> sample_y0(const EnsembleConfig& cfg) {
    std::vector<double> ys(static_cast<std::size_t>(cfg.n));
    switch (cfg.sampler) {
        case SamplerKind::Grid: {
            if (cfg.n == 1) {
                ys[0] = 0.5 * (cfg.y_min + cfg.y_max);
            } else {
                const double step = (cfg.y_max - cfg.y_min) / (cfg.n - 1);
                for (int i = 0; i < cfg.n; ++i) ys[i] = cfg.y_min + step * i;
                ys.back() = cfg.y_max;
            }
            break;
        }
        case SamplerKind::UniformRandom: {
            std::mt19937_64 rng(cfg.seed);
            for (auto& y : ys) y = cfg.y_min + (cfg.y_max - cfg.y_min) * uniform01(rng);
            break;
        }
        case SamplerKind::GaussianWeighted: {
            std::mt19937_64 rng(cfg.seed);
            const double sigma = cfg.sigma > 0 ? cfg.sigma : cfg.sy0;
            const double mean = 0.5 * (cfg.y_min + cfg.y_max);
            for (auto& y : ys) {
                double v;
                do {
                    v = mean + sigma * gaussian01(rng);
                } while (v < cfg.y_min || v > cfg.y_max);
                y = v;
            }
            break;
        }
    }
    return ys;
}

EnsembleResult run_impl(const EnsembleConfig& cfg, const PhysParams& p,
                        const IntegratorConfig& icfg, bool parallel) {
    validate_ensemble(cfg, p);
    PhysParams run_params = p;
    run_params.u = cfg.u;  // the ensemble Casimir drives the whole run
    validate_params(run_params);
    validate_integrator(icfg);

    const std::vector<PhaseState> ics = build_ics(cfg, run_params);
    const int n = cfg.n;

    EnsembleResult result;
    result.records.resize(static_cast<std::size_t>(n));
    if (cfg.retain_trajectories) result.trajectories.resize(static_cast<std::size_t>(n));

    auto work = [&](int i) {
        ParticleRecord rec;
        rec.index = i;
        rec.y0 = ics[static_cast<std::size_t>(i)].y;
        try {
            Trajectory traj = integrate(ics[static_cast<std::size_t>(i)], run_params, icfg);
            rec.outcome = traj.outcome;
            rec.t_end = traj.t_end();
            if (cfg.retain_trajectories)
                result.trajectories[static_cast<std::size_t>(i)] = std::move(traj);
        } catch (const stiffness_error& e) {
            rec.error = e.what();
            rec.t_end = e.last_state().t;
        } catch (const std::exception& e) {
            // a large run must not die at one bad particle
            rec.error = e.what();
        }
        result.records[static_cast<std::size_t>(i)] = std::move(rec);
    };

    if (parallel) {
#ifdef _OPENMP
        const int workers = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(workers)
        for (int i = 0; i < n; ++i) work(i);
#else
        for (int i = 0; i < n; ++i) work(i);
#endif
    } else {
        for (int i = 0; i < n; ++i) work(i);
    }

    for (const auto& rec : result.records) {
        if (!rec.outcome) {
            ++result.counts.failures;
        } else if (is_arrival(*rec.outcome)) {
            ++result.counts.arrivals;
        } else if (is_reflected(*rec.outcome)) {
            ++result.counts.reflections;
        } else {
            ++result.counts.timeouts;
        }
    }
    return result;
}

}  // namespace

std::vector<PhaseState> build_ics(const EnsembleConfig& cfg, const PhysParams& p) {
    validate_ensemble(cfg, p);
    const std::vector<double> ys = sample_y0(cfg);
    std::vector<PhaseState> states;
    states.reserve(ys.size());
    for (const double y0 : ys) {
        PhaseState st;
        st.t = 0;
        st.x = cfg.x0;
        st.y = y0;
        st.px = cfg.px0;
        st.py = cfg.py0;
        st.sx = cfg.sx0;
        st.sy = cfg.sy0;
        st.psx = 0;  // saturated Gaussian start: g11 = 0
        st.psy = 0;
        validate_state(st);
        states.push_back(st);
    }
    return states;
}

EnsembleResult run_ensemble(const EnsembleConfig& cfg, const PhysParams& p,
                            const IntegratorConfig& icfg) {
    return run_impl(cfg, p, icfg, true);
}

EnsembleResult run_ensemble_serial(const EnsembleConfig& cfg, const PhysParams& p,
                                   const IntegratorConfig& icfg) {
    return run_impl(cfg, p, icfg, false);
}

std::vector<ArrivalRecord> arrivals_of(const EnsembleResult& result) {
    std::vector<ArrivalRecord> out;
    for (const auto& rec : result.records) {
        if (rec.outcome && is_arrival(*rec.outcome)) {
            const auto& a = std::get<Arrival>(*rec.outcome);
            out.push_back(ArrivalRecord{rec.index, rec.y0, a.y_hit, a.t_hit});
        }
    }
    return out;
}

}  // namespace qslit
