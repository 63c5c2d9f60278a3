#pragma once

#include <qslit/integrate.hpp>
#include <qslit/model.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qslit {

enum class SamplerKind { Grid, UniformRandom, GaussianWeighted };

const char* sampler_name(SamplerKind k);
SamplerKind sampler_from_name(const std::string& name);  // throws config_error

struct EnsembleConfig {
    int n = 2000;
    double y_min = -4.0;
    double y_max = 4.0;
    SamplerKind sampler = SamplerKind::Grid;
    std::uint64_t seed = 42;
    double sigma = 0;  // GaussianWeighted width; 0 = use sy0

    // beam parameters
    double x0 = 400.0;
    double px0 = -5000.0;
    double py0 = 0.0;
    double sx0 = 0.2;
    double sy0 = 0.2;
    double u = 0.25;

    bool retain_trajectories = false;
    int threads = 0;  // 0 = all available
};

EnsembleConfig validate_ensemble(const EnsembleConfig& cfg, const PhysParams& p);

// Initial Gaussian moments at the Heisenberg bound:
//   g20 = sigma0^2, g11 = 0, g02 = hbar^2 / (4 sigma0^2).
MomentSet gaussian_initial_moments(double sigma0, const PhysParams& p);

// n phase points with the beam parameters fixed and y0 drawn by the sampler.
// Grid places n points evenly across [y_min, y_max] inclusive (midpoint for
// n = 1); the random samplers are reproducible from the seed and truncated
// to the range.
std::vector<PhaseState> build_ics(const EnsembleConfig& cfg, const PhysParams& p);

struct ParticleRecord {
    int index = 0;
    double y0 = 0;
    std::optional<Outcome> outcome;  // empty = integration failed
    std::string error;               // failure message when empty outcome
    double t_end = 0;                // terminal time of the trajectory
};

struct EnsembleCounts {
    int arrivals = 0;
    int reflections = 0;
    int timeouts = 0;
    int failures = 0;

    int total() const { return arrivals + reflections + timeouts + failures; }
};

struct EnsembleResult {
    std::vector<ParticleRecord> records;   // ordered by input index
    std::vector<Trajectory> trajectories;  // filled iff cfg.retain_trajectories
    EnsembleCounts counts;
};

// Integrates every initial condition independently. Results are ordered by
// input index regardless of execution order; per-particle stiffness errors
// become failure records instead of aborting the run. The parallel version
// and the serial reference produce identical results.
EnsembleResult run_ensemble(const EnsembleConfig& cfg, const PhysParams& p,
                            const IntegratorConfig& icfg);
EnsembleResult run_ensemble_serial(const EnsembleConfig& cfg, const PhysParams& p,
                                   const IntegratorConfig& icfg);

struct ArrivalRecord {
    int index = 0;
    double y0 = 0;
    double y_hit = 0;
    double t_hit = 0;
};

std::vector<ArrivalRecord> arrivals_of(const EnsembleResult& result);

}  // namespace qslit
