#pragma once

#include <qslit/ensemble.hpp>
#include <qslit/integrate.hpp>
#include <qslit/potential.hpp>

#include <array>
#include <vector>

namespace qslit {

struct HistogramSpec {
    double bin_width = 0.1;
    double y_min = -6.0;
    double y_max = 6.0;
    double smoothing = 0.2;  // Gaussian kernel sigma for the smoothed column
};

struct Histogram {
    std::vector<double> centers;
    std::vector<double> counts;
    std::vector<double> smoothed;  // same mass as counts, kernel-spread
    double bin_width = 0;
    double smoothing = 0;
    long long underflow = 0;  // arrivals below/above the range
    long long overflow = 0;
};

// Bins arrival positions; throws empty_input_error on no arrivals.
Histogram histogram(const std::vector<ArrivalRecord>& arrivals, const HistogramSpec& spec);

// Far-field two-slit intensity: amplitude * cos^2(pi d y / (lambda L)),
// optionally modulated by the single-opening sinc^2 envelope.
struct FraunhoferSpec {
    double lambda = 0;     // de Broglie wavelength, 2 pi hbar / |px0|
    double d = 0;          // opening separation
    double a = 0;          // opening width
    double big_l = 0;      // barrier-to-screen distance
    double amplitude = 1;
    bool envelope = true;
    double probe_energy = 0;  // energy at which `a` was measured (reporting)
};

// Derives every curve parameter from the physics: lambda from the beam
// momentum, d from the prefactor roots, a from slit_width at the beam
// kinetic energy (falling back to v0/2 when the beam rides above the
// barrier), L from the screen plane.
FraunhoferSpec fraunhofer_spec(const PhysParams& p, const IntegratorConfig& icfg,
                               const EnsembleConfig& ecfg, bool envelope = true);

double fraunhofer_intensity(const FraunhoferSpec& spec, double y);
std::vector<double> fraunhofer_reference(const FraunhoferSpec& spec, const std::vector<double>& ys);

inline double fringe_spacing(const FraunhoferSpec& spec) { return spec.lambda * spec.big_l / spec.d; }

// Uncertainty band around one trajectory, per sample.
struct BeltSample {
    double t = 0;
    double x_lo = 0, x_hi = 0;
    double y_lo = 0, y_hi = 0;
};

std::vector<BeltSample> belt(const Trajectory& traj);

// Ensemble positions at a common time (trajectories must be retained and t
// within every trajectory's span).
std::vector<std::array<double, 2>> snapshot(const EnsembleResult& result, double t);

struct ArrivalTimeStats {
    double t_min = 0;
    double t_median = 0;
    double t_max = 0;
    std::vector<double> times;  // one per arrival, input order
};

ArrivalTimeStats arrival_times(const EnsembleResult& result);

// Pearson correlation between the smoothed histogram and the reference
// curve convolved with the same kernel, over |y| <= 3 fringe spacings.
// Throws empty_input_error when either side is constant on the window.
double fringe_score(const Histogram& hist, const FraunhoferSpec& ref);

// Peak structure of the histogram, detected on a lightly smoothed copy
// (sigma = bin_width / 2) with sub-bin parabolic refinement.
struct FringeAnalysis {
    double global_max_y = 0;
    std::vector<double> peak_ys;      // ascending
    double spacing = 0;               // 0 when fewer than 3 peaks
    double secondary_asymmetry = 0;   // |y_right + y_left| of first side peaks
    bool has_symmetric_secondary = false;
};

FringeAnalysis find_fringes(const Histogram& hist);

// Mirror-symmetry chi-square on paired bins (+y vs -y).
struct MirrorTest {
    double chi2 = 0;
    int dof = 0;
    double p_value = 1;
};

MirrorTest mirror_chi_square(const Histogram& hist);

}  // namespace qslit
