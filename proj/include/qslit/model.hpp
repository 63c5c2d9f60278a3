#pragma once

#include <qslit/errors.hpp>

namespace qslit {

// Physical constants of the double-slit model, in dimensionless code units.
// With the default hbar = 1 the minimal Casimir hbar^2/4 equals 0.25.
struct PhysParams {
    double m = 1.0;        // particle mass
    double omega = 1.0e4;  // barrier frequency (1/time)
    double v0 = 1.0e7;     // barrier height (energy)
    double alpha = 1.5;    // barrier thickness (length)
    double hbar = 1.0;     // reduced Planck constant (action)
    double u = 0.25;       // Casimir invariant (action^2), shared by both axes

    double heisenberg_bound() const { return 0.25 * hbar * hbar; }
};

// 8-dimensional semiclassical phase point plus time: mean positions (x, y),
// mean momenta (px, py), position dispersions (sx, sy) with their conjugate
// momenta (psx, psy). Dispersions are strictly positive at all times.
struct PhaseState {
    double t = 0;
    double x = 0, y = 0;
    double px = 0, py = 0;
    double sx = 0, psx = 0;
    double sy = 0, psy = 0;
};

// Second-order central moments of one axis (Weyl-ordered expectations).
struct MomentSet {
    double g20 = 0;  // position variance
    double g11 = 0;  // position-momentum covariance
    double g02 = 0;  // momentum variance
};

// Canonical dispersion variables of one axis.
struct CanonicalTriple {
    double s = 0;   // dispersion, sqrt(g20)
    double ps = 0;  // dispersion momentum, g11/sqrt(g20)
    double u = 0;   // Casimir, g20*g02 - g11^2
};

// Throws domain_error (heisenberg_error for the Casimir bound) naming the
// violated field; returns p unchanged otherwise.
PhysParams validate_params(const PhysParams& p);

// True when u sits on the Heisenberg bound hbar^2/4 (minimal-uncertainty
// Gaussian), up to 1e-12 relative slack.
bool saturated(const PhysParams& p);

// (s, ps, u) -> (g20, g11, g02) for one axis:
//   g20 = s^2, g11 = ps*s, g02 = (u + ps^2 s^2) / s^2.
MomentSet moments_from_canonical(double s, double ps, double u);

// Inverse map. Throws domain_error on g20 <= 0 and heisenberg_error when the
// reconstructed Casimir falls below hbar^2/4 (beyond cancellation slack).
CanonicalTriple canonical_from_moments(const MomentSet& ms, double hbar = 1.0);

bool all_finite(const PhaseState& st);

// Checks dispersion positivity and finiteness; throws domain_error.
void validate_state(const PhaseState& st);

}  // namespace qslit
