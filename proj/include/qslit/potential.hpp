#pragma once

#include <qslit/model.hpp>

#include <cmath>

namespace qslit {

// Selects the barrier for the 2-D run or one of the 1-D validation
// potentials used to exercise the canonical dynamics against closed forms.
struct PotentialKind {
    enum class Tag { DoubleSlit, Free, Harmonic };

    Tag tag = Tag::DoubleSlit;
    double omega_h = 0;  // Harmonic only

    static PotentialKind double_slit() { return {Tag::DoubleSlit, 0}; }
    static PotentialKind free_particle() { return {Tag::Free, 0}; }
    static PotentialKind harmonic(double omega_h);
};

struct SlitGeometry {
    double y_slit = 0;   // center of each opening
    double d = 0;        // opening separation, 2*y_slit
    double a_width = 0;  // opening full width at the probe energy
};

// e^{-z^2}; the underflow region (z^2 > 700) is clamped to exactly zero so
// the force-free stretch of every trajectory costs no denormal arithmetic.
inline double gauss_envelope(double z) {
    const double z2 = z * z;
    return z2 > 700.0 ? 0.0 : std::exp(-z2);
}

// Double-slit barrier V(x,y) = v0 (1 - m omega^2 y^2 / (4 v0))^2 e^{-(x/alpha)^2}.
// The y-prefactor is kept in factorized (perfect-square) form; expanding it
// loses ~8 digits near the openings at the default parameters.
double v_slit(double x, double y, const PhysParams& p);

// Roots of the barrier prefactor: y_slit = 2 sqrt(v0 / (m omega^2)).
// a_width is left zero here; see slit_width.
SlitGeometry slit_centers(const PhysParams& p);

// Full width of the y-interval around y_slit where V(0, y) < e_probe,
// from the closed-form roots of the factorized prefactor.
// Requires 0 < e_probe < v0.
double slit_width(const PhysParams& p, double e_probe);

// 1-D validation potentials: Free -> 0, Harmonic -> m omega_h^2 x^2 / 2.
double v_validation(const PotentialKind& kind, double x, const PhysParams& p);
double dv_validation(const PotentialKind& kind, double x, const PhysParams& p);

// Scales the barrier uniformly, V -> factor*V, keeping the opening geometry
// fixed (v0 and omega^2 scale together). A tiny factor gives force-free
// flight without degenerate parameters.
PhysParams scale_barrier(PhysParams p, double factor);

}  // namespace qslit
