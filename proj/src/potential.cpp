#include <qslit/potential.hpp>

#include <cmath>

namespace qslit {

PotentialKind PotentialKind::harmonic(double omega_h) {
    if (!(omega_h > 0)) throw domain_error("omega_h", "harmonic frequency must be positive");
    return {Tag::Harmonic, omega_h};
}

double v_slit(double x, double y, const PhysParams& p) {
    const double q = p.m * p.omega * p.omega / (4.0 * p.v0);
    const double g = 1.0 - q * y * y;
    return p.v0 * g * g * gauss_envelope(x / p.alpha);
}

SlitGeometry slit_centers(const PhysParams& p) {
    SlitGeometry geo;
    geo.y_slit = 2.0 * std::sqrt(p.v0 / (p.m * p.omega * p.omega));
    geo.d = 2.0 * geo.y_slit;
    return geo;
}

double slit_width(const PhysParams& p, double e_probe) {
    if (!(e_probe > 0) || !(e_probe < p.v0))
        throw domain_error("e_probe", "probe energy must lie strictly inside (0, v0)");
    // |1 - q y^2| = sqrt(e/v0) with q = m omega^2 / (4 v0) gives the two
    // bracketing roots of V(0, y) = e around y_slit.
    const double r = std::sqrt(e_probe / p.v0);
    const double scale = std::sqrt(p.v0 / (p.m * p.omega * p.omega));  // y_slit / 2
    const double y_hi = 2.0 * scale * std::sqrt(1.0 + r);
    const double y_lo = 2.0 * scale * std::sqrt(1.0 - r);
    return y_hi - y_lo;
}

double v_validation(const PotentialKind& kind, double x, const PhysParams& p) {
    switch (kind.tag) {
        case PotentialKind::Tag::Free: return 0.0;
        case PotentialKind::Tag::Harmonic: return 0.5 * p.m * kind.omega_h * kind.omega_h * x * x;
        case PotentialKind::Tag::DoubleSlit: break;
    }
    throw domain_error("kind", "1-D validation potential must be Free or Harmonic");
}

double dv_validation(const PotentialKind& kind, double x, const PhysParams& p) {
    switch (kind.tag) {
        case PotentialKind::Tag::Free: return 0.0;
        case PotentialKind::Tag::Harmonic: return p.m * kind.omega_h * kind.omega_h * x;
        case PotentialKind::Tag::DoubleSlit: break;
    }
    throw domain_error("kind", "1-D validation potential must be Free or Harmonic");
}

PhysParams scale_barrier(PhysParams p, double factor) {
    if (!(factor > 0)) throw domain_error("factor", "barrier scale must be positive");
    p.v0 *= factor;
    p.omega *= std::sqrt(factor);
    return p;
}

}  // namespace qslit
