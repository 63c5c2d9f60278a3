#include <qslit/model.hpp>

#include <cmath>

namespace qslit {

PhysParams validate_params(const PhysParams& p) {
    if (!(p.m > 0) || !std::isfinite(p.m)) throw domain_error("m", "mass must be positive and finite");
    if (!(p.omega > 0) || !std::isfinite(p.omega)) throw domain_error("omega", "barrier frequency must be positive and finite");
    if (!(p.v0 > 0) || !std::isfinite(p.v0)) throw domain_error("v0", "barrier height must be positive and finite");
    if (!(p.alpha > 0) || !std::isfinite(p.alpha)) throw domain_error("alpha", "barrier thickness must be positive and finite");
    if (!(p.hbar > 0) || !std::isfinite(p.hbar)) throw domain_error("hbar", "hbar must be positive and finite");
    if (!std::isfinite(p.u)) throw domain_error("u", "Casimir must be finite");
    if (p.u < p.heisenberg_bound())
        throw heisenberg_error("u", "Casimir below the Heisenberg bound hbar^2/4");
    return p;
}

bool saturated(const PhysParams& p) {
    const double bound = p.heisenberg_bound();
    return std::abs(p.u - bound) <= 1e-12 * bound;
}

MomentSet moments_from_canonical(double s, double ps, double u) {
    if (!(s > 0)) throw domain_error("s", "dispersion must be positive");
    if (!(u > 0)) throw domain_error("u", "Casimir must be positive");
    const double s2 = s * s;
    return MomentSet{s2, ps * s, (u + ps * ps * s2) / s2};
}

CanonicalTriple canonical_from_moments(const MomentSet& ms, double hbar) {
    if (!(ms.g20 > 0)) throw domain_error("g20", "position variance must be positive");
    const double s = std::sqrt(ms.g20);
    const double ps = ms.g11 / s;
    const double prod = ms.g20 * ms.g02;
    const double u = prod - ms.g11 * ms.g11;
    // The subtraction above can cancel catastrophically when g11^2 dominates
    // the Casimir; allow rounding slack proportional to the operand scale
    // before declaring the input unphysical.
    const double bound = 0.25 * hbar * hbar;
    const double slack = 1e-12 * (std::abs(prod) + ms.g11 * ms.g11 + bound);
    if (u < bound - slack)
        throw heisenberg_error("u", "reconstructed Casimir below hbar^2/4: unphysical moments");
    return CanonicalTriple{s, ps, u};
}

bool all_finite(const PhaseState& st) {
    return std::isfinite(st.t) && std::isfinite(st.x) && std::isfinite(st.y) &&
           std::isfinite(st.px) && std::isfinite(st.py) && std::isfinite(st.sx) &&
           std::isfinite(st.psx) && std::isfinite(st.sy) && std::isfinite(st.psy);
}

void validate_state(const PhaseState& st) {
    if (!all_finite(st)) throw domain_error("state", "non-finite component");
    if (!(st.sx > 0)) throw domain_error("sx", "dispersion must be positive");
    if (!(st.sy > 0)) throw domain_error("sy", "dispersion must be positive");
}

}  // namespace qslit
