#include <qslit/dynamics.hpp>

#include <algorithm>
#include <quadmath.h>
#include <cmath>

namespace qslit {

namespace {

void require_dispersions(const PhaseState& st) {
    if (!(st.sx > 0)) throw domain_error("sx", "dispersion must be positive");
    if (!(st.sy > 0)) throw domain_error("sy", "dispersion must be positive");
}

}  // namespace

double hamiltonian_2d(const PhaseState& st, const PhysParams& p) {
    require_dispersions(st);
    const double inv_2m = 0.5 / p.m;
    const double kinetic = (st.px * st.px + st.psx * st.psx + st.py * st.py + st.psy * st.psy) * inv_2m;
    const double casimir = p.u * inv_2m * (1.0 / (st.sx * st.sx) + 1.0 / (st.sy * st.sy));

    const double inv_a = 1.0 / p.alpha;
    const double e_sum = gauss_envelope((st.x + st.sx) * inv_a) + gauss_envelope((st.x - st.sx) * inv_a);

    const double q = p.m * p.omega * p.omega / (4.0 * p.v0);
    const double gp = 1.0 - q * (st.y + st.sy) * (st.y + st.sy);
    const double gm = 1.0 - q * (st.y - st.sy) * (st.y - st.sy);
    const double p_sum = p.v0 * (gp * gp + gm * gm);

    return kinetic + casimir + 0.25 * e_sum * p_sum;
}

StateDerivative rhs_2d(const PhaseState& st, const PhysParams& p) {
    require_dispersions(st);
    const double inv_m = 1.0 / p.m;
    const double inv_a = 1.0 / p.alpha;
    const double inv_a2 = inv_a * inv_a;

    const double xp = st.x + st.sx;
    const double xm = st.x - st.sx;
    const double ep = gauss_envelope(xp * inv_a);
    const double em = gauss_envelope(xm * inv_a);
    const double e_sum = ep + em;

    const double q = p.m * p.omega * p.omega / (4.0 * p.v0);
    const double yp = st.y + st.sy;
    const double ym = st.y - st.sy;
    const double gp = 1.0 - q * yp * yp;
    const double gm = 1.0 - q * ym * ym;
    const double p_sum = p.v0 * (gp * gp + gm * gm);

    // d/deta of the prefactor v0 (1 - q eta^2)^2 is -m omega^2 eta (1 - q eta^2).
    const double momega2 = p.m * p.omega * p.omega;
    const double odd = yp * gp - ym * gm;   // enters the sy force
    const double even = yp * gp + ym * gm;  // enters the y force

    StateDerivative d;
    d.dx = st.px * inv_m;
    d.dy = st.py * inv_m;
    d.dsx = st.psx * inv_m;
    d.dsy = st.psy * inv_m;
    d.dpx = 0.5 * inv_a2 * p_sum * (xp * ep + xm * em);
    d.dpsx = p.u * inv_m / (st.sx * st.sx * st.sx) + 0.5 * inv_a2 * p_sum * (xp * ep - xm * em);
    d.dpy = 0.25 * momega2 * e_sum * even;
    d.dpsy = p.u * inv_m / (st.sy * st.sy * st.sy) + 0.25 * momega2 * e_sum * odd;
    return d;
}

double hamiltonian_1d(const State1D& st, double u, const PotentialKind& kind, const PhysParams& p) {
    if (!(st.s > 0)) throw domain_error("s", "dispersion must be positive");
    const double inv_2m = 0.5 / p.m;
    return (st.px * st.px + st.ps * st.ps) * inv_2m + u * inv_2m / (st.s * st.s) +
           0.5 * (v_validation(kind, st.x + st.s, p) + v_validation(kind, st.x - st.s, p));
}

Derivative1D rhs_1d(const State1D& st, double u, const PotentialKind& kind, const PhysParams& p) {
    if (!(st.s > 0)) throw domain_error("s", "dispersion must be positive");
    const double inv_m = 1.0 / p.m;
    const double dvp = dv_validation(kind, st.x + st.s, p);
    const double dvm = dv_validation(kind, st.x - st.s, p);
    Derivative1D d;
    d.dx = st.px * inv_m;
    d.ds = st.ps * inv_m;
    d.dpx = -0.5 * (dvp + dvm);
    d.dps = u * inv_m / (st.s * st.s * st.s) - 0.5 * (dvp - dvm);
    return d;
}

namespace {

// The check must resolve gradient components of order 10 under a kinetic
// bulk of order 1e7; in double precision the difference quotient bottoms
// out at eps*|H|/h ~ 1e-6 relative, far above the force-free target. The
// oracle therefore evaluates the Hamiltonian in quad precision; the
// fourth-order stencil then leaves truncation as the only error term.
__float128 hamiltonian_2d_quad(const double z[8], const PhysParams& p) {
    const __float128 px = z[2], py = z[3], psx = z[5], psy = z[7];
    const __float128 sx = z[4], sy = z[6];
    const __float128 inv_2m = 0.5q / p.m;
    const __float128 kinetic = (px * px + psx * psx + py * py + psy * psy) * inv_2m;
    const __float128 casimir = p.u * inv_2m * (1.0q / (sx * sx) + 1.0q / (sy * sy));

    auto envelope = [&](__float128 xi) -> __float128 {
        const __float128 zz = (xi / p.alpha) * (xi / p.alpha);
        return zz > 700.0q ? 0.0q : expq(-zz);
    };
    const __float128 e_sum = envelope(z[0] + sx) + envelope(z[0] - sx);

    const __float128 q = static_cast<__float128>(p.m) * p.omega * p.omega / (4.0q * p.v0);
    const __float128 gp = 1.0q - q * (z[1] + sy) * (z[1] + sy);
    const __float128 gm = 1.0q - q * (z[1] - sy) * (z[1] - sy);
    const __float128 p_sum = p.v0 * (gp * gp + gm * gm);

    return kinetic + casimir + 0.25q * e_sum * p_sum;
}

}  // namespace

double grad_check_against(const Rhs2DFn& rhs, const PhaseState& st, const PhysParams& p, double h) {
    if (!(h > 0)) throw domain_error("h", "finite-difference step must be positive");
    if (!(st.sx > 0) || !(st.sy > 0)) throw domain_error("s", "dispersion must be positive");
    const StateDerivative d = rhs(st, p);

    double grad[8];
    const double base[8] = {st.x, st.y, st.px, st.py, st.sx, st.psx, st.sy, st.psy};
    for (int i = 0; i < 8; ++i) {
        // dispersions step relative to their own size: the Casimir term's
        // fifth derivative grows as s^-7 and would otherwise dominate
        const bool is_dispersion = i == 4 || i == 6;
        const double hi = is_dispersion ? h * base[i] : h * (1.0 + std::abs(base[i]));
        auto slice = [&](double delta) -> __float128 {
            double z[8];
            for (int j = 0; j < 8; ++j) z[j] = base[j];
            z[i] += delta;
            return hamiltonian_2d_quad(z, p);
        };
        const __float128 diff =
            slice(-2.0 * hi) - 8.0q * slice(-hi) + 8.0q * slice(hi) - slice(2.0 * hi);
        grad[i] = static_cast<double>(diff / (12.0q * hi));
    }

    // symplectic pairing: (coordinate, conjugate momentum) per axis
    const double expected[8] = {
        grad[2],   // dx   = dH/dpx
        grad[3],   // dy   = dH/dpy
        -grad[0],  // dpx  = -dH/dx
        -grad[1],  // dpy  = -dH/dy
        grad[5],   // dsx  = dH/dpsx
        -grad[4],  // dpsx = -dH/dsx
        grad[7],   // dsy  = dH/dpsy
        -grad[6],  // dpsy = -dH/dsy
    };
    const double actual[8] = {d.dx, d.dy, d.dpx, d.dpy, d.dsx, d.dpsx, d.dsy, d.dpsy};

    double worst = 0.0;
    for (int i = 0; i < 8; ++i)
        worst = std::max(worst, std::abs(actual[i] - expected[i]) / (1.0 + std::abs(actual[i])));
    return worst;
}

double grad_check(const PhaseState& st, const PhysParams& p, double h) {
    return grad_check_against(rhs_2d, st, p, h);
}

}  // namespace qslit
