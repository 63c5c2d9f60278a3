#include <qslit/integrate.hpp>

#include <algorithm>
#include <cmath>
#include <optional>

namespace qslit {

namespace {

constexpr std::size_t IX = 0, IY = 1, IPX = 2, IPY = 3, ISX = 4, IPSX = 5, ISY = 6, IPSY = 7;

// Bisection on the Hermite interpolant of component IX against a plane.
// The caller guarantees a sign change across [a.t, b.t]; the root is
// narrowed to an interval of 1e-13 (|dt| < 1e-12 comfortably).
double locate_plane_crossing(const Sample<8>& a, const Sample<8>& b, double plane) {
    double lo = a.t, hi = b.t;
    double g_lo = a.y[IX] - plane;
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // interval at rounding limit
        const double g_mid = hermite(a, b, mid)[IX] - plane;
        if ((g_lo <= 0) == (g_mid <= 0)) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    return hi;
}

}  // namespace

IntegratorConfig validate_integrator(const IntegratorConfig& cfg) {
    if (!(cfg.rtol > 0)) throw domain_error("rtol", "relative tolerance must be positive");
    if (!(cfg.atol > 0)) throw domain_error("atol", "absolute tolerance must be positive");
    if (!(cfg.t_max > 0)) throw domain_error("t_max", "integration horizon must be positive");
    if (!(cfg.x_screen < 0)) throw domain_error("x_screen", "screen plane must be negative");
    if (!(cfg.x_reflect > 0)) throw domain_error("x_reflect", "reflection plane must be positive");
    if (cfg.h0 < 0) throw domain_error("h0", "initial step must be non-negative");
    if (cfg.h_max < 0) throw domain_error("h_max", "max step must be non-negative");
    return cfg;
}

const char* outcome_name(const Outcome& o) {
    if (is_arrival(o)) return "arrival";
    if (is_reflected(o)) return "reflected";
    return "timeout";
}

Vec<8> pack_state(const PhaseState& st) {
    return {st.x, st.y, st.px, st.py, st.sx, st.psx, st.sy, st.psy};
}

PhaseState unpack_state(double t, const Vec<8>& y) {
    return PhaseState{t, y[IX], y[IY], y[IPX], y[IPY], y[ISX], y[IPSX], y[ISY], y[IPSY]};
}

StateDerivative unpack_derivative(const Vec<8>& f) {
    return StateDerivative{f[IX], f[IY], f[IPX], f[IPY], f[ISX], f[IPSX], f[ISY], f[IPSY]};
}

Trajectory integrate(const PhaseState& st0, const PhysParams& p, const IntegratorConfig& cfg) {
    validate_params(p);
    validate_state(st0);
    validate_integrator(cfg);
    if (!(st0.x > cfg.x_screen) || !(st0.x <= cfg.x_reflect))
        throw domain_error("x", "initial position must lie in (x_screen, x_reflect]");

    if (st0.x == cfg.x_reflect && st0.px > 0) {
        // already on the source plane moving outward
        Trajectory traj;
        traj.samples.push_back(st0);
        traj.derivs.push_back(rhs_2d(st0, p));
        traj.outcome = Reflected{st0.t};
        return traj;
    }

    auto rhs = [&p](double /*t*/, const Vec<8>& y) -> Vec<8> {
        const StateDerivative d = rhs_2d(unpack_state(0.0, y), p);
        return {d.dx, d.dy, d.dpx, d.dpy, d.dsx, d.dpsx, d.dsy, d.dpsy};
    };
    auto valid = [](const Vec<8>& y) { return y[ISX] > 0 && y[ISY] > 0; };

    auto event = [&cfg](const Sample<8>& a, const Sample<8>& b)
        -> std::optional<std::pair<int, double>> {
        // screen: x decreasing through x_screen
        const double sa = a.y[IX] - cfg.x_screen;
        const double sb = b.y[IX] - cfg.x_screen;
        if (sa > 0 && sb <= 0) return {{0, locate_plane_crossing(a, b, cfg.x_screen)}};
        // source plane: x increasing through x_reflect (starting exactly on
        // the plane and moving inward does not trigger)
        const double ra = a.y[IX] - cfg.x_reflect;
        const double rb = b.y[IX] - cfg.x_reflect;
        if (ra < 0 && rb >= 0) return {{1, locate_plane_crossing(a, b, cfg.x_reflect)}};
        return std::nullopt;
    };

    StepControl ctl{cfg.rtol, cfg.atol, cfg.h0, cfg.h_max};
    DenseResult<8> res =
        integrate_dense<8>(rhs, pack_state(st0), st0.t, st0.t + cfg.t_max, ctl, valid, event);

    Trajectory traj;
    traj.samples.reserve(res.samples.size());
    traj.derivs.reserve(res.samples.size());
    for (const auto& s : res.samples) {
        traj.samples.push_back(unpack_state(s.t, s.y));
        traj.derivs.push_back(unpack_derivative(s.f));
    }
    traj.n_accepted = res.n_accepted;
    traj.n_rejected = res.n_rejected;

    switch (res.reason) {
        case StopReason::StepUnderflow:
            throw stiffness_error("step size underflow (stiff or collapsing dispersion)",
                                  traj.samples.back());
        case StopReason::Event: {
            const PhaseState& end = traj.samples.back();
            if (res.event_id == 0)
                traj.outcome = Arrival{end.y, end.t, end};
            else
                traj.outcome = Reflected{end.t};
            break;
        }
        case StopReason::ReachedEnd:
            traj.outcome = Timeout{};
            break;
    }
    return traj;
}

PhaseState interpolate(const Trajectory& traj, double t) {
    if (traj.samples.empty()) throw std::out_of_range("interpolate: empty trajectory");
    if (t < traj.t_begin() || t > traj.t_end())
        throw std::out_of_range("interpolate: time outside trajectory span");

    const auto& ts = traj.samples;
    auto it = std::lower_bound(ts.begin(), ts.end(), t,
                               [](const PhaseState& s, double v) { return s.t < v; });
    const std::size_t hi = std::min<std::size_t>(it - ts.begin(), ts.size() - 1);
    if (ts[hi].t == t) return ts[hi];
    const std::size_t lo = hi - 1;

    const Sample<8> a{ts[lo].t, pack_state(ts[lo]),
                      {traj.derivs[lo].dx, traj.derivs[lo].dy, traj.derivs[lo].dpx,
                       traj.derivs[lo].dpy, traj.derivs[lo].dsx, traj.derivs[lo].dpsx,
                       traj.derivs[lo].dsy, traj.derivs[lo].dpsy}};
    const Sample<8> b{ts[hi].t, pack_state(ts[hi]),
                      {traj.derivs[hi].dx, traj.derivs[hi].dy, traj.derivs[hi].dpx,
                       traj.derivs[hi].dpy, traj.derivs[hi].dsx, traj.derivs[hi].dpsx,
                       traj.derivs[hi].dsy, traj.derivs[hi].dpsy}};
    return unpack_state(t, hermite(a, b, t));
}

double energy_drift(const Trajectory& traj, const PhysParams& p) {
    const double h0 = hamiltonian_2d(traj.samples.front(), p);
    const double h1 = hamiltonian_2d(traj.samples.back(), p);
    return std::abs(h1 - h0) / std::max(std::abs(h0), 1e-300);
}

}  // namespace qslit
