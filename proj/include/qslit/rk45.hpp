#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace qslit {

template <std::size_t N>
using Vec = std::array<double, N>;

// Tolerances and step bounds for the embedded 5(4) pair.
struct StepControl {
    double rtol = 1e-9;
    double atol = 1e-12;
    double h0 = 0;      // 0 = choose automatically
    double h_max = 0;   // 0 = unbounded
    double h_min = 1e-15;
};

// One accepted point with its derivative; pairs of samples carry the dense
// (cubic Hermite) representation of the step between them.
template <std::size_t N>
struct Sample {
    double t;
    Vec<N> y;
    Vec<N> f;
};

template <std::size_t N>
Vec<N> hermite(const Sample<N>& a, const Sample<N>& b, double t) {
    const double h = b.t - a.t;
    const double u = (t - a.t) / h;
    const double u2 = u * u;
    const double u3 = u2 * u;
    const double c00 = 2 * u3 - 3 * u2 + 1;
    const double c10 = u3 - 2 * u2 + u;
    const double c01 = -2 * u3 + 3 * u2;
    const double c11 = u3 - u2;
    Vec<N> out;
    for (std::size_t i = 0; i < N; ++i)
        out[i] = c00 * a.y[i] + h * c10 * a.f[i] + c01 * b.y[i] + h * c11 * b.f[i];
    return out;
}

enum class StopReason { ReachedEnd, Event, StepUnderflow };

template <std::size_t N>
struct DenseResult {
    std::vector<Sample<N>> samples;  // accepted steps; event sample appended last
    StopReason reason = StopReason::ReachedEnd;
    int event_id = -1;
    std::size_t n_accepted = 0;
    std::size_t n_rejected = 0;
};

namespace detail {

// Dormand-Prince 5(4) tableau (FSAL).
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b(5th) - b(4th), applied to k1..k7 for the error estimate
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

template <std::size_t N>
double hairer_initial_step(const Vec<N>& y0, const Vec<N>& f0, double t0, double dir,
                           const StepControl& ctl, auto& rhs, auto& valid) {
    double d0 = 0, d1 = 0;
    for (std::size_t i = 0; i < N; ++i) {
        const double sc = ctl.atol + ctl.rtol * std::abs(y0[i]);
        d0 += (y0[i] / sc) * (y0[i] / sc);
        d1 += (f0[i] / sc) * (f0[i] / sc);
    }
    d0 = std::sqrt(d0 / N);
    d1 = std::sqrt(d1 / N);
    double h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;

    Vec<N> y1;
    for (std::size_t i = 0; i < N; ++i) y1[i] = y0[i] + dir * h * f0[i];
    for (int tries = 0; !valid(y1) && tries < 40; ++tries) {
        h *= 0.5;
        for (std::size_t i = 0; i < N; ++i) y1[i] = y0[i] + dir * h * f0[i];
    }
    if (!valid(y1)) return h;

    const Vec<N> f1 = rhs(t0 + dir * h, y1);
    double d2 = 0;
    for (std::size_t i = 0; i < N; ++i) {
        const double sc = ctl.atol + ctl.rtol * std::abs(y0[i]);
        const double df = (f1[i] - f0[i]) / sc;
        d2 += df * df;
    }
    d2 = std::sqrt(d2 / N) / h;

    const double dmax = std::max(d1, d2);
    const double h1 = dmax <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / dmax, 0.2);
    return std::min(100.0 * h, h1);
}

}  // namespace detail

// Adaptive Dormand-Prince 5(4) with PI step control and dense output.
//
//   rhs(t, y) -> Vec<N>
//   valid(y)  -> bool; stage states failing it reject the whole step
//                (keeps barrier-repelled coordinates such as s > 0 out of
//                 the right-hand side)
//   event(a, b) -> optional<pair<int, t*>>; inspected on every accepted
//                step, t* must lie in (a.t, b.t]; integration stops there
//
// Identical inputs produce identical results; there is no internal state
// beyond the explicit arguments.
template <std::size_t N, typename Rhs, typename Valid, typename Event>
DenseResult<N> integrate_dense(Rhs&& rhs, const Vec<N>& y0, double t0, double t_end,
                               const StepControl& ctl, Valid&& valid, Event&& event) {
    using namespace detail;
    DenseResult<N> res;

    double t = t0;
    Vec<N> y = y0;
    Vec<N> f = rhs(t, y);
    res.samples.push_back(Sample<N>{t, y, f});
    if (t_end == t0) return res;

    const double dir = t_end > t0 ? 1.0 : -1.0;
    double h = ctl.h0 > 0 ? ctl.h0 : hairer_initial_step<N>(y, f, t, dir, ctl, rhs, valid);
    if (ctl.h_max > 0) h = std::min(h, ctl.h_max);

    constexpr double safe = 0.9, beta = 0.04;
    constexpr double expo1 = 0.2 - beta * 0.75;
    constexpr double fac_lo = 0.2, fac_hi = 10.0;
    double facold = 1e-4;
    bool rejected_last = false;

    Vec<N> k3, k4, k5, k6, y_new, f_new;

    while (dir * (t_end - t) > 0) {
        bool last = false;
        if (dir * (t + dir * h - t_end) >= 0) {
            h = dir * (t_end - t);
            last = true;
        }
        if (h < ctl.h_min && !last) {  // a capped final sliver is fine
            res.reason = StopReason::StepUnderflow;
            return res;
        }
        const double hd = dir * h;

        // stages (k1 = f by FSAL)
        static constexpr double A[5][5] = {
            {a21, 0, 0, 0, 0},
            {a31, a32, 0, 0, 0},
            {a41, a42, a43, 0, 0},
            {a51, a52, a53, a54, 0},
            {a61, a62, a63, a64, a65},
        };
        static constexpr double C[5] = {c2, c3, c4, c5, 1.0};
        Vec<N> k[6];
        k[0] = f;
        bool stage_ok = true;
        for (int s = 0; s < 5 && stage_ok; ++s) {
            Vec<N> yt;
            for (std::size_t i = 0; i < N; ++i) {
                double acc = 0;
                for (int j = 0; j <= s; ++j) acc += A[s][j] * k[j][i];
                yt[i] = y[i] + hd * acc;
            }
            if (!valid(yt)) {
                stage_ok = false;
                break;
            }
            k[s + 1] = rhs(t + C[s] * hd, yt);
        }
        if (stage_ok) {
            k3 = k[2];
            k4 = k[3];
            k5 = k[4];
            k6 = k[5];
            for (std::size_t i = 0; i < N; ++i)
                y_new[i] = y[i] + hd * (b1 * f[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
            if (!valid(y_new)) stage_ok = false;
        }
        if (!stage_ok) {
            h *= 0.5;
            ++res.n_rejected;
            rejected_last = true;
            continue;
        }
        f_new = rhs(t + hd, y_new);  // k7, reused as k1 on acceptance

        double err = 0;
        for (std::size_t i = 0; i < N; ++i) {
            const double ei = hd * (e1 * f[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                    e6 * k6[i] + e7 * f_new[i]);
            const double sc = ctl.atol + ctl.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            err += (ei / sc) * (ei / sc);
        }
        err = std::sqrt(err / N);

        if (!std::isfinite(err)) {
            h *= 0.5;
            ++res.n_rejected;
            rejected_last = true;
            continue;
        }

        const double fac11 = std::pow(err, expo1);
        if (err <= 1.0) {
            // accept
            facold = std::max(err, 1e-4);
            double fac = fac11 / std::pow(facold, beta);
            fac = std::max(1.0 / fac_hi, std::min(1.0 / fac_lo, fac / safe));
            double h_next = h / fac;
            if (rejected_last) h_next = std::min(h_next, h);
            rejected_last = false;

            const Sample<N> prev = res.samples.back();  // copy: push_back may reallocate
            const double t_new = last ? t_end : t + hd;
            res.samples.push_back(Sample<N>{t_new, y_new, f_new});
            ++res.n_accepted;

            if (auto ev = event(prev, res.samples.back())) {
                const auto [id, t_star] = *ev;
                res.samples.pop_back();
                Vec<N> y_star = hermite(prev, Sample<N>{t_new, y_new, f_new}, t_star);
                Vec<N> f_star = rhs(t_star, y_star);
                res.samples.push_back(Sample<N>{t_star, y_star, f_star});
                res.reason = StopReason::Event;
                res.event_id = id;
                return res;
            }

            t = t_new;
            y = y_new;
            f = f_new;
            h = h_next;
            if (ctl.h_max > 0) h = std::min(h, ctl.h_max);
        } else {
            h /= std::min(1.0 / fac_lo, fac11 / safe);
            ++res.n_rejected;
            rejected_last = true;
        }
    }
    res.reason = StopReason::ReachedEnd;
    return res;
}

struct NoEvent {
    template <std::size_t N>
    std::optional<std::pair<int, double>> operator()(const Sample<N>&, const Sample<N>&) const {
        return std::nullopt;
    }
};

struct AlwaysValid {
    template <std::size_t N>
    bool operator()(const Vec<N>&) const {
        return true;
    }
};

}  // namespace qslit
