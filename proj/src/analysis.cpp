#include <qslit/analysis.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qslit {

namespace {

// Mass-preserving Gaussian spread of per-bin values onto the same grid.
// Each source bin's content is distributed with weights renormalized over
// the in-range bins, so the column sums are unchanged.
std::vector<double> kernel_spread(const std::vector<double>& centers,
                                  const std::vector<double>& values, double sigma) {
    if (sigma <= 0) return values;
    const std::size_t n = centers.size();
    std::vector<double> out(n, 0.0);
    const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
    for (std::size_t i = 0; i < n; ++i) {
        if (values[i] == 0.0) continue;
        double wsum = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const double dyj = centers[j] - centers[i];
            wsum += std::exp(-dyj * dyj * inv2s2);
        }
        const double scale = values[i] / wsum;
        for (std::size_t j = 0; j < n; ++j) {
            const double dyj = centers[j] - centers[i];
            out[j] += scale * std::exp(-dyj * dyj * inv2s2);
        }
    }
    return out;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double saa = 0, sbb = 0, sab = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        saa += da * da;
        sbb += db * db;
        sab += da * db;
    }
    if (saa <= 1e-30 * n * (ma * ma + 1) || sbb <= 1e-30 * n * (mb * mb + 1))
        throw domain_error("fringe_score", "correlation undefined for constant inputs");
    return sab / std::sqrt(saa * sbb);
}

// Regularized upper incomplete gamma Q(a, x) by series / continued fraction.
double gammq(double a, double x) {
    if (x < 0 || a <= 0) throw domain_error("gammq", "requires x >= 0, a > 0");
    if (x == 0) return 1.0;
    if (x < a + 1.0) {
        // series for P(a, x)
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-15) break;
        }
        return 1.0 - sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    // Lentz continued fraction for Q(a, x)
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

Histogram histogram(const std::vector<ArrivalRecord>& arrivals, const HistogramSpec& spec) {
    if (arrivals.empty()) throw empty_input_error("histogram: no arrivals");
    if (!(spec.bin_width > 0)) throw domain_error("bin_width", "must be positive");
    if (!(spec.y_min < spec.y_max)) throw domain_error("range", "must be non-degenerate");

    const int nbins = std::max(1, static_cast<int>(std::round((spec.y_max - spec.y_min) / spec.bin_width)));
    Histogram h;
    h.bin_width = spec.bin_width;
    h.smoothing = spec.smoothing;
    h.centers.resize(static_cast<std::size_t>(nbins));
    h.counts.assign(static_cast<std::size_t>(nbins), 0.0);
    for (int i = 0; i < nbins; ++i)
        h.centers[static_cast<std::size_t>(i)] = spec.y_min + (i + 0.5) * spec.bin_width;

    for (const auto& a : arrivals) {
        const double pos = (a.y_hit - spec.y_min) / spec.bin_width;
        const int idx = static_cast<int>(std::floor(pos));
        if (idx < 0) {
            ++h.underflow;
        } else if (idx >= nbins) {
            ++h.overflow;
        } else {
            h.counts[static_cast<std::size_t>(idx)] += 1.0;
        }
    }
    h.smoothed = kernel_spread(h.centers, h.counts, spec.smoothing);
    return h;
}

FraunhoferSpec fraunhofer_spec(const PhysParams& p, const IntegratorConfig& icfg,
                               const EnsembleConfig& ecfg, bool envelope) {
    FraunhoferSpec spec;
    spec.lambda = 2.0 * std::numbers::pi * p.hbar / std::abs(ecfg.px0);
    spec.d = slit_centers(p).d;
    spec.big_l = std::abs(icfg.x_screen);
    spec.envelope = envelope;
    const double e_beam = ecfg.px0 * ecfg.px0 / (2.0 * p.m);
    // The opening width a particle "sees" is the sub-barrier-energy region.
    // An above-barrier beam has no such region; probe at half height then.
    spec.probe_energy = e_beam < p.v0 ? e_beam : 0.5 * p.v0;
    spec.a = slit_width(p, spec.probe_energy);
    return spec;
}

double fraunhofer_intensity(const FraunhoferSpec& spec, double y) {
    const double arg = std::numbers::pi * y / (spec.lambda * spec.big_l);
    const double cosf = std::cos(arg * spec.d);
    double out = spec.amplitude * cosf * cosf;
    if (spec.envelope) {
        const double sarg = arg * spec.a;
        const double s = sarg == 0 ? 1.0 : std::sin(sarg) / sarg;
        out *= s * s;
    }
    return out;
}

std::vector<double> fraunhofer_reference(const FraunhoferSpec& spec, const std::vector<double>& ys) {
    std::vector<double> out(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i) out[i] = fraunhofer_intensity(spec, ys[i]);
    return out;
}

std::vector<BeltSample> belt(const Trajectory& traj) {
    std::vector<BeltSample> out;
    out.reserve(traj.samples.size());
    for (const auto& s : traj.samples)
        out.push_back(BeltSample{s.t, s.x - s.sx, s.x + s.sx, s.y - s.sy, s.y + s.sy});
    return out;
}

std::vector<std::array<double, 2>> snapshot(const EnsembleResult& result, double t) {
    if (result.trajectories.size() != result.records.size())
        throw config_error("snapshot requires retain_trajectories");
    std::vector<std::array<double, 2>> out;
    out.reserve(result.trajectories.size());
    for (const auto& traj : result.trajectories) {
        if (traj.samples.empty()) throw config_error("snapshot: missing trajectory (failed particle)");
        const PhaseState st = interpolate(traj, t);
        out.push_back({st.x, st.y});
    }
    return out;
}

ArrivalTimeStats arrival_times(const EnsembleResult& result) {
    ArrivalTimeStats stats;
    for (const auto& rec : result.records)
        if (rec.outcome && is_arrival(*rec.outcome))
            stats.times.push_back(std::get<Arrival>(*rec.outcome).t_hit);
    if (stats.times.empty()) throw empty_input_error("arrival_times: no arrivals");

    std::vector<double> sorted = stats.times;
    std::sort(sorted.begin(), sorted.end());
    stats.t_min = sorted.front();
    stats.t_max = sorted.back();
    const std::size_t n = sorted.size();
    stats.t_median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    return stats;
}

double fringe_score(const Histogram& hist, const FraunhoferSpec& ref) {
    const double window = 3.0 * fringe_spacing(ref);
    // reference sampled at bin centers, then spread with the same kernel as
    // the counts so both sides carry the same resolution
    std::vector<double> model = fraunhofer_reference(ref, hist.centers);
    model = kernel_spread(hist.centers, model, hist.smoothing);

    std::vector<double> a, b;
    for (std::size_t i = 0; i < hist.centers.size(); ++i) {
        if (std::abs(hist.centers[i]) <= window) {
            a.push_back(hist.smoothed[i]);
            b.push_back(model[i]);
        }
    }
    if (a.size() < 3) throw empty_input_error("fringe_score: window holds fewer than 3 bins");
    return pearson(a, b);
}

FringeAnalysis find_fringes(const Histogram& hist) {
    FringeAnalysis fa;
    const std::size_t n = hist.centers.size();
    if (n < 3) return fa;
    // peak detection wants finer resolution than the reporting smoothing:
    // half a bin keeps adjacent fringes separated
    const std::vector<double> s = kernel_spread(hist.centers, hist.counts, 0.5 * hist.bin_width);

    const double peak_floor = 0.05 * *std::max_element(s.begin(), s.end());
    std::size_t imax = 0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (s[i] > s[imax]) imax = i;
        if (s[i] >= peak_floor && s[i] > s[i - 1] && s[i] >= s[i + 1]) {
            // parabolic sub-bin refinement
            const double denom = s[i - 1] - 2.0 * s[i] + s[i + 1];
            double delta = denom == 0 ? 0.0 : 0.5 * (s[i - 1] - s[i + 1]) / denom;
            delta = std::clamp(delta, -0.5, 0.5);
            fa.peak_ys.push_back(hist.centers[i] + delta * hist.bin_width);
        }
    }
    if (fa.peak_ys.empty()) return fa;

    {
        const std::size_t i = std::clamp<std::size_t>(imax, 1, n - 2);
        const double denom = s[i - 1] - 2.0 * s[i] + s[i + 1];
        double delta = denom == 0 ? 0.0 : 0.5 * (s[i - 1] - s[i + 1]) / denom;
        delta = std::clamp(delta, -0.5, 0.5);
        fa.global_max_y = hist.centers[i] + delta * hist.bin_width;
    }

    // central peak and its nearest neighbors on each side
    const auto central = std::min_element(fa.peak_ys.begin(), fa.peak_ys.end(),
                                          [](double u, double v) { return std::abs(u) < std::abs(v); });
    const double yc = *central;
    double y_left = 0, y_right = 0;
    bool have_left = false, have_right = false;
    for (const double y : fa.peak_ys) {
        if (y < yc - 0.5 * hist.bin_width && (!have_left || y > y_left)) {
            y_left = y;
            have_left = true;
        }
        if (y > yc + 0.5 * hist.bin_width && (!have_right || y < y_right)) {
            y_right = y;
            have_right = true;
        }
    }
    if (have_left && have_right) {
        fa.spacing = 0.5 * (y_right - y_left);
        fa.secondary_asymmetry = std::abs(y_right + y_left);
        fa.has_symmetric_secondary = fa.secondary_asymmetry <= hist.bin_width;
    }
    return fa;
}

MirrorTest mirror_chi_square(const Histogram& hist) {
    MirrorTest mt;
    const std::size_t n = hist.centers.size();
    for (std::size_t i = 0; i < n / 2; ++i) {
        const std::size_t j = n - 1 - i;
        const double a = hist.counts[i];
        const double b = hist.counts[j];
        if (a + b > 0) {
            mt.chi2 += (a - b) * (a - b) / (a + b);
            ++mt.dof;
        }
    }
    mt.p_value = mt.dof == 0 ? 1.0 : gammq(0.5 * mt.dof, 0.5 * mt.chi2);
    return mt;
}

}  // namespace qslit
