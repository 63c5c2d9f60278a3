// Command-line front end: simulate | ensemble | validate | geometry.
// Exit codes: 0 success, 1 check/physics failure, 2 configuration error.

#include <CLI11.hpp>
#include <json.hpp>

#include <qslit/analysis.hpp>
#include <qslit/config.hpp>
#include <qslit/csv.hpp>
#include <qslit/ensemble.hpp>
#include <qslit/svg.hpp>
#include <qslit/validation.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

using json = nlohmann::ordered_json;
using namespace qslit;

namespace {

namespace fs = std::filesystem;

struct Cli {
    std::string config_path;
    std::string sampler;
    std::string envelope;  // "on" | "off"
    double y0 = 0;
    std::vector<double> snapshot_times;
    RunConfig cfg;  // flag values land here after the config file is applied
};

// Registers every overridable field on a subcommand. Flags the user set are
// re-applied on top of the config file afterwards.
void add_override_flags(CLI::App* cmd, Cli& cli) {
    auto& cfg = cli.cfg;
    cmd->add_option("--config", cli.config_path, "TOML configuration file");

    cmd->add_option("--m", cfg.physics.m, "particle mass");
    cmd->add_option("--omega", cfg.physics.omega, "barrier frequency");
    cmd->add_option("--v0", cfg.physics.v0, "barrier height");
    cmd->add_option("--alpha", cfg.physics.alpha, "barrier thickness");
    cmd->add_option("--hbar", cfg.physics.hbar, "reduced Planck constant");
    cmd->add_option("--u", cfg.physics.u, "Casimir invariant");

    cmd->add_option("--rtol", cfg.integrator.rtol, "relative tolerance");
    cmd->add_option("--atol", cfg.integrator.atol, "absolute tolerance");
    cmd->add_option("--h0", cfg.integrator.h0, "initial step (0 = auto)");
    cmd->add_option("--h-max", cfg.integrator.h_max, "max step (0 = unbounded)");
    cmd->add_option("--t-max", cfg.integrator.t_max, "integration horizon");
    cmd->add_option("--x-screen", cfg.integrator.x_screen, "screen plane");
    cmd->add_option("--x-reflect", cfg.integrator.x_reflect, "source plane");

    cmd->add_option("--n", cfg.ensemble.n, "particle count");
    cmd->add_option("--y-min", cfg.ensemble.y_min, "lower y0 bound");
    cmd->add_option("--y-max", cfg.ensemble.y_max, "upper y0 bound");
    cmd->add_option("--sampler", cli.sampler, "grid|uniform|gaussian");
    cmd->add_option("--seed", cfg.ensemble.seed, "random seed");
    cmd->add_option("--sigma", cfg.ensemble.sigma, "gaussian sampler width (0 = sy0)");
    cmd->add_option("--x0", cfg.ensemble.x0, "source x");
    cmd->add_option("--px0", cfg.ensemble.px0, "beam momentum");
    cmd->add_option("--py0", cfg.ensemble.py0, "transverse momentum");
    cmd->add_option("--sx0", cfg.ensemble.sx0, "initial x dispersion");
    cmd->add_option("--sy0", cfg.ensemble.sy0, "initial y dispersion");
    cmd->add_option("--threads", cfg.ensemble.threads, "worker count (0 = all)");
    cmd->add_flag("--retain-trajectories", cfg.ensemble.retain_trajectories,
                  "keep dense trajectories in memory");

    cmd->add_option("--bin-width", cfg.histogram.bin_width, "histogram bin width");
    cmd->add_option("--hist-min", cfg.histogram.y_min, "histogram lower edge");
    cmd->add_option("--hist-max", cfg.histogram.y_max, "histogram upper edge");
    cmd->add_option("--smoothing", cfg.histogram.smoothing, "smoothing kernel sigma");

    cmd->add_option("--out", cfg.output.dir, "output directory");
    cmd->add_flag("--svg", cfg.output.svg, "emit SVG plots");
    cmd->add_option("--envelope", cli.envelope, "reference envelope on|off")
        ->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--snapshot-t", cli.snapshot_times, "emit ensemble snapshot CSV at time t");
}

// Load the config file (if any), then re-apply every flag the user passed.
RunConfig resolve_config(CLI::App* cmd, Cli& cli) {
    if (cli.config_path.empty()) {
        if (!cli.sampler.empty()) cli.cfg.ensemble.sampler = sampler_from_name(cli.sampler);
    } else {
        RunConfig from_file = load_config(cli.config_path);
        // flags win over the file: replay them onto the loaded config
        const RunConfig flag_values = cli.cfg;
        cli.cfg = from_file;
        if (cmd->count("--m")) cli.cfg.physics.m = flag_values.physics.m;
        if (cmd->count("--omega")) cli.cfg.physics.omega = flag_values.physics.omega;
        if (cmd->count("--v0")) cli.cfg.physics.v0 = flag_values.physics.v0;
        if (cmd->count("--alpha")) cli.cfg.physics.alpha = flag_values.physics.alpha;
        if (cmd->count("--hbar")) cli.cfg.physics.hbar = flag_values.physics.hbar;
        if (cmd->count("--u")) {
            cli.cfg.physics.u = flag_values.physics.u;
            cli.cfg.ensemble.u = flag_values.physics.u;
        }
        if (cmd->count("--rtol")) cli.cfg.integrator.rtol = flag_values.integrator.rtol;
        if (cmd->count("--atol")) cli.cfg.integrator.atol = flag_values.integrator.atol;
        if (cmd->count("--h0")) cli.cfg.integrator.h0 = flag_values.integrator.h0;
        if (cmd->count("--h-max")) cli.cfg.integrator.h_max = flag_values.integrator.h_max;
        if (cmd->count("--t-max")) cli.cfg.integrator.t_max = flag_values.integrator.t_max;
        if (cmd->count("--x-screen")) cli.cfg.integrator.x_screen = flag_values.integrator.x_screen;
        if (cmd->count("--x-reflect")) cli.cfg.integrator.x_reflect = flag_values.integrator.x_reflect;
        if (cmd->count("--n")) cli.cfg.ensemble.n = flag_values.ensemble.n;
        if (cmd->count("--y-min")) cli.cfg.ensemble.y_min = flag_values.ensemble.y_min;
        if (cmd->count("--y-max")) cli.cfg.ensemble.y_max = flag_values.ensemble.y_max;
        if (cmd->count("--seed")) cli.cfg.ensemble.seed = flag_values.ensemble.seed;
        if (cmd->count("--sigma")) cli.cfg.ensemble.sigma = flag_values.ensemble.sigma;
        if (cmd->count("--x0")) cli.cfg.ensemble.x0 = flag_values.ensemble.x0;
        if (cmd->count("--px0")) cli.cfg.ensemble.px0 = flag_values.ensemble.px0;
        if (cmd->count("--py0")) cli.cfg.ensemble.py0 = flag_values.ensemble.py0;
        if (cmd->count("--sx0")) cli.cfg.ensemble.sx0 = flag_values.ensemble.sx0;
        if (cmd->count("--sy0")) cli.cfg.ensemble.sy0 = flag_values.ensemble.sy0;
        if (cmd->count("--threads")) cli.cfg.ensemble.threads = flag_values.ensemble.threads;
        if (cmd->count("--retain-trajectories"))
            cli.cfg.ensemble.retain_trajectories = flag_values.ensemble.retain_trajectories;
        if (cmd->count("--bin-width")) cli.cfg.histogram.bin_width = flag_values.histogram.bin_width;
        if (cmd->count("--hist-min")) cli.cfg.histogram.y_min = flag_values.histogram.y_min;
        if (cmd->count("--hist-max")) cli.cfg.histogram.y_max = flag_values.histogram.y_max;
        if (cmd->count("--smoothing")) cli.cfg.histogram.smoothing = flag_values.histogram.smoothing;
        if (cmd->count("--out")) cli.cfg.output.dir = flag_values.output.dir;
        if (cmd->count("--svg")) cli.cfg.output.svg = flag_values.output.svg;
        if (!cli.sampler.empty()) cli.cfg.ensemble.sampler = sampler_from_name(cli.sampler);
    }
    if (!cli.envelope.empty()) cli.cfg.output.envelope = cli.envelope == "on";
    if (!cli.snapshot_times.empty()) cli.cfg.output.snapshot_times = cli.snapshot_times;
    validate_config(cli.cfg);
    return cli.cfg;
}

json state_json(const PhaseState& st) {
    return json{{"t", st.t},   {"x", st.x},     {"y", st.y},   {"px", st.px}, {"py", st.py},
                {"sx", st.sx}, {"psx", st.psx}, {"sy", st.sy}, {"psy", st.psy}};
}

void trajectory_svg(const fs::path& path, const Trajectory& traj, const IntegratorConfig& icfg,
                    const PhysParams& p) {
    const auto belts = belt(traj);
    double y_lo = -2, y_hi = 2;
    for (const auto& b : belts) {
        y_lo = std::min(y_lo, b.y_lo - 0.5);
        y_hi = std::max(y_hi, b.y_hi + 0.5);
    }
    SvgPlot plot(icfg.x_screen - 20, icfg.x_reflect + 20, y_lo, y_hi, 960, 520,
                 "trajectory with uncertainty belt");
    std::vector<std::array<double, 2>> path_pts, upper, lower;
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        const auto& s = traj.samples[i];
        path_pts.push_back({s.x, s.y});
        upper.push_back({s.x, belts[i].y_hi});
        lower.push_back({s.x, belts[i].y_lo});
    }
    plot.band(upper, lower, "#2ca02c", 0.3);
    plot.polyline(path_pts, "#d62728", 1.8);
    plot.vline(icfg.x_screen, "#555");
    plot.vline(0, "#bbb", "2,6");
    const double ys = slit_centers(p).y_slit;
    plot.circles({{0, ys}, {0, -ys}}, 3.0, "#1f77b4");
    plot.axis_labels("x", "y");
    plot.save(path.string());
}

int cmd_simulate(CLI::App* cmd, Cli& cli) {
    const RunConfig cfg = resolve_config(cmd, cli);
    fs::create_directories(cfg.output.dir);

    EnsembleConfig ecfg = cfg.ensemble;
    PhysParams p = cfg.physics;
    p.u = ecfg.u;
    validate_params(p);

    PhaseState st;
    st.x = ecfg.x0;
    st.y = cli.y0;
    st.px = ecfg.px0;
    st.py = ecfg.py0;
    st.sx = ecfg.sx0;
    st.sy = ecfg.sy0;

    const fs::path csv_path = fs::path(cfg.output.dir) / "trajectory.csv";
    try {
        const Trajectory traj = integrate(st, p, cfg.integrator);
        {
            std::ofstream os(csv_path, std::ios::binary);
            write_trajectory_csv(os, traj, p);
        }
        json out{{"outcome", outcome_name(traj.outcome)},
                 {"t_end", traj.t_end()},
                 {"steps", traj.n_accepted},
                 {"rejected_steps", traj.n_rejected},
                 {"energy_drift", energy_drift(traj, p)},
                 {"csv", csv_path.string()}};
        if (is_arrival(traj.outcome)) {
            const auto& a = std::get<Arrival>(traj.outcome);
            out["y_hit"] = a.y_hit;
            out["t_hit"] = a.t_hit;
        } else if (is_reflected(traj.outcome)) {
            out["t_exit"] = std::get<Reflected>(traj.outcome).t_exit;
        }
        if (cfg.output.svg) {
            const fs::path svg_path = fs::path(cfg.output.dir) / "trajectory.svg";
            trajectory_svg(svg_path, traj, cfg.integrator, p);
            out["svg"] = svg_path.string();
        }
        std::cout << out.dump(2) << '\n';
        return 0;
    } catch (const stiffness_error& e) {
        const json out{{"error", e.what()}, {"last_state", state_json(e.last_state())}};
        std::cout << out.dump(2) << '\n';
        return 1;
    }
}

int cmd_ensemble(CLI::App* cmd, Cli& cli) {
    const RunConfig cfg = resolve_config(cmd, cli);
    if (!cfg.output.snapshot_times.empty() && !cfg.ensemble.retain_trajectories)
        throw config_error("snapshot_times requires retain_trajectories");
    fs::create_directories(cfg.output.dir);

    PhysParams p = cfg.physics;
    p.u = cfg.ensemble.u;
    validate_params(p);

    const EnsembleResult res = run_ensemble(cfg.ensemble, p, cfg.integrator);
    const auto arrivals = arrivals_of(res);

    const fs::path dir = cfg.output.dir;
    {
        std::ofstream os(dir / "outcomes.csv", std::ios::binary);
        write_outcomes_csv(os, res);
    }

    json out{{"n", cfg.ensemble.n},
             {"sampler", sampler_name(cfg.ensemble.sampler)},
             {"seed", cfg.ensemble.seed},
             {"counts",
              {{"arrivals", res.counts.arrivals},
               {"reflections", res.counts.reflections},
               {"timeouts", res.counts.timeouts},
               {"failures", res.counts.failures}}},
             {"files", json::object()}};
    out["files"]["outcomes"] = (dir / "outcomes.csv").string();

    int crossing_count = 0, crossing_base = 0;
    for (const auto& a : arrivals) {
        if (std::abs(a.y0) > 0.3) {
            ++crossing_base;
            if (a.y0 * a.y_hit < 0) ++crossing_count;
        }
    }
    out["crossing_count"] = crossing_count;
    out["crossing_base"] = crossing_base;

    if (!arrivals.empty()) {
        const FraunhoferSpec ref = fraunhofer_spec(p, cfg.integrator, cfg.ensemble,
                                                   cfg.output.envelope);
        Histogram hist = histogram(arrivals, cfg.histogram);
        FraunhoferSpec scaled = ref;
        double peak = 0;
        for (const double v : hist.smoothed) peak = std::max(peak, v);
        scaled.amplitude = peak > 0 ? peak : 1.0;
        const auto reference = fraunhofer_reference(scaled, hist.centers);
        {
            std::ofstream os(dir / "histogram.csv", std::ios::binary);
            write_histogram_csv(os, hist, reference);
        }
        out["files"]["histogram"] = (dir / "histogram.csv").string();

        const ArrivalTimeStats times = arrival_times(res);
        {
            std::ofstream os(dir / "arrival_times.csv", std::ios::binary);
            write_arrival_times_csv(os, arrivals);
        }
        out["files"]["arrival_times"] = (dir / "arrival_times.csv").string();
        out["arrival_time"] = {{"min", times.t_min}, {"median", times.t_median},
                               {"max", times.t_max}};

        try {
            out["fringe_score"] = fringe_score(hist, scaled);
        } catch (const std::exception&) {
            out["fringe_score"] = nullptr;
        }
        const FringeAnalysis fa = find_fringes(hist);
        out["fringe_spacing_expected"] = fringe_spacing(ref);
        out["fringe_spacing_measured"] = fa.spacing > 0 ? json(fa.spacing) : json(nullptr);
        out["histogram_peak_y"] = fa.global_max_y;

        if (cfg.output.svg) {
            double top = 0;
            for (const double c : hist.counts) top = std::max(top, c);
            SvgPlot plot(cfg.histogram.y_min, cfg.histogram.y_max, 0, 1.12 * top + 1, 960, 520,
                         "arrivals at the screen");
            plot.bars(hist.centers, hist.counts, hist.bin_width, "#d62728", 0.55);
            std::vector<std::array<double, 2>> ref_pts, smooth_pts;
            for (std::size_t i = 0; i < hist.centers.size(); ++i) {
                ref_pts.push_back({hist.centers[i], reference[i]});
                smooth_pts.push_back({hist.centers[i], hist.smoothed[i]});
            }
            plot.polyline(smooth_pts, "#d62728", 1.5);
            plot.polyline(ref_pts, "#111", 1.5, "7,4");
            plot.axis_labels("y", "count");
            plot.save((dir / "histogram.svg").string());
            out["files"]["histogram_svg"] = (dir / "histogram.svg").string();

            // arrival-time distribution
            const double t_lo = times.t_min, t_hi = std::max(times.t_max, t_lo + 1e-6);
            const int nb = 40;
            std::vector<double> centers(nb), heights(nb, 0.0);
            const double w = (t_hi - t_lo) / nb;
            for (int i = 0; i < nb; ++i) centers[i] = t_lo + (i + 0.5) * w;
            for (const double t : times.times) {
                int idx = static_cast<int>((t - t_lo) / w);
                idx = std::clamp(idx, 0, nb - 1);
                heights[idx] += 1.0;
            }
            double tmax = 0;
            for (const double hgt : heights) tmax = std::max(tmax, hgt);
            SvgPlot tplot(t_lo - w, t_hi + w, 0, 1.12 * tmax + 1, 960, 520, "time of arrival");
            tplot.bars(centers, heights, w, "#1f77b4", 0.8);
            tplot.axis_labels("t", "count");
            tplot.save((dir / "arrival_times.svg").string());
            out["files"]["arrival_times_svg"] = (dir / "arrival_times.svg").string();
        }
    }

    for (const double t : cfg.output.snapshot_times) {
        const auto pts = snapshot(res, t);
        const fs::path sp = dir / ("snapshot_" + format_double(t) + ".csv");
        std::ofstream os(sp, std::ios::binary);
        write_snapshot_csv(os, pts);
        out["files"]["snapshot_" + format_double(t)] = sp.string();
    }

    if (cfg.output.svg && cfg.ensemble.retain_trajectories) {
        SvgPlot plot(cfg.integrator.x_screen - 20, cfg.integrator.x_reflect + 20, -8, 8, 960, 520,
                     "trajectory fan");
        const std::size_t stride = std::max<std::size_t>(1, res.trajectories.size() / 160);
        for (std::size_t i = 0; i < res.trajectories.size(); i += stride) {
            const auto& traj = res.trajectories[i];
            if (traj.samples.empty()) continue;
            std::vector<std::array<double, 2>> pts;
            pts.reserve(traj.samples.size());
            for (const auto& s : traj.samples) pts.push_back({s.x, s.y});
            const char* color = "#ff7f0e";
            if (res.records[i].outcome && is_arrival(*res.records[i].outcome)) color = "#d62728";
            if (res.records[i].outcome && is_reflected(*res.records[i].outcome)) color = "#2ca02c";
            plot.polyline(pts, color, 0.8);
        }
        plot.vline(cfg.integrator.x_screen, "#555");
        plot.axis_labels("x", "y");
        plot.save((dir / "trajectories.svg").string());
        out["files"]["trajectories_svg"] = (dir / "trajectories.svg").string();
    }

    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_validate(CLI::App* cmd, Cli& cli) {
    const RunConfig cfg = resolve_config(cmd, cli);
    const auto checks = validation_suite(cfg.physics, cfg.integrator);
    bool all_pass = true;
    json report = json::array();
    for (const auto& c : checks) {
        all_pass = all_pass && c.pass;
        std::printf("[%s] %-16s measured=%.3e threshold=%.0e %s\n", c.pass ? "PASS" : "FAIL",
                    c.name.c_str(), c.measured, c.threshold, c.detail.c_str());
        report.push_back({{"name", c.name},
                          {"pass", c.pass},
                          {"measured", c.measured},
                          {"threshold", c.threshold}});
    }
    std::cout << json{{"all_pass", all_pass}, {"checks", report}}.dump(2) << '\n';
    return all_pass ? 0 : 1;
}

int cmd_geometry(CLI::App* cmd, Cli& cli) {
    const RunConfig cfg = resolve_config(cmd, cli);
    const SlitGeometry geo = slit_centers(cfg.physics);
    const FraunhoferSpec ref = fraunhofer_spec(cfg.physics, cfg.integrator, cfg.ensemble,
                                               cfg.output.envelope);
    const json out{{"y_slit", geo.y_slit},
                   {"d", ref.d},
                   {"a_width", ref.a},
                   {"probe_energy", ref.probe_energy},
                   {"lambda_db", ref.lambda},
                   {"fringe_spacing", fringe_spacing(ref)},
                   {"screen_distance", ref.big_l},
                   {"saturated", saturated(cfg.physics)}};
    std::cout << out.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semiclassical double-slit simulator"};
    app.require_subcommand(1);

    Cli cli;
    CLI::App* sim = app.add_subcommand("simulate", "integrate one particle, emit trajectory CSV");
    sim->add_option("--y0", cli.y0, "initial transverse position");
    add_override_flags(sim, cli);
    CLI::App* ens = app.add_subcommand("ensemble", "run a particle ensemble, emit analysis CSVs");
    add_override_flags(ens, cli);
    CLI::App* val = app.add_subcommand("validate", "run the dynamics/integrator check suite");
    add_override_flags(val, cli);
    CLI::App* geo = app.add_subcommand("geometry", "print slit geometry and reference-curve data");
    add_override_flags(geo, cli);

    try {
        app.parse(argc, argv);
        if (app.got_subcommand(sim)) return cmd_simulate(sim, cli);
        if (app.got_subcommand(ens)) return cmd_ensemble(ens, cli);
        if (app.got_subcommand(val)) return cmd_validate(val, cli);
        if (app.got_subcommand(geo)) return cmd_geometry(geo, cli);
        return 2;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    } catch (const domain_error& e) {
        std::cout << json{{"error", e.what()}, {"field", e.field()}}.dump(2) << '\n';
        return 2;
    } catch (const config_error& e) {
        std::cout << json{{"error", e.what()}}.dump(2) << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cout << json{{"error", e.what()}}.dump(2) << '\n';
        return 1;
    }
}
