#include <qslit/csv.hpp>

#include <charconv>
#include <ostream>

namespace qslit {

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const PhysParams& p) {
    os << "t,x,y,px,py,sx,psx,sy,psy,H_Q\n";
    for (const auto& s : traj.samples) {
        os << format_double(s.t) << ',' << format_double(s.x) << ',' << format_double(s.y) << ','
           << format_double(s.px) << ',' << format_double(s.py) << ',' << format_double(s.sx)
           << ',' << format_double(s.psx) << ',' << format_double(s.sy) << ','
           << format_double(s.psy) << ',' << format_double(hamiltonian_2d(s, p)) << '\n';
    }
}

void write_outcomes_csv(std::ostream& os, const EnsembleResult& result) {
    os << "index,y0,outcome,y_hit,t_hit\n";
    for (const auto& rec : result.records) {
        os << rec.index << ',' << format_double(rec.y0) << ',';
        if (!rec.outcome) {
            os << "failed,,";
        } else if (is_arrival(*rec.outcome)) {
            const auto& a = std::get<Arrival>(*rec.outcome);
            os << "arrival," << format_double(a.y_hit) << ',' << format_double(a.t_hit);
        } else if (is_reflected(*rec.outcome)) {
            os << "reflected,," << format_double(std::get<Reflected>(*rec.outcome).t_exit);
        } else {
            os << "timeout,,";
        }
        os << '\n';
    }
}

void write_histogram_csv(std::ostream& os, const Histogram& hist,
                         const std::vector<double>& reference) {
    os << "bin_center,count,smoothed,reference_intensity\n";
    for (std::size_t i = 0; i < hist.centers.size(); ++i) {
        os << format_double(hist.centers[i]) << ',' << format_double(hist.counts[i]) << ','
           << format_double(hist.smoothed[i]) << ','
           << format_double(i < reference.size() ? reference[i] : 0.0) << '\n';
    }
}

void write_arrival_times_csv(std::ostream& os, const std::vector<ArrivalRecord>& arrivals) {
    os << "index,y0,t_hit\n";
    for (const auto& a : arrivals)
        os << a.index << ',' << format_double(a.y0) << ',' << format_double(a.t_hit) << '\n';
}

void write_snapshot_csv(std::ostream& os, const std::vector<std::array<double, 2>>& points) {
    os << "index,x,y\n";
    for (std::size_t i = 0; i < points.size(); ++i)
        os << i << ',' << format_double(points[i][0]) << ',' << format_double(points[i][1]) << '\n';
}

}  // namespace qslit
