#pragma once

#include <qslit/analysis.hpp>
#include <qslit/ensemble.hpp>
#include <qslit/integrate.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace qslit {

// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);

// t,x,y,px,py,sx,psx,sy,psy,H_Q
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const PhysParams& p);

// index,y0,outcome,y_hit,t_hit  (y_hit/t_hit empty where not applicable;
// reflected rows carry the exit time in t_hit)
void write_outcomes_csv(std::ostream& os, const EnsembleResult& result);

// bin_center,count,smoothed,reference_intensity
void write_histogram_csv(std::ostream& os, const Histogram& hist,
                         const std::vector<double>& reference);

// index,y0,t_hit
void write_arrival_times_csv(std::ostream& os, const std::vector<ArrivalRecord>& arrivals);

// index,x,y
void write_snapshot_csv(std::ostream& os, const std::vector<std::array<double, 2>>& points);

}  // namespace qslit
