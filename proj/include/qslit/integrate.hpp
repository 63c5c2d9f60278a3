#pragma once

#include <qslit/dynamics.hpp>
#include <qslit/model.hpp>
#include <qslit/rk45.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qslit {

struct IntegratorConfig {
    double rtol = 1e-9;
    double atol = 1e-12;
    double h0 = 0;            // 0 = automatic
    double h_max = 0;         // 0 = unbounded
    double t_max = 1.0;       // integration horizon
    double x_screen = -350.0; // detection plane (crossed moving left)
    double x_reflect = 400.0; // source plane (crossed moving right)
};

IntegratorConfig validate_integrator(const IntegratorConfig& cfg);

struct Arrival {
    double y_hit = 0;
    double t_hit = 0;
    PhaseState state;
};

struct Reflected {
    double t_exit = 0;
};

struct Timeout {};

using Outcome = std::variant<Arrival, Reflected, Timeout>;

inline bool is_arrival(const Outcome& o) { return std::holds_alternative<Arrival>(o); }
inline bool is_reflected(const Outcome& o) { return std::holds_alternative<Reflected>(o); }
inline bool is_timeout(const Outcome& o) { return std::holds_alternative<Timeout>(o); }
const char* outcome_name(const Outcome& o);

// Step-size underflow: the controller could not advance. Carries the last
// state the integrator accepted.
class stiffness_error : public std::runtime_error {
public:
    stiffness_error(const std::string& what, const PhaseState& last)
        : std::runtime_error(what), last_(last) {}

    const PhaseState& last_state() const noexcept { return last_; }

private:
    PhaseState last_;
};

// Dense time series of one particle: states and derivatives at accepted
// steps (the terminal event-located state appended), plus the outcome.
struct Trajectory {
    std::vector<PhaseState> samples;
    std::vector<StateDerivative> derivs;  // aligned with samples
    Outcome outcome = Timeout{};
    std::size_t n_accepted = 0;
    std::size_t n_rejected = 0;

    double t_begin() const { return samples.front().t; }
    double t_end() const { return samples.back().t; }
};

// Advances the slit-system flow from st0 until the first of: screen
// crossing (Arrival), return through the source plane (Reflected), or
// t = t_max (Timeout). Event times are located on the dense interpolant to
// |dt| < 1e-12. Throws stiffness_error when the step size underflows.
Trajectory integrate(const PhaseState& st0, const PhysParams& p, const IntegratorConfig& cfg);

// Cubic Hermite evaluation between adjacent samples; exact at sample times.
// Throws std::out_of_range outside the trajectory's time span.
PhaseState interpolate(const Trajectory& traj, double t);

// |H(end) - H(begin)| / |H(begin)| along the trajectory.
double energy_drift(const Trajectory& traj, const PhysParams& p);

// internal layout shared with the ensemble and analysis code
Vec<8> pack_state(const PhaseState& st);
PhaseState unpack_state(double t, const Vec<8>& y);
StateDerivative unpack_derivative(const Vec<8>& f);

}  // namespace qslit
