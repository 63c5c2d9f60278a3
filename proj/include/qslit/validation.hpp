#pragma once

#include <qslit/dynamics.hpp>
#include <qslit/integrate.hpp>
#include <qslit/model.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace qslit {

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0;
    double threshold = 0;
    std::string detail;
};

// Independent-oracle checks of the dynamics and integrator against finite
// differences and closed-form solutions. All thresholds are fixed here.
//
//   grad-random      rhs vs. Hamiltonian gradient, states around the beam   < 1e-5
//   grad-forcefree   same, far from the barrier                             < 1e-10
//   grad-barrier     same, inside the barrier region                        < 1e-5
//   energy-drift     relative H drift over a barrier crossing               < 1e-6
//   free-dispersion  s(t) vs sqrt(s0^2 + (U/m^2 s0^2) t^2), barrier off     < 1e-8
//   free-arrival     |t_hit - 0.15| for the force-free beam                 < 1e-9
//   harmonic-exact   1-D s(t)^2 vs the quadratic-potential closed form      < 1e-6
//   mirror-parity    y-antisymmetry of mirrored initial conditions          < 1e-8
//   on-axis          |y_hit| for the y0 = 0 particle                        < 1e-6
std::vector<CheckResult> validation_suite(const PhysParams& p, const IntegratorConfig& icfg,
                                          std::uint64_t seed = 20260809);

// Closed forms backing the checks (exposed for tests).
double free_dispersion(double s0, double u, double m, double t);
double harmonic_variance(double sigma0, double hbar, double m, double omega_h, double t);

// Largest grad_check value over n states drawn from the given coordinate
// ranges (uniform, seeded).
struct StateRanges {
    double x_lo, x_hi;
    double y_lo, y_hi;
    double px_lo, px_hi;
    double py_lo, py_hi;
    double s_lo, s_hi;
    double ps_lo, ps_hi;
};

double max_grad_error(const PhysParams& p, const StateRanges& r, int n, std::uint64_t seed);

}  // namespace qslit
