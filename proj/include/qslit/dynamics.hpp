#pragma once

#include <qslit/model.hpp>
#include <qslit/potential.hpp>

#include <functional>

namespace qslit {

// Time derivatives of the eight PhaseState components.
struct StateDerivative {
    double dx = 0, dy = 0;
    double dpx = 0, dpy = 0;
    double dsx = 0, dpsx = 0;
    double dsy = 0, dpsy = 0;
};

static_assert(sizeof(StateDerivative) == 8 * sizeof(double),
              "no derivative slot for the Casimir: U is a constant of motion");

// Quantum-corrected Hamiltonian of the planar slit system:
//   (px^2 + psx^2)/2m + (py^2 + psy^2)/2m + U/(2m sx^2) + U/(2m sy^2)
//   + 1/4 * sum of V at the four displaced points (x +- sx, y +- sy).
double hamiltonian_2d(const PhaseState& st, const PhysParams& p);

// Analytic symplectic gradient of hamiltonian_2d:
//   dx = dH/dpx, dpx = -dH/dx, dsx = dH/dpsx, dpsx = -dH/dsx, same in y.
// The two barrier exponentials are evaluated once and shared across all
// force components.
StateDerivative rhs_2d(const PhaseState& st, const PhysParams& p);

// One-axis canonical state for the 1-D validation dynamics.
struct State1D {
    double x = 0, px = 0;
    double s = 0, ps = 0;
};

struct Derivative1D {
    double dx = 0, dpx = 0, ds = 0, dps = 0;
};

// (px^2 + ps^2)/2m + u/(2m s^2) + (V(x+s) + V(x-s))/2 for a validation potential.
double hamiltonian_1d(const State1D& st, double u, const PotentialKind& kind, const PhysParams& p);
Derivative1D rhs_1d(const State1D& st, double u, const PotentialKind& kind, const PhysParams& p);

using Rhs2DFn = std::function<StateDerivative(const PhaseState&, const PhysParams&)>;

// Max over the eight components of
//   |rhs_i - fd_i| / (1 + |rhs_i|)
// where fd is a fourth-order central difference of hamiltonian_2d arranged
// symplectically. Steps scale per component as h*(1 + |component|).
double grad_check(const PhaseState& st, const PhysParams& p, double h = 1e-4);

// Same check against an arbitrary candidate right-hand side (lets tests
// verify that a deliberately corrupted derivative is caught).
double grad_check_against(const Rhs2DFn& rhs, const PhaseState& st, const PhysParams& p,
                          double h = 1e-4);

}  // namespace qslit
