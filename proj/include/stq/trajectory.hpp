#pragma once

#include <vector>

#include "stq/exp_sum.hpp"
#include "stq/graded_poly.hpp"
#include "stq/rational.hpp"

namespace stq {

// v(x, y) = 1/2 (x^2 + b^2 y^2) + (param) U(x, y). The flavor fixes how the
// strength of U scales with g: mu sits inside v, eps = g^2 mu and
// lambda = g mu enter the quantum hierarchy at lower g order.
struct PotentialSpec {
  Rational b;
  GradedPoly U;
  Param flavor = Param::mu;

  // b > 0, U parameter-free with no constant term and even exponents.
  void validate() const;

  static PotentialSpec quartic_coupling(const Rational& b, Param flavor);  // U = x^2 y^2
};

// Classical trajectory of the inverted potential, expanded in mu around
// x0 = c_x e^t, y0 = c_y e^{bt}. x_series[n] / y_series[n] hold the mu^n
// parts. cx_hat, cy_hat are c_x e^{T} and c_y e^{bT} as series in the
// endpoint (x_T, y_T), empty until invert_endpoint_constants runs.
struct Trajectory {
  Rational b;
  int order = 0;
  std::vector<ExpSum> x_series;
  std::vector<ExpSum> y_series;
  GradedPoly cx_hat;
  GradedPoly cy_hat;
  bool inverted = false;

  ExpSum x() const;
  ExpSum y() const;
};

// Solves x'' = dv/dx, y'' = dv/dy order by order with growing exponentials
// only. Harmonic (order 0) for eps and lambda flavors regardless of U.
Trajectory solve_classical_trajectory(const PotentialSpec& spec, int order);

// Fills cx_hat, cy_hat by fixed-point reversion of (x, y)(T) = (x_T, y_T).
Trajectory invert_endpoint_constants(Trajectory traj);

// x(T), y(T) re-expressed through the inverted constants; equals (x, y)
// through the trajectory order when the inversion is correct.
std::pair<GradedPoly, GradedPoly> endpoint_round_trip(const Trajectory& traj);

ExpSum restrict_to_trajectory(const GradedPoly& p, const Trajectory& traj, int max_ep);
GradedPoly evaluate_at_endpoint(const ExpSum& e, const Trajectory& traj, int max_ep);

// S0 = integral_{-inf}^{T} [1/2 (x'^2 + y'^2) + v] dt along the trajectory.
GradedPoly action_integral(const PotentialSpec& spec, const Trajectory& traj);

// 1/2 (x'^2 + y'^2) - v along the trajectory, kept through max_ep
// (defaults to traj.order + 1).
ExpSum energy_conservation_residual(const PotentialSpec& spec, const Trajectory& traj, int max_ep = -1);

// x'' - dv/dx and y'' - dv/dy along the trajectory through traj.order.
std::pair<ExpSum, ExpSum> equation_of_motion_residual(const PotentialSpec& spec, const Trajectory& traj);

}  // namespace stq
