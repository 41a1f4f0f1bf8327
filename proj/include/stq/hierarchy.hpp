#pragma once

#include <optional>
#include <vector>

#include "stq/exp_sum.hpp"
#include "stq/graded_poly.hpp"
#include "stq/series_solution.hpp"
#include "stq/trajectory.hpp"

namespace stq {

struct EnergySplit {
  GradedPoly energy;  // graded constant (x^0 y^0) part
  ExpSum remainder;   // strictly growing exponentials
};

// Splits the k = l = 0 part off a right-hand side restricted to the
// trajectory. Because the trajectory leaves the origin at t = -inf, that
// part is the right-hand side evaluated at q = 0.
EnergySplit extract_energy(const ExpSum& rhs_on_trajectory);

struct LevelQuadrature {
  GradedPoly value_at_origin;
  GradedPoly solution;  // F with grad S0 . grad F = rhs - rhs(0), F(0) = 0
};

// One rung of the hierarchy: restrict, split off the constant, integrate
// from -inf to T, evaluate at the endpoint.
LevelQuadrature quadrature(const GradedPoly& rhs, const Trajectory& traj, int max_ep);

// Describes where the perturbation enters the exponential hierarchy. A
// level of -1 means it is folded into v and hence into S0.
struct ExponentialProblem {
  GradedPoly s0;
  const Trajectory* trajectory = nullptr;
  GradedPoly perturbation;  // already carries its parameter power
  int perturbation_level = -1;
  Param flavor = Param::mu;
  Rational b = 1;
  int order = 0;
  int depth = 0;
};

// Iterates grad S0 . grad S_{n+1} = 1/2 lap S_n - 1/2 sum' grad S_i . grad S_j
// + P_n - E_n for levels S_1..S_{depth+1}, energies E_0..E_{depth+1}.
SeriesSolution solve_exponential_problem(const ExponentialProblem& problem);

// Right-hand side of level n (without perturbation or energy).
GradedPoly exponential_rhs(const std::vector<GradedPoly>& S, int n, int max_ep);

// The mu-flavor engine: S0 from the action integral of the mu-corrected
// trajectory, then quadratures along it. traj must be inverted and solved
// for spec.flavor == mu; its order fixes the mu truncation.
SeriesSolution solve_hierarchy(const PotentialSpec& spec, const Trajectory& traj, int depth);

// Convenience: builds and inverts the trajectory first.
SeriesSolution solve_hierarchy(const PotentialSpec& spec, int order, int depth);

// Each equation of the exponential hierarchy re-checked in (x, y): entry 0 is
// (grad S0)^2 - 2v, entry n+1 is grad S0 . grad S_{n+1} minus its
// right-hand side. All entries vanish for a correct solution.
std::vector<GradedPoly> hierarchy_pde_residuals(const SeriesSolution& sol, const PotentialSpec& spec);

struct AssembledState {
  GradedPoly log_phi;  // -g S0 - S1 - g^{-1} S2 - ...
  GradedPoly chi;      // 1 for exponential kind
  GradedPoly energy;   // g E0 + E1 + g^{-1} E2 + ...
};

AssembledState assemble_wavefunction(const SeriesSolution& sol);

// Numeric energy at a parameter point, evaluated from the graded total.
double evaluate_energy(const SeriesSolution& sol, double g, double param);

}  // namespace stq
