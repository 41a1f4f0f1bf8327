#include "stq/hierarchy.hpp"

#include "stq/errors.hpp"

namespace stq {

EnergySplit extract_energy(const ExpSum& rhs_on_trajectory) {
  EnergySplit out{GradedPoly(rhs_on_trajectory.param()), rhs_on_trajectory.nonconstant_part()};
  const ExpSum constant = rhs_on_trajectory.constant_part();
  for (const auto& [key, c] : constant.terms()) {
    if (key.p != 0 || key.q != 0) {
      throw ResidualTimeDependence("extract_energy: constant-rate term depends on c_x, c_y");
    }
    out.energy.add_term(Monomial{key.ep, key.gp, 0, 0}, c);
  }
  return out;
}

LevelQuadrature quadrature(const GradedPoly& rhs, const Trajectory& traj, int max_ep) {
  const ExpSum along = restrict_to_trajectory(rhs, traj, max_ep);
  EnergySplit split = extract_energy(along);
  if (split.energy != rhs.truncated(max_ep).constant_part()) {
    throw SingularIntegral("quadrature: constant-term extraction disagrees with the value at q = 0");
  }
  GradedPoly sol = evaluate_at_endpoint(integrate_to_T(split.remainder), traj, max_ep);
  return {std::move(split.energy), std::move(sol).with_param(rhs.param())};
}

GradedPoly exponential_rhs(const std::vector<GradedPoly>& S, int n, int max_ep) {
  GradedPoly r = laplacian(S[n]) * Rational(1, 2);
  GradedPoly cross(S[n].param());
  for (int i = 1; i <= n; ++i) {
    const int j = n + 1 - i;
    if (j < 1 || j > n) continue;
    cross += grad_dot(S[i], S[j], max_ep);
  }
  r -= cross * Rational(1, 2);
  return r.truncated(max_ep);
}

SeriesSolution solve_exponential_problem(const ExponentialProblem& pr) {
  if (pr.trajectory == nullptr || !pr.trajectory->inverted) {
    throw InvalidArgument("exponential hierarchy needs an inverted trajectory");
  }
  if (pr.order < 0) throw InvalidArgument("perturbation order must be >= 0");
  if (pr.depth < 0) throw InvalidArgument("g depth must be >= 0");
  const int levels = pr.depth + 1;

  SeriesSolution sol;
  sol.kind = SolutionKind::exponential;
  sol.flavor = pr.flavor;
  sol.b = pr.b;
  sol.order = pr.order;
  sol.depth = pr.depth;
  sol.exponent.push_back(pr.s0.truncated(pr.order).with_param(pr.flavor));

  for (int n = 0; n <= levels; ++n) {
    GradedPoly rhs = exponential_rhs(sol.exponent, n, pr.order);
    if (n == pr.perturbation_level) rhs += pr.perturbation.truncated(pr.order);
    rhs = rhs.with_param(pr.flavor);
    if (n == levels) {
      // Last energy needs only the value at the origin.
      sol.energies.push_back(rhs.constant_part());
      break;
    }
    LevelQuadrature q = quadrature(rhs, *pr.trajectory, pr.order);
    sol.energies.push_back(std::move(q.value_at_origin));
    sol.exponent.push_back(std::move(q.solution));
  }
  return sol;
}

SeriesSolution solve_hierarchy(const PotentialSpec& spec, const Trajectory& traj, int depth) {
  spec.validate();
  if (spec.flavor != Param::mu) throw InvalidArgument("solve_hierarchy: potential must use the mu flavor");
  if (!traj.inverted) throw InvalidArgument("solve_hierarchy: trajectory endpoint constants not inverted");
  ExponentialProblem pr;
  pr.s0 = action_integral(spec, traj);
  pr.trajectory = &traj;
  pr.perturbation = GradedPoly(Param::mu);
  pr.perturbation_level = -1;
  pr.flavor = Param::mu;
  pr.b = spec.b;
  pr.order = traj.order;
  pr.depth = depth;
  SeriesSolution sol = solve_exponential_problem(pr);
  sol.method = "hierarchy";
  return sol;
}

SeriesSolution solve_hierarchy(const PotentialSpec& spec, int order, int depth) {
  const Trajectory traj = invert_endpoint_constants(solve_classical_trajectory(spec, order));
  return solve_hierarchy(spec, traj, depth);
}

std::vector<GradedPoly> hierarchy_pde_residuals(const SeriesSolution& sol, const PotentialSpec& spec) {
  if (sol.kind != SolutionKind::exponential) {
    throw InvalidArgument("hierarchy_pde_residuals: exponential-kind solution required");
  }
  const Param f = sol.flavor;
  const int n_max = sol.order;
  const GradedPoly u = spec.U.with_param(f).shifted(0, 1);
  const GradedPoly x = GradedPoly::x(f);
  const GradedPoly y = GradedPoly::y(f);
  const Rational b2 = sol.b * sol.b;
  GradedPoly two_v = x * x + b2 * (y * y);
  if (f == Param::mu) two_v += u * Rational(2);
  const int pert_level = f == Param::eps ? 1 : (f == Param::lambda ? 0 : -1);

  std::vector<GradedPoly> res;
  const GradedPoly& s0 = sol.exponent.at(0);
  res.push_back((grad_dot(s0, s0, n_max) - two_v).truncated(n_max));
  for (std::size_t n = 0; n + 1 < sol.exponent.size(); ++n) {
    GradedPoly rhs = exponential_rhs(sol.exponent, static_cast<int>(n), n_max);
    if (static_cast<int>(n) == pert_level) rhs += u.truncated(n_max);
    rhs -= sol.energies.at(n);
    res.push_back((grad_dot(s0, sol.exponent[n + 1], n_max) - rhs).truncated(n_max));
  }
  return res;
}

AssembledState assemble_wavefunction(const SeriesSolution& sol) {
  AssembledState st;
  st.log_phi = -exponent_total(sol);
  st.chi = sol.kind == SolutionKind::polynomial ? chi_total(sol) : GradedPoly::constant(1, sol.flavor);
  st.energy = energy_total(sol);
  return st;
}

double evaluate_energy(const SeriesSolution& sol, double g, double param) {
  return energy_total(sol).evaluate(g, param, 0.0, 0.0);
}

}  // namespace stq
