#include "stq/perturbation.hpp"

#include "stq/errors.hpp"
#include "stq/hierarchy.hpp"

namespace stq {

namespace {

void check_flavor(Param flavor) {
  if (flavor == Param::mu) {
    throw InvalidArgument("perturbative expansion needs the eps or lambda flavor; use solve_hierarchy for mu");
  }
}

void check_orders(const ExpansionOrders& o) {
  if (o.order < 0) throw InvalidArgument("perturbation order must be >= 0");
  if (o.depth < 0) throw InvalidArgument("g depth must be >= 0");
}

int perturbation_level(Param flavor) { return flavor == Param::eps ? 1 : 0; }

ExponentialProblem harmonic_problem(const PotentialSpec& spec, Param flavor, const ExpansionOrders& o,
                                    const Trajectory& traj) {
  PotentialSpec harmonic = spec;
  harmonic.flavor = flavor;
  ExponentialProblem pr;
  pr.s0 = action_integral(harmonic, traj).with_param(flavor);
  pr.trajectory = &traj;
  pr.perturbation = spec.U.with_param(flavor).shifted(0, 1);
  pr.perturbation_level = perturbation_level(flavor);
  pr.flavor = flavor;
  pr.b = spec.b;
  pr.order = o.order;
  pr.depth = o.depth;
  return pr;
}

Trajectory harmonic_trajectory(const PotentialSpec& spec, Param flavor) {
  PotentialSpec h = spec;
  h.flavor = flavor;
  return invert_endpoint_constants(solve_classical_trajectory(h, 0));
}

// Right-hand side of the chi_k equation before the energy E_k is added:
// grad S0 . grad chi_k = R_k + E_k.
GradedPoly polynomial_rhs(const SeriesSolution& sol, const GradedPoly& g0_perturbation, const GradedPoly& q,
                          int k, int max_ep) {
  const GradedPoly& s1 = sol.exponent.at(1);
  const GradedPoly& prev = sol.chi.at(k - 1);
  GradedPoly r = laplacian(prev) * Rational(1, 2);
  r -= grad_dot(s1, prev, max_ep);
  r -= GradedPoly::multiply(q + g0_perturbation, prev, max_ep);
  for (int a = 1; a <= k - 1; ++a) {
    r += GradedPoly::multiply(sol.energies.at(a), sol.chi.at(k - a), max_ep);
  }
  return r.truncated(max_ep);
}

GradedPoly s1_potential(const GradedPoly& s1, int max_ep) {
  // 1/2 lap S1 - 1/2 (grad S1)^2
  return ((laplacian(s1) - grad_dot(s1, s1, max_ep)) * Rational(1, 2)).truncated(max_ep);
}

}  // namespace

int matching_depth(Param flavor, int order, int mu_depth) {
  return mu_depth + order * g_weight(flavor);
}

SeriesSolution solve_exponential(const PotentialSpec& spec, Param flavor, ExpansionOrders orders) {
  spec.validate();
  check_flavor(flavor);
  check_orders(orders);
  const Trajectory traj = harmonic_trajectory(spec, flavor);
  SeriesSolution sol = solve_exponential_problem(harmonic_problem(spec, flavor, orders, traj));
  sol.method = flavor == Param::eps ? "exp-eps" : "exp-lambda";
  return sol;
}

SeriesSolution solve_polynomial(const PotentialSpec& spec, Param flavor, ExpansionOrders orders) {
  spec.validate();
  check_flavor(flavor);
  check_orders(orders);
  const Trajectory traj = harmonic_trajectory(spec, flavor);

  // S0, S1 and E0 come from the first rung of the exponential hierarchy.
  ExpansionOrders first = orders;
  first.depth = 0;
  ExponentialProblem pr = harmonic_problem(spec, flavor, first, traj);
  const SeriesSolution head = solve_exponential_problem(pr);

  SeriesSolution sol;
  sol.method = flavor == Param::eps ? "poly-eps" : "poly-lambda";
  sol.kind = SolutionKind::polynomial;
  sol.flavor = flavor;
  sol.b = spec.b;
  sol.order = orders.order;
  sol.depth = orders.depth;
  sol.exponent = {head.exponent.at(0), head.exponent.at(1)};
  sol.energies = {head.energies.at(0)};
  sol.chi = {GradedPoly::constant(1, flavor)};

  const int n = orders.order;
  const GradedPoly q = s1_potential(sol.exponent[1], n);
  const GradedPoly p0 = flavor == Param::eps ? spec.U.with_param(flavor).shifted(0, 1).truncated(n)
                                             : GradedPoly(flavor);
  for (int k = 1; k <= orders.depth + 1; ++k) {
    const GradedPoly rhs = polynomial_rhs(sol, p0, q, k, n).with_param(flavor);
    if (k == orders.depth + 1) {
      sol.energies.push_back(-rhs.constant_part());
      break;
    }
    LevelQuadrature lq = quadrature(rhs, traj, n);
    sol.energies.push_back(-lq.value_at_origin);
    sol.chi.push_back(std::move(lq.solution));
  }
  return sol;
}

std::vector<GradedPoly> polynomial_pde_residuals(const SeriesSolution& sol, const PotentialSpec& spec) {
  if (sol.kind != SolutionKind::polynomial) {
    throw InvalidArgument("polynomial_pde_residuals: polynomial-kind solution required");
  }
  const int n = sol.order;
  const GradedPoly q = s1_potential(sol.exponent.at(1), n);
  const GradedPoly p0 = sol.flavor == Param::eps ? spec.U.with_param(sol.flavor).shifted(0, 1).truncated(n)
                                                 : GradedPoly(sol.flavor);
  std::vector<GradedPoly> res;
  for (std::size_t k = 1; k < sol.chi.size(); ++k) {
    const GradedPoly rhs = polynomial_rhs(sol, p0, q, static_cast<int>(k), n) + sol.energies.at(k);
    res.push_back((grad_dot(sol.exponent[0], sol.chi[k], n) - rhs).truncated(n));
  }
  return res;
}

namespace {

constexpr int kFar = 1 << 28;

// Trust bookkeeping for exp/log of a series. Input terms g^{-k} p^ep are
// exact for k <= depth + slope * ep. A product slot (ep, k) is exact when no
// inexact input term can reach it: an inexact factor at ep_i times trusted
// factors of total order ep - ep_i lands at k > depth + slope * ep_i +
// reach[ep - ep_i], with reach[e] the smallest k trusted products attain at
// order e.
class ProductWindow {
 public:
  ProductWindow(const SeriesSolution& sol, const GradedPoly& factors) : max_ep_(sol.order) {
    if (!sol.depth) return;
    bounded_ = true;
    depth_ = *sol.depth;
    slope_ = sol.window_slope;
    std::vector<int> reach(max_ep_ + 1, kFar);
    reach[0] = 0;
    std::vector<int> single(max_ep_ + 1, kFar);
    for (const auto& [m, c] : factors.terms()) {
      if (m.ep >= 1 && m.ep <= max_ep_ && input_trusted(m)) single[m.ep] = std::min(single[m.ep], -m.gp);
    }
    for (int e = 1; e <= max_ep_; ++e) {
      reach[e] = single[e];
      for (int a = 1; a < e; ++a) reach[e] = std::min(reach[e], reach[a] + reach[e - a]);
    }
    bound_.resize(max_ep_ + 1);
    for (int e = 0; e <= max_ep_; ++e) {
      int lo = kFar;
      for (int i = 0; i <= e; ++i) lo = std::min(lo, slope_ * i + reach[e - i]);
      bound_[e] = depth_ + lo;
    }
    // the largest linear window under the bound, which is what the output
    // solution can declare
    out_slope_ = slope_;
    for (int e = 1; e <= max_ep_; ++e) {
      const int d = bound_[e] - depth_;
      out_slope_ = std::min(out_slope_, d >= 0 ? d / e : -((-d + e - 1) / e));
    }
  }

  bool bounded() const { return bounded_; }
  bool input_trusted(const Monomial& m) const { return !bounded_ || -m.gp <= depth_ + slope_ * m.ep; }
  bool keeps(const Monomial& m) const {
    if (m.ep > max_ep_) return false;
    if (!bounded_) return true;
    return -m.gp <= depth_ + out_slope_ * m.ep;
  }
  GradedPoly inputs(const GradedPoly& p) const {
    GradedPoly r(p.param());
    for (const auto& [m, c] : p.terms()) {
      if (m.ep <= max_ep_ && input_trusted(m)) r.add_term(m, c);
    }
    return r;
  }
  GradedPoly trim(const GradedPoly& p) const {
    GradedPoly r(p.param());
    for (const auto& [m, c] : p.terms()) {
      if (keeps(m)) r.add_term(m, c);
    }
    return r;
  }
  int out_slope() const { return out_slope_; }
  // Highest g^{-k} level the output can hold.
  int top_level() const {
    int top = 0;
    for (int e = 0; e <= max_ep_; ++e) top = std::max(top, depth_ + out_slope_ * e);
    return top;
  }

 private:
  bool bounded_ = false;
  int max_ep_;
  int depth_ = 0;
  int slope_ = 0;
  int out_slope_ = 0;
  std::vector<int> bound_;
};

void check_terminates(const GradedPoly& p, const SeriesSolution& sol, const char* what) {
  if (sol.depth) return;
  for (const auto& [m, c] : p.terms()) {
    if (m.ep == 0) throw InvalidArgument(std::string(what) + " series does not terminate");
  }
}

}  // namespace

SeriesSolution exp_to_poly(const SeriesSolution& sol) {
  if (sol.kind != SolutionKind::exponential) throw InvalidArgument("exp_to_poly: exponential-kind input required");
  if (sol.exponent.size() < 2) throw InvalidArgument("exp_to_poly: need at least S0 and S1");
  // Z = -sum_{i>=2} g^{1-i} S_i; chi = exp(Z).
  GradedPoly z(sol.flavor);
  for (std::size_t i = 2; i < sol.exponent.size(); ++i) z -= sol.exponent[i].shifted(1 - static_cast<int>(i), 0);
  check_terminates(z, sol, "exp_to_poly: exponential");
  const ProductWindow win(sol, z);
  z = win.inputs(z);

  GradedPoly chi = GradedPoly::constant(1, sol.flavor);
  GradedPoly term = chi;
  for (int j = 1;; ++j) {
    term = win.trim(GradedPoly::multiply(term, z, sol.order)) * Rational(1, j);
    if (term.is_zero()) break;
    chi += term;
  }

  SeriesSolution out = sol;
  out.kind = SolutionKind::polynomial;
  out.exponent = {sol.exponent[0], sol.exponent[1]};
  out.chi = split_levels(chi, 0, sol.flavor);
  if (out.chi.empty()) out.chi.push_back(GradedPoly(sol.flavor));
  if (win.bounded()) {
    out.window_slope = win.out_slope();
    out.chi.resize(win.top_level() + 1, GradedPoly(sol.flavor));
  }
  out.depth = sol.depth ? std::optional<int>(std::max(0, *sol.depth)) : std::nullopt;
  return out;
}

SeriesSolution poly_to_exp(const SeriesSolution& sol) {
  if (sol.kind != SolutionKind::polynomial) throw InvalidArgument("poly_to_exp: polynomial-kind input required");
  const GradedPoly chi = chi_total(sol);
  if (chi.constant_part() != GradedPoly::constant(1, sol.flavor)) {
    throw InvalidArgument("poly_to_exp: chi must be normalized to chi(0) = 1");
  }
  GradedPoly u = chi - GradedPoly::constant(1, sol.flavor);
  check_terminates(u, sol, "poly_to_exp: logarithm");
  const ProductWindow win(sol, u);
  u = win.inputs(u);
  // -log(1 + u) = sum_j (-1)^j u^j / j
  GradedPoly minus_log(sol.flavor);
  GradedPoly upow = GradedPoly::constant(1, sol.flavor);
  for (int j = 1;; ++j) {
    upow = win.trim(GradedPoly::multiply(upow, u, sol.order));
    if (upow.is_zero()) break;
    minus_log += upow * Rational(j % 2 == 0 ? 1 : -1, j);
  }

  SeriesSolution out = sol;
  out.kind = SolutionKind::exponential;
  out.chi.clear();
  GradedPoly w = sol.exponent.at(0).shifted(1, 0) + sol.exponent.at(1) + minus_log;
  out.exponent = split_levels(w.with_param(sol.flavor), 1, sol.flavor);
  if (out.exponent.size() < 2) out.exponent.resize(2, GradedPoly(sol.flavor));
  if (win.bounded()) {
    out.window_slope = win.out_slope();
    out.exponent.resize(std::max<std::size_t>(out.exponent.size(), win.top_level() + 2), GradedPoly(sol.flavor));
  }
  return out;
}

SeriesSolution normalize_grading(const SeriesSolution& sol, Param target) {
  SeriesSolution e = sol.kind == SolutionKind::polynomial ? poly_to_exp(sol) : sol;
  if (e.flavor == target) return e;
  const int dw = g_weight(e.flavor) - g_weight(target);
  const GradedPoly w = exponent_total(e).regraded(target);
  const GradedPoly en = energy_total(e).regraded(target);
  SeriesSolution out = e;
  out.flavor = target;
  out.window_slope = e.window_slope - dw;
  out.exponent = split_levels(w, 1, target);
  out.energies = split_levels(en, 1, target);
  return out;
}

}  // namespace stq
