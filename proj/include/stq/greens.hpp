#pragma once

#include <map>
#include <utility>
#include <vector>

#include "stq/graded_poly.hpp"
#include "stq/series_solution.hpp"
#include "stq/trajectory.hpp"

namespace stq {

// Operator calculus around the harmonic S0 = 1/2 (x^2 + b y^2), all
// polynomials graded in eps with explicit powers of g.
class GreensOperators {
 public:
  explicit GreensOperators(Rational b);

  const Rational& b() const { return b_; }

  // C x^{2l} y^{2m} = x^{2l} y^{2m} / (2 g (l + m b)).
  GradedPoly apply_C(const GradedPoly& p) const;
  // (-TC) p = 1/2 lap (C p); lowers the total degree by two.
  GradedPoly apply_minus_TC(const GradedPoly& p) const;
  // (1 + TC)^{-1} p = sum_n (-TC)^n p. Constants produced along the way are
  // kept but not fed into a further C.
  GradedPoly neumann_apply(const GradedPoly& p) const;

 private:
  void check_domain(const GradedPoly& p) const;

  Rational b_;
};

// A polynomial that still owes an outermost C. Its x^0 y^0 part must have
// been cancelled before the C can be taken.
struct OperatorTerm {
  GradedPoly poly;
  bool pending_c = true;
};

GradedPoly resolve(const OperatorTerm& t, const GreensOperators& ops);

enum class GammaKind {
  full_x,     // Gamma^1_{l,(x)}:   (-TC)^l x^{2l}
  full_y,     // Gamma^1_{m,(y)}:   (-TC)^m y^{2m}
  reduced_x,  // Gamma^{l-n}_{l,(x)}: C (-TC)^n x^{2l} = Gamma x^{2(l-n)}, n < l
  reduced_y,  // Gamma^{m-n}_{m,(y)}
  mixed,      // Gamma^{1,1}_{l,m}: (-TC)^{l+m} x^{2l} y^{2m}
};

// Returns the coefficient as a graded constant (explicit g power). `l`
// indexes x and `m` indexes y; the y kinds ignore `l`. For the reduced
// kinds `n` is the number of (-TC) steps.
GradedPoly gamma_coefficient(const GreensOperators& ops, GammaKind kind, int l, int m = 0, int n = 0);

// chi = 1 + sum_l alpha_l x^{2l} + sum_m beta_m y^{2m} + sum a_lm x^{2l} y^{2m};
// every coefficient is a graded constant holding all eps orders.
struct ChiAnsatz {
  std::map<int, GradedPoly> alpha;
  std::map<int, GradedPoly> beta;
  std::map<std::pair<int, int>, GradedPoly> a;
  std::vector<GradedPoly> delta;  // delta[k] = Delta(k), k >= 1; entry 0 unused
  int max_degree = 0;

  // Coefficient at eps^k only, as a g-graded constant.
  GradedPoly alpha_at(int l, int k) const;
  GradedPoly beta_at(int m, int k) const;
  GradedPoly a_at(int l, int m, int k) const;

  GradedPoly to_poly() const;
  static ChiAnsatz from_poly(const GradedPoly& chi, int max_degree);
};

struct GreenSolution {
  ChiAnsatz ansatz;
  SeriesSolution series;
};

// Order-by-order solve of chi = 1 + C (1 + TC)^{-1} eps (Delta - U) chi.
// max_degree bounds l + m; defaults to 2 * eps_order when < 0.
GreenSolution solve_green(const PotentialSpec& spec, int eps_order, int max_degree = -1);

}  // namespace stq
