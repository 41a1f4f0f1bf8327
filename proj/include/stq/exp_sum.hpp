#pragma once

#include <compare>
#include <map>
#include <span>
#include <string>

#include "stq/graded_poly.hpp"
#include "stq/rational.hpp"

namespace stq {

// Key of one term r * g^gp * (param)^ep * c_x^p c_y^q * e^{(k + l b) t}.
struct ExpKey {
  int ep = 0;
  int gp = 0;
  int p = 0;
  int q = 0;
  int k = 0;
  int l = 0;

  friend auto operator<=>(const ExpKey&, const ExpKey&) = default;
};

// Finite sum of exponentials in trajectory time t with coefficients that
// are monomials in the integration constants (c_x, c_y). b is fixed per
// instance; all operands of a binary operation must share it.
class ExpSum {
 public:
  using Terms = std::map<ExpKey, Rational>;

  explicit ExpSum(Rational b = 1, Param param = Param::mu) : b_(std::move(b)), param_(param) {}

  static ExpSum term(const Rational& c, const ExpKey& key, const Rational& b, Param param = Param::mu);

  const Rational& b() const { return b_; }
  Param param() const { return param_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const ExpKey& key, const Rational& c);
  Rational coefficient(const ExpKey& key) const;

  // k + l*b for a key.
  Rational rate(const ExpKey& key) const;

  ExpSum param_order(int ep) const;
  ExpSum truncated(int max_ep) const;
  ExpSum shifted(int dgp, int dep) const;
  int max_ep() const;

  // Every term satisfies (k, l) == (p, q).
  bool is_homogeneous() const;

  // Splits off the k = l = 0 terms.
  ExpSum constant_part() const;
  ExpSum nonconstant_part() const;

  ExpSum derivative_t() const;

  std::string to_string() const;

  ExpSum& operator+=(const ExpSum& o);
  ExpSum& operator-=(const ExpSum& o);
  ExpSum& operator*=(const Rational& c);
  friend ExpSum operator+(ExpSum a, const ExpSum& b) { return a += b; }
  friend ExpSum operator-(ExpSum a, const ExpSum& b) { return a -= b; }
  friend ExpSum operator*(ExpSum a, const Rational& c) { return a *= c; }
  friend ExpSum operator*(const Rational& c, ExpSum a) { return a *= c; }
  friend ExpSum operator*(const ExpSum& a, const ExpSum& b) { return multiply(a, b, -1); }
  friend bool operator==(const ExpSum& a, const ExpSum& b) {
    return a.b_ == b.b_ && a.terms_ == b.terms_;
  }

  static ExpSum multiply(const ExpSum& a, const ExpSum& b, int max_ep);

 private:
  void check_compatible(const ExpSum& o) const;

  Rational b_;
  Param param_;
  Terms terms_;
};

// Substitutes x(t) = sum_n x_series[n], y(t) = sum_n y_series[n] into `p`
// and keeps parameter powers <= max_ep. Entry n of each series holds the
// terms of parameter power n.
ExpSum restrict_to_trajectory(const GradedPoly& p, std::span<const ExpSum> x_series,
                              std::span<const ExpSum> y_series, int max_ep);

// Integral from -inf to T of every term; the result keeps the same
// representation with t read as T. Throws SingularIntegral on k = l = 0.
ExpSum integrate_to_T(const ExpSum& e);

// Sets t = T and substitutes c_x e^{T} -> cx_hat, c_y e^{bT} -> cy_hat.
// Throws ResidualTimeDependence when a term is not homogeneous.
GradedPoly evaluate_at_endpoint(const ExpSum& e, const GradedPoly& cx_hat, const GradedPoly& cy_hat,
                                int max_ep);

}  // namespace stq
