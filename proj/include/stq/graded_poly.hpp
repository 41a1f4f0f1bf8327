#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>

#include "stq/rational.hpp"

namespace stq {

// Which perturbation parameter the `ep` exponent counts. The three are tied
// by eps = g^2 mu and lambda = g mu; `g_weight` is the power of g that the
// parameter carries relative to mu.
enum class Param { mu, eps, lambda };

int g_weight(Param p);
std::string_view to_string(Param p);
Param parse_param(std::string_view s);

// Monomial x^i y^j g^gp (param)^ep. Ordered lexicographically on
// (ep, gp, i, j), which is also the canonical print order.
struct Monomial {
  int ep = 0;
  int gp = 0;
  int i = 0;
  int j = 0;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

// Exact polynomial in (x, y) whose coefficients are Laurent in g and
// polynomial in the perturbation parameter. Zero coefficients are never
// stored, so structural equality is mathematical equality.
class GradedPoly {
 public:
  using Terms = std::map<Monomial, Rational>;

  explicit GradedPoly(Param param = Param::mu) : param_(param) {}

  static GradedPoly constant(const Rational& c, Param param = Param::mu);
  static GradedPoly monomial(const Rational& c, int i, int j, int gp = 0, int ep = 0,
                             Param param = Param::mu);
  static GradedPoly x(Param param = Param::mu) { return monomial(1, 1, 0, 0, 0, param); }
  static GradedPoly y(Param param = Param::mu) { return monomial(1, 0, 1, 0, 0, param); }

  Param param() const { return param_; }
  // Retags without touching exponents. Only meaningful for parameter-free
  // polynomials or when the caller knows the tags coincide.
  GradedPoly with_param(Param p) const;

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Monomial& m, const Rational& c);
  Rational coefficient(const Monomial& m) const;
  Rational coefficient(int i, int j, int gp = 0, int ep = 0) const {
    return coefficient(Monomial{ep, gp, i, j});
  }

  // Parameter-free x^0 y^0 part and its complement.
  GradedPoly constant_part() const;
  GradedPoly nonconstant_part() const;
  bool has_constant_term() const;

  // Terms with parameter power exactly `ep` / at most `max_ep`.
  GradedPoly param_order(int ep) const;
  GradedPoly truncated(int max_ep) const;
  GradedPoly g_order(int gp) const;

  // Multiplies every term by g^dgp (param)^dep.
  GradedPoly shifted(int dgp, int dep) const;
  // Re-expresses the grading in terms of another parameter.
  GradedPoly regraded(Param target) const;

  GradedPoly derivative_x() const;
  GradedPoly derivative_y() const;

  int max_ep() const;   // -1 when zero
  int max_degree() const;  // total x,y degree; -1 when zero
  bool all_exponents_even() const;

  // f(x, y) with x,y scaled; used for numeric evaluation at reporting time.
  double evaluate(double g, double param, double x, double y) const;

  std::string to_string() const;

  GradedPoly& operator+=(const GradedPoly& o);
  GradedPoly& operator-=(const GradedPoly& o);
  GradedPoly& operator*=(const Rational& c);

  friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
  friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
  friend GradedPoly operator-(GradedPoly a) { return a *= Rational(-1); }
  friend GradedPoly operator*(GradedPoly a, const Rational& c) { return a *= c; }
  friend GradedPoly operator*(const Rational& c, GradedPoly a) { return a *= c; }
  friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) { return multiply(a, b, -1); }
  friend bool operator==(const GradedPoly& a, const GradedPoly& b) {
    return a.terms_ == b.terms_ && (a.param_ == b.param_ || a.max_ep() <= 0);
  }

  // Product keeping only parameter powers <= max_ep (no truncation when
  // max_ep < 0).
  static GradedPoly multiply(const GradedPoly& a, const GradedPoly& b, int max_ep);

 private:
  Param merged_param(const GradedPoly& o) const;

  Terms terms_;
  Param param_;
};

// Integer power with parameter truncation.
GradedPoly power(const GradedPoly& p, int n, int max_ep);

GradedPoly laplacian(const GradedPoly& p);
GradedPoly grad_dot(const GradedPoly& p, const GradedPoly& q, int max_ep = -1);

}  // namespace stq
