#include "stq/graded_poly.hpp"

#include <cmath>
#include <sstream>

#include "stq/errors.hpp"

namespace stq {

int g_weight(Param p) {
  switch (p) {
    case Param::mu: return 0;
    case Param::lambda: return 1;
    case Param::eps: return 2;
  }
  return 0;
}

std::string_view to_string(Param p) {
  switch (p) {
    case Param::mu: return "mu";
    case Param::eps: return "eps";
    case Param::lambda: return "lambda";
  }
  return "mu";
}

Param parse_param(std::string_view s) {
  if (s == "mu") return Param::mu;
  if (s == "eps") return Param::eps;
  if (s == "lambda") return Param::lambda;
  throw InvalidArgument("unknown parameter tag: " + std::string(s));
}

GradedPoly GradedPoly::constant(const Rational& c, Param param) {
  return monomial(c, 0, 0, 0, 0, param);
}

GradedPoly GradedPoly::monomial(const Rational& c, int i, int j, int gp, int ep, Param param) {
  GradedPoly p(param);
  p.add_term(Monomial{ep, gp, i, j}, c);
  return p;
}

GradedPoly GradedPoly::with_param(Param p) const {
  GradedPoly r = *this;
  r.param_ = p;
  return r;
}

void GradedPoly::add_term(const Monomial& m, const Rational& c) {
  if (m.i < 0 || m.j < 0 || m.ep < 0) {
    throw InvalidArgument("negative exponent in GradedPoly term");
  }
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational GradedPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

GradedPoly GradedPoly::constant_part() const {
  GradedPoly r(param_);
  for (const auto& [m, c] : terms_) {
    if (m.i == 0 && m.j == 0) r.terms_.emplace(m, c);
  }
  return r;
}

GradedPoly GradedPoly::nonconstant_part() const {
  GradedPoly r(param_);
  for (const auto& [m, c] : terms_) {
    if (m.i != 0 || m.j != 0) r.terms_.emplace(m, c);
  }
  return r;
}

bool GradedPoly::has_constant_term() const {
  for (const auto& [m, c] : terms_) {
    if (m.i == 0 && m.j == 0) return true;
  }
  return false;
}

GradedPoly GradedPoly::param_order(int ep) const {
  GradedPoly r(param_);
  for (const auto& [m, c] : terms_) {
    if (m.ep == ep) r.terms_.emplace(m, c);
  }
  return r;
}

GradedPoly GradedPoly::truncated(int max_ep) const {
  if (max_ep < 0) return *this;
  GradedPoly r(param_);
  for (const auto& [m, c] : terms_) {
    if (m.ep <= max_ep) r.terms_.emplace(m, c);
  }
  return r;
}

GradedPoly GradedPoly::g_order(int gp) const {
  GradedPoly r(param_);
  for (const auto& [m, c] : terms_) {
    if (m.gp == gp) r.terms_.emplace(m, c);
  }
  return r;
}

GradedPoly GradedPoly::shifted(int dgp, int dep) const {
  GradedPoly r(param_);
  for (const auto& [m, c] : terms_) {
    r.add_term(Monomial{m.ep + dep, m.gp + dgp, m.i, m.j}, c);
  }
  return r;
}

GradedPoly GradedPoly::regraded(Param target) const {
  const int dw = g_weight(param_) - g_weight(target);
  GradedPoly r(target);
  for (const auto& [m, c] : terms_) {
    r.terms_.emplace(Monomial{m.ep, m.gp + m.ep * dw, m.i, m.j}, c);
  }
  return r;
}

GradedPoly GradedPoly::derivative_x() const {
  GradedPoly r(param_);
  for (const auto& [m, c] : terms_) {
    if (m.i == 0) continue;
    r.add_term(Monomial{m.ep, m.gp, m.i - 1, m.j}, c * m.i);
  }
  return r;
}

GradedPoly GradedPoly::derivative_y() const {
  GradedPoly r(param_);
  for (const auto& [m, c] : terms_) {
    if (m.j == 0) continue;
    r.add_term(Monomial{m.ep, m.gp, m.i, m.j - 1}, c * m.j);
  }
  return r;
}

int GradedPoly::max_ep() const {
  int e = -1;
  for (const auto& [m, c] : terms_) e = std::max(e, m.ep);
  return e;
}

int GradedPoly::max_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.i + m.j);
  return d;
}

bool GradedPoly::all_exponents_even() const {
  for (const auto& [m, c] : terms_) {
    if (m.i % 2 != 0 || m.j % 2 != 0) return false;
  }
  return true;
}

double GradedPoly::evaluate(double g, double param, double x, double y) const {
  double s = 0.0;
  for (const auto& [m, c] : terms_) {
    s += to_double(c) * std::pow(g, m.gp) * std::pow(param, m.ep) * std::pow(x, m.i) * std::pow(y, m.j);
  }
  return s;
}

std::string GradedPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool neg = c < 0;
    const Rational a = neg ? Rational(-c) : c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    const bool unit = a == 1 && (m.i + m.j + m.ep != 0 || m.gp != 0);
    bool need_star = false;
    if (!unit) {
      os << stq::to_string(a);
      need_star = true;
    }
    auto factor = [&](std::string_view sym, int e) {
      if (e == 0) return;
      if (need_star) os << "*";
      os << sym;
      if (e != 1) os << "^" << e;
      need_star = true;
    };
    factor(stq::to_string(param_), m.ep);
    factor("g", m.gp);
    factor("x", m.i);
    factor("y", m.j);
  }
  return os.str();
}

Param GradedPoly::merged_param(const GradedPoly& o) const {
  if (param_ == o.param_) return param_;
  const bool mine = max_ep() > 0;
  const bool theirs = o.max_ep() > 0;
  if (mine && theirs) {
    throw InvalidArgument("mixing polynomials graded in different parameters");
  }
  return theirs ? o.param_ : param_;
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& o) {
  param_ = merged_param(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& o) {
  param_ = merged_param(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

GradedPoly& GradedPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

GradedPoly GradedPoly::multiply(const GradedPoly& a, const GradedPoly& b, int max_ep) {
  GradedPoly r(a.merged_param(b));
  for (const auto& [ma, ca] : a.terms_) {
    if (max_ep >= 0 && ma.ep > max_ep) continue;
    for (const auto& [mb, cb] : b.terms_) {
      const int ep = ma.ep + mb.ep;
      if (max_ep >= 0 && ep > max_ep) continue;
      r.add_term(Monomial{ep, ma.gp + mb.gp, ma.i + mb.i, ma.j + mb.j}, ca * cb);
    }
  }
  return r;
}

GradedPoly power(const GradedPoly& p, int n, int max_ep) {
  if (n < 0) throw InvalidArgument("negative power of GradedPoly");
  GradedPoly r = GradedPoly::constant(1, p.param());
  for (int k = 0; k < n; ++k) r = GradedPoly::multiply(r, p, max_ep);
  return r;
}

GradedPoly laplacian(const GradedPoly& p) {
  return p.derivative_x().derivative_x() + p.derivative_y().derivative_y();
}

GradedPoly grad_dot(const GradedPoly& p, const GradedPoly& q, int max_ep) {
  return GradedPoly::multiply(p.derivative_x(), q.derivative_x(), max_ep) +
         GradedPoly::multiply(p.derivative_y(), q.derivative_y(), max_ep);
}

}  // namespace stq
