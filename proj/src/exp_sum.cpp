#include "stq/exp_sum.hpp"

#include <sstream>
#include <vector>

#include "stq/errors.hpp"

namespace stq {

ExpSum ExpSum::term(const Rational& c, const ExpKey& key, const Rational& b, Param param) {
  ExpSum e(b, param);
  e.add_term(key, c);
  return e;
}

void ExpSum::add_term(const ExpKey& key, const Rational& c) {
  if (key.p < 0 || key.q < 0 || key.k < 0 || key.l < 0 || key.ep < 0) {
    throw InvalidArgument("negative exponent in ExpSum term");
  }
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational ExpSum::coefficient(const ExpKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational ExpSum::rate(const ExpKey& key) const { return key.k + key.l * b_; }

ExpSum ExpSum::param_order(int ep) const {
  ExpSum r(b_, param_);
  for (const auto& [key, c] : terms_) {
    if (key.ep == ep) r.terms_.emplace(key, c);
  }
  return r;
}

ExpSum ExpSum::truncated(int max_ep) const {
  if (max_ep < 0) return *this;
  ExpSum r(b_, param_);
  for (const auto& [key, c] : terms_) {
    if (key.ep <= max_ep) r.terms_.emplace(key, c);
  }
  return r;
}

ExpSum ExpSum::shifted(int dgp, int dep) const {
  ExpSum r(b_, param_);
  for (const auto& [key, c] : terms_) {
    ExpKey k2 = key;
    k2.gp += dgp;
    k2.ep += dep;
    r.add_term(k2, c);
  }
  return r;
}

int ExpSum::max_ep() const {
  int e = -1;
  for (const auto& [key, c] : terms_) e = std::max(e, key.ep);
  return e;
}

bool ExpSum::is_homogeneous() const {
  for (const auto& [key, c] : terms_) {
    if (key.k != key.p || key.l != key.q) return false;
  }
  return true;
}

ExpSum ExpSum::constant_part() const {
  ExpSum r(b_, param_);
  for (const auto& [key, c] : terms_) {
    if (key.k == 0 && key.l == 0) r.terms_.emplace(key, c);
  }
  return r;
}

ExpSum ExpSum::nonconstant_part() const {
  ExpSum r(b_, param_);
  for (const auto& [key, c] : terms_) {
    if (key.k != 0 || key.l != 0) r.terms_.emplace(key, c);
  }
  return r;
}

ExpSum ExpSum::derivative_t() const {
  ExpSum r(b_, param_);
  for (const auto& [key, c] : terms_) r.add_term(key, c * rate(key));
  return r;
}

std::string ExpSum::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << stq::to_string(c) << ")";
    if (key.ep) os << "*" << stq::to_string(param_) << "^" << key.ep;
    if (key.gp) os << "*g^" << key.gp;
    if (key.p) os << "*cx^" << key.p;
    if (key.q) os << "*cy^" << key.q;
    if (key.k || key.l) os << "*e^((" << key.k << "+" << key.l << "b)t)";
  }
  return os.str();
}

void ExpSum::check_compatible(const ExpSum& o) const {
  if (b_ != o.b_) throw InvalidArgument("ExpSum operands with different b");
}

ExpSum& ExpSum::operator+=(const ExpSum& o) {
  check_compatible(o);
  for (const auto& [key, c] : o.terms_) add_term(key, c);
  return *this;
}

ExpSum& ExpSum::operator-=(const ExpSum& o) {
  check_compatible(o);
  for (const auto& [key, c] : o.terms_) add_term(key, -c);
  return *this;
}

ExpSum& ExpSum::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, v] : terms_) v *= c;
  return *this;
}

ExpSum ExpSum::multiply(const ExpSum& a, const ExpSum& b, int max_ep) {
  a.check_compatible(b);
  ExpSum r(a.b_, a.param_);
  for (const auto& [ka, ca] : a.terms_) {
    if (max_ep >= 0 && ka.ep > max_ep) continue;
    for (const auto& [kb, cb] : b.terms_) {
      const int ep = ka.ep + kb.ep;
      if (max_ep >= 0 && ep > max_ep) continue;
      r.add_term(ExpKey{ep, ka.gp + kb.gp, ka.p + kb.p, ka.q + kb.q, ka.k + kb.k, ka.l + kb.l}, ca * cb);
    }
  }
  return r;
}

namespace {

// Lazily grown table of truncated powers base^0, base^1, ...
template <typename T>
class PowerTable {
 public:
  PowerTable(T one, T base, int max_ep) : base_(std::move(base)), max_ep_(max_ep) {
    powers_.push_back(std::move(one));
  }

  const T& operator()(int n) {
    while (static_cast<int>(powers_.size()) <= n) {
      powers_.push_back(T::multiply(powers_.back(), base_, max_ep_));
    }
    return powers_[n];
  }

 private:
  T base_;
  int max_ep_;
  std::vector<T> powers_;
};

ExpSum sum_series(std::span<const ExpSum> series, const Rational& b, Param param) {
  ExpSum total(b, param);
  for (const auto& s : series) total += s;
  return total;
}

}  // namespace

ExpSum restrict_to_trajectory(const GradedPoly& p, std::span<const ExpSum> x_series,
                              std::span<const ExpSum> y_series, int max_ep) {
  if (x_series.empty() || y_series.empty()) {
    throw InvalidArgument("restrict_to_trajectory: empty trajectory series");
  }
  const Rational& b = x_series.front().b();
  const ExpSum x = sum_series(x_series, b, p.param());
  const ExpSum y = sum_series(y_series, b, p.param());
  const ExpSum one = ExpSum::term(1, ExpKey{}, b, p.param());
  PowerTable<ExpSum> xp(one, x, max_ep);
  PowerTable<ExpSum> yp(one, y, max_ep);

  ExpSum out(b, p.param());
  for (const auto& [m, c] : p.terms()) {
    if (max_ep >= 0 && m.ep > max_ep) continue;
    const int room = max_ep < 0 ? -1 : max_ep - m.ep;
    const ExpSum prod = ExpSum::multiply(xp(m.i), yp(m.j), room);
    for (const auto& [key, v] : prod.terms()) {
      ExpKey k2 = key;
      k2.ep += m.ep;
      k2.gp += m.gp;
      out.add_term(k2, c * v);
    }
  }
  return out;
}

ExpSum integrate_to_T(const ExpSum& e) {
  ExpSum r(e.b(), e.param());
  for (const auto& [key, c] : e.terms()) {
    const Rational s = e.rate(key);
    if (s <= 0) {
      throw SingularIntegral("integrate_to_T: term with non-positive exponent rate (missing energy subtraction?)");
    }
    r.add_term(key, c / s);
  }
  return r;
}

GradedPoly evaluate_at_endpoint(const ExpSum& e, const GradedPoly& cx_hat, const GradedPoly& cy_hat,
                                int max_ep) {
  const GradedPoly one = GradedPoly::constant(1, cx_hat.param());
  PowerTable<GradedPoly> xp(one, cx_hat, max_ep);
  PowerTable<GradedPoly> yp(one, cy_hat, max_ep);
  GradedPoly out(e.param());
  for (const auto& [key, c] : e.terms()) {
    if (key.k != key.p || key.l != key.q) {
      throw ResidualTimeDependence("evaluate_at_endpoint: e^{T} factor does not cancel (term " +
                                   ExpSum::term(c, key, e.b(), e.param()).to_string() + ")");
    }
    if (max_ep >= 0 && key.ep > max_ep) continue;
    const int room = max_ep < 0 ? -1 : max_ep - key.ep;
    const GradedPoly prod = GradedPoly::multiply(xp(key.p), yp(key.q), room);
    for (const auto& [m, v] : prod.terms()) {
      out.add_term(Monomial{m.ep + key.ep, m.gp + key.gp, m.i, m.j}, c * v);
    }
  }
  return out;
}

}  // namespace stq
