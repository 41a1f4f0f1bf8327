#include "stq/rs_oracle.hpp"

#include <cmath>
#include <sstream>

#include "stq/errors.hpp"

namespace stq {

Surd Surd::make(const Rational& c, unsigned long r) {
  if (r == 0) return Surd{0, 1};
  Surd s{c, 1};
  unsigned long rest = r;
  for (unsigned long f = 2; f * f <= rest; ++f) {
    while (rest % (f * f) == 0) {
      rest /= f * f;
      s.coeff *= f;
    }
  }
  s.radicand = rest;
  if (s.coeff == 0) s.radicand = 1;
  return s;
}

double Surd::value() const { return coeff.get_d() * std::sqrt(static_cast<double>(radicand)); }

std::string Surd::to_string() const {
  std::ostringstream os;
  os << stq::to_string(coeff);
  if (radicand != 1) os << "*sqrt(" << radicand << ")";
  return os.str();
}

Surd oscillator_matrix_element(int m, int n) {
  if (m < 0 || n < 0) throw InvalidArgument("oscillator_matrix_element: negative index");
  if (m == n) return Surd{Rational(2 * n + 1, 2), 1};
  if (std::abs(m - n) != 2) return Surd{0, 1};
  const unsigned long k = static_cast<unsigned long>(std::min(m, n));
  return Surd::make(Rational(1, 2), (k + 1) * (k + 2));
}

Surd oscillator_matrix_element(int m, int n, const Rational& omega) {
  if (omega <= 0) throw InvalidArgument("oscillator_matrix_element: omega must be positive");
  Surd s = oscillator_matrix_element(m, n);
  s.coeff /= omega;
  return s;
}

double oscillator_matrix_element(int m, int n, double omega) {
  return oscillator_matrix_element(m, n).value() / omega;
}

namespace {

using State = std::map<OscIndex, GradedPoly>;

void accumulate(State& s, const OscIndex& idx, const GradedPoly& c) {
  auto [it, inserted] = s.try_emplace(idx, c);
  if (!inserted) it->second += c;
  if (it->second.is_zero()) s.erase(it);
}

// s^2 on the ladder state |n) = (a^+)^n |0):
// s^2 |n) = (|n+2) + (2n+1)|n) + n(n-1)|n-2)) / (2 omega).
// omega = g * w, so 1/(2 omega) = g^{-1} / (2 w).
State apply_square(const State& in, bool on_x, const Rational& w) {
  State out;
  const Rational f = 1 / (2 * w);
  for (const auto& [idx, c] : in) {
    const GradedPoly base = c.shifted(-1, 0) * f;
    const int n = on_x ? idx.first : idx.second;
    auto at = [&](int shift) {
      return on_x ? OscIndex{idx.first + shift, idx.second} : OscIndex{idx.first, idx.second + shift};
    };
    accumulate(out, at(2), base);
    accumulate(out, at(0), base * Rational(2 * n + 1));
    if (n >= 2) accumulate(out, at(-2), base * Rational(n * (n - 1)));
  }
  return out;
}

unsigned long factorial(int n) {
  unsigned long f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<unsigned long>(i);
  return f;
}

// (a^+)^m |0) in position space divided by the ground-state Gaussian:
// a^+ (e^{-w s^2/2} f) = e^{-w s^2/2} (2 w s f - f') / sqrt(2 w), applied m
// times; m is even so the sqrt collects into (2 w)^{m/2}.
GradedPoly ladder_polynomial(int m, bool on_x, const Rational& w) {
  const GradedPoly s = on_x ? GradedPoly::x(Param::eps) : GradedPoly::y(Param::eps);
  GradedPoly f = GradedPoly::constant(1, Param::eps);
  for (int k = 0; k < m; ++k) {
    const GradedPoly d = on_x ? f.derivative_x() : f.derivative_y();
    f = (s * f).shifted(1, 0) * (2 * w) - d;
  }
  Rational scale = 1;
  for (int k = 0; k < m / 2; ++k) scale *= 2 * w;
  return f.shifted(-m / 2, 0) * (1 / scale);
}

}  // namespace

RsResult rs_corrections(const Rational& b, int order) {
  if (b <= 0) throw InvalidArgument("rs_corrections: b must be positive");
  if (order < 1) throw InvalidArgument("rs_corrections: order must be >= 1");
  RsResult r;
  r.b = b;
  r.order = order;
  r.energies.push_back(GradedPoly::monomial((1 + b) / 2, 0, 0, 1, 0, Param::eps));
  r.ladder.push_back(State{{OscIndex{0, 0}, GradedPoly::constant(1, Param::eps)}});

  for (int k = 1; k <= order; ++k) {
    const State v = apply_square(apply_square(r.ladder[k - 1], true, 1), false, b);
    auto it = v.find({0, 0});
    GradedPoly ek = it == v.end() ? GradedPoly(Param::eps) : it->second;
    r.energies.push_back(ek);
    // g (m + n b) psi_k = -(V psi_{k-1}) + sum_{j=1}^{k} E_j psi_{k-j}, off the ground state.
    State rhs;
    for (const auto& [idx, c] : v) accumulate(rhs, idx, -c);
    for (int j = 1; j <= k; ++j) {
      for (const auto& [idx, c] : r.ladder[k - j]) accumulate(rhs, idx, r.energies[j] * c);
    }
    State psi;
    for (const auto& [idx, c] : rhs) {
      if (idx == OscIndex{0, 0}) continue;
      const Rational gap = idx.first + idx.second * b;
      accumulate(psi, idx, c.shifted(-1, 0) * (1 / gap));
    }
    r.ladder.push_back(std::move(psi));
  }

  for (const auto& state : r.ladder) {
    std::map<OscIndex, BasisCoefficient> table;
    for (const auto& [idx, c] : state) {
      if (c.size() != 1) throw InvalidArgument("rs_corrections: coefficient not homogeneous in g");
      const auto& [mono, val] = *c.terms().begin();
      table[idx] = BasisCoefficient{Surd::make(val, factorial(idx.first) * factorial(idx.second)), mono.gp};
    }
    r.normalized.push_back(std::move(table));
  }

  // Position space, then normalize so the constant term is 1.
  std::map<int, GradedPoly> hx;
  std::map<int, GradedPoly> hy;
  GradedPoly raw(Param::eps);
  for (int k = 0; k <= order; ++k) {
    for (const auto& [idx, c] : r.ladder[k]) {
      auto px = hx.try_emplace(idx.first, ladder_polynomial(idx.first, true, 1)).first->second;
      auto py = hy.try_emplace(idx.second, ladder_polynomial(idx.second, false, b)).first->second;
      raw += (c * px * py).shifted(0, k);
    }
  }
  const GradedPoly one = GradedPoly::constant(1, Param::eps);
  const GradedPoly d = raw.constant_part() - one;  // chi(0) - 1, starts at eps^1
  // 1 / (1 + d) = sum_j (-d)^j
  GradedPoly inv = one;
  GradedPoly term = one;
  for (int j = 1; j <= order; ++j) {
    term = GradedPoly::multiply(term, -d, order);
    inv += term;
  }
  r.chi = GradedPoly::multiply(raw, inv, order);
  return r;
}

SeriesSolution rs_series(const RsResult& rs) {
  SeriesSolution s;
  s.method = "rs";
  s.kind = SolutionKind::polynomial;
  s.flavor = Param::eps;
  s.b = rs.b;
  s.order = rs.order;
  s.depth = std::nullopt;
  const GradedPoly x = GradedPoly::x(Param::eps);
  const GradedPoly y = GradedPoly::y(Param::eps);
  s.exponent = {(x * x + rs.b * (y * y)) * Rational(1, 2), GradedPoly(Param::eps)};
  s.chi = split_levels(rs.chi, 0, Param::eps);
  GradedPoly e(Param::eps);
  for (std::size_t k = 0; k < rs.energies.size(); ++k) e += rs.energies[k].shifted(0, static_cast<int>(k));
  s.energies = split_levels(e, 1, Param::eps);
  return s;
}

SeriesSolution solve_rs(const Rational& b, int order) { return rs_series(rs_corrections(b, order)); }

}  // namespace stq
