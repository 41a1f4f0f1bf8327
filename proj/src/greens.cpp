#include "stq/greens.hpp"

#include "stq/errors.hpp"

namespace stq {

GreensOperators::GreensOperators(Rational b) : b_(std::move(b)) {
  if (b_ <= 0) throw InvalidArgument("greens: b must be positive");
}

void GreensOperators::check_domain(const GradedPoly& p) const {
  for (const auto& [m, c] : p.terms()) {
    if (m.i % 2 != 0 || m.j % 2 != 0) throw OddParity("operator C applied to an odd monomial");
    if (m.i == 0 && m.j == 0) throw SingularC("operator C applied to a constant term");
  }
}

GradedPoly GreensOperators::apply_C(const GradedPoly& p) const {
  check_domain(p);
  GradedPoly r(p.param());
  for (const auto& [m, c] : p.terms()) {
    const Rational rate = m.i + m.j * b_;
    r.add_term(Monomial{m.ep, m.gp - 1, m.i, m.j}, c / rate);
  }
  return r;
}

GradedPoly GreensOperators::apply_minus_TC(const GradedPoly& p) const {
  return laplacian(apply_C(p)) * Rational(1, 2);
}

GradedPoly GreensOperators::neumann_apply(const GradedPoly& p) const {
  if (p.has_constant_term()) throw SingularC("neumann_apply: input has a constant term");
  GradedPoly sum = p;
  GradedPoly cur = p;
  while (true) {
    cur = apply_minus_TC(cur.nonconstant_part());
    if (cur.is_zero()) break;
    sum += cur;
  }
  return sum;
}

GradedPoly resolve(const OperatorTerm& t, const GreensOperators& ops) {
  if (!t.pending_c) return t.poly;
  if (t.poly.has_constant_term()) {
    throw SingularC("pending C: x^0 y^0 part was not cancelled by the energy shift");
  }
  return ops.apply_C(t.poly);
}

namespace {

GradedPoly power_steps(const GreensOperators& ops, GradedPoly p, int steps) {
  for (int s = 0; s < steps; ++s) p = ops.apply_minus_TC(p);
  return p;
}

}  // namespace

GradedPoly gamma_coefficient(const GreensOperators& ops, GammaKind kind, int l, int m, int n) {
  const Param f = Param::eps;
  switch (kind) {
    case GammaKind::full_x:
      if (l < 1) throw IndexError("Gamma^1_{l,(x)} needs l >= 1");
      return power_steps(ops, GradedPoly::monomial(1, 2 * l, 0, 0, 0, f), l);
    case GammaKind::full_y:
      if (m < 1) throw IndexError("Gamma^1_{m,(y)} needs m >= 1");
      return power_steps(ops, GradedPoly::monomial(1, 0, 2 * m, 0, 0, f), m);
    case GammaKind::reduced_x: {
      if (l < 1 || n < 0 || n >= l) throw IndexError("Gamma^{l-n}_{l,(x)} needs 0 <= n < l");
      const GradedPoly r = ops.apply_C(power_steps(ops, GradedPoly::monomial(1, 2 * l, 0, 0, 0, f), n));
      GradedPoly out(f);
      for (const auto& [mono, c] : r.terms()) out.add_term(Monomial{mono.ep, mono.gp, 0, 0}, c);
      return out;
    }
    case GammaKind::reduced_y: {
      if (m < 1 || n < 0 || n >= m) throw IndexError("Gamma^{m-n}_{m,(y)} needs 0 <= n < m");
      const GradedPoly r = ops.apply_C(power_steps(ops, GradedPoly::monomial(1, 0, 2 * m, 0, 0, f), n));
      GradedPoly out(f);
      for (const auto& [mono, c] : r.terms()) out.add_term(Monomial{mono.ep, mono.gp, 0, 0}, c);
      return out;
    }
    case GammaKind::mixed:
      if (l < 1 || m < 1) throw IndexError("Gamma^{1,1}_{l,m} needs l, m >= 1");
      return power_steps(ops, GradedPoly::monomial(1, 2 * l, 2 * m, 0, 0, f), l + m);
  }
  throw IndexError("unknown Gamma kind");
}

namespace {

GradedPoly scalar_at_order(const std::map<int, GradedPoly>& table, int key, int k) {
  auto it = table.find(key);
  if (it == table.end()) return GradedPoly(Param::eps);
  return it->second.param_order(k).shifted(0, -k);
}

}  // namespace

GradedPoly ChiAnsatz::alpha_at(int l, int k) const { return scalar_at_order(alpha, l, k); }
GradedPoly ChiAnsatz::beta_at(int m, int k) const { return scalar_at_order(beta, m, k); }

GradedPoly ChiAnsatz::a_at(int l, int m, int k) const {
  auto it = a.find({l, m});
  if (it == a.end()) return GradedPoly(Param::eps);
  return it->second.param_order(k).shifted(0, -k);
}

GradedPoly ChiAnsatz::to_poly() const {
  GradedPoly p = GradedPoly::constant(1, Param::eps);
  auto place = [&p](const GradedPoly& coeff, int i, int j) {
    for (const auto& [m, c] : coeff.terms()) p.add_term(Monomial{m.ep, m.gp, i, j}, c);
  };
  for (const auto& [l, c] : alpha) place(c, 2 * l, 0);
  for (const auto& [m, c] : beta) place(c, 0, 2 * m);
  for (const auto& [lm, c] : a) place(c, 2 * lm.first, 2 * lm.second);
  return p;
}

ChiAnsatz ChiAnsatz::from_poly(const GradedPoly& chi, int max_degree) {
  ChiAnsatz an;
  an.max_degree = max_degree;
  for (const auto& [m, c] : chi.terms()) {
    if (m.i % 2 != 0 || m.j % 2 != 0) throw OddParity("chi ansatz: odd monomial");
    const int l = m.i / 2;
    const int mm = m.j / 2;
    if (l == 0 && mm == 0) {
      if (m.ep != 0 || m.gp != 0 || c != 1) throw InvalidArgument("chi ansatz: chi(0) must be 1");
      continue;
    }
    if (l + mm > max_degree) throw TruncationOverflow("chi ansatz: monomial beyond max_degree");
    const Monomial scalar{m.ep, m.gp, 0, 0};
    if (mm == 0) {
      an.alpha.try_emplace(l, Param::eps).first->second.add_term(scalar, c);
    } else if (l == 0) {
      an.beta.try_emplace(mm, Param::eps).first->second.add_term(scalar, c);
    } else {
      an.a.try_emplace({l, mm}, Param::eps).first->second.add_term(scalar, c);
    }
  }
  return an;
}

GreenSolution solve_green(const PotentialSpec& spec, int eps_order, int max_degree) {
  spec.validate();
  if (eps_order < 1) throw InvalidArgument("solve_green: eps_order must be >= 1");
  if (max_degree < 0) max_degree = 2 * eps_order;
  const GreensOperators ops(spec.b);
  const GradedPoly u = spec.U.with_param(Param::eps);

  // chi^(k): coefficient of eps^k, with explicit g powers and ep = 0.
  std::vector<GradedPoly> chi{GradedPoly::constant(1, Param::eps)};
  std::vector<GradedPoly> delta{GradedPoly(Param::eps)};
  for (int k = 1; k <= eps_order; ++k) {
    GradedPoly source = -(u * chi[k - 1]);
    for (int j = 1; j < k; ++j) source += delta[j] * chi[k - j];
    const GradedPoly w = ops.neumann_apply(source);
    // The x^0 y^0 part of (1 + TC)^{-1} (Delta(k) + source) must vanish.
    GradedPoly d = -w.constant_part();
    OperatorTerm pending{w + d, true};
    GradedPoly next = resolve(pending, ops);
    for (const auto& [m, c] : next.terms()) {
      if ((m.i + m.j) / 2 > max_degree) {
        throw TruncationOverflow("solve_green: chi term beyond max_degree " + std::to_string(max_degree));
      }
    }
    delta.push_back(std::move(d));
    chi.push_back(std::move(next));
  }

  GradedPoly chi_sum = GradedPoly::constant(1, Param::eps);
  for (int k = 1; k <= eps_order; ++k) chi_sum += chi[k].shifted(0, k);

  GreenSolution out;
  out.ansatz = ChiAnsatz::from_poly(chi_sum, max_degree);
  out.ansatz.delta = delta;

  SeriesSolution& s = out.series;
  s.method = "green";
  s.kind = SolutionKind::polynomial;
  s.flavor = Param::eps;
  s.b = spec.b;
  s.order = eps_order;
  s.depth = std::nullopt;
  const GradedPoly x = GradedPoly::x(Param::eps);
  const GradedPoly y = GradedPoly::y(Param::eps);
  s.exponent = {(x * x + spec.b * (y * y)) * Rational(1, 2), GradedPoly(Param::eps)};
  s.chi = split_levels(chi_sum, 0, Param::eps);
  GradedPoly energy = GradedPoly::monomial((1 + spec.b) / 2, 0, 0, 1, 0, Param::eps);
  for (int k = 1; k <= eps_order; ++k) energy += delta[k].shifted(0, k);
  s.energies = split_levels(energy, 1, Param::eps);
  return out;
}

}  // namespace stq
