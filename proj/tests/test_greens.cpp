#include <doctest.h>

#include <map>
#include <utility>

#include "stq/errors.hpp"
#include "stq/greens.hpp"
#include "stq/hierarchy.hpp"
#include "stq/perturbation.hpp"
#include "support.hpp"

using namespace stq;
using stq::testing::kBs;
using stq::testing::R;

namespace {

constexpr Param E = Param::eps;

GradedPoly mono(const Rational& c, int i, int j, int gp = 0, int ep = 0) {
  return GradedPoly::monomial(c, i, j, gp, ep, E);
}

GradedPoly gconst(const Rational& c, int gp) { return mono(c, 0, 0, gp); }

// Independent model of -TC on even monomials: keys are (l, m) for
// x^{2l} y^{2m}; every step costs one power of 1/g.
using Coeffs = std::map<std::pair<int, int>, Rational>;

Coeffs step(const Coeffs& in, const Rational& b) {
  Coeffs out;
  for (const auto& [lm, c] : in) {
    const auto [l, m] = lm;
    const Rational d = 2 * (l + m * b);
    if (l > 0) out[{l - 1, m}] += c * l * (2 * l - 1) / d;
    if (m > 0) out[{l, m - 1}] += c * m * (2 * m - 1) / d;
  }
  return out;
}

Rational model_chain(int l, int m, int n, const Rational& b, std::pair<int, int> read) {
  Coeffs c{{{l, m}, Rational(1)}};
  for (int s = 0; s < n; ++s) c = step(c, b);
  return c[read];
}

Rational double_factorial(int n) {
  Rational r = 1;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

Rational rpow(const Rational& b, int n) {
  Rational r = 1;
  for (int k = 0; k < n; ++k) r *= b;
  return r;
}

Rational pow2(int n) { return Rational(mpz_class(1) << n); }

}  // namespace

TEST_CASE("C and -TC on monomials") {
  for (const Rational& b : kBs) {
    CAPTURE(b.get_str());
    const GreensOperators ops(b);
    CHECK(ops.apply_C(mono(1, 2, 0)) == mono(R(1, 2), 2, 0, -1));
    CHECK(ops.apply_C(mono(1, 2, 2)) == mono(1 / (2 * (1 + b)), 2, 2, -1));
    CHECK(ops.apply_minus_TC(mono(1, 2, 0)) == gconst(R(1, 2), -1));
    CHECK(ops.apply_minus_TC(mono(1, 2, 2)) == (mono(1, 2, 0) + mono(1, 0, 2)).shifted(-1, 0) * (1 / (2 * (1 + b))));
    CHECK(ops.apply_minus_TC(mono(1, 0, 4)) == mono(3 / (2 * b), 0, 2, -1));
    // C acts first, then the Laplacian: matches the ordering in the model above
    CHECK(ops.apply_minus_TC(mono(1, 4, 2)) == (mono(6, 2, 2) + mono(1, 4, 0)).shifted(-1, 0) * (1 / (2 * (2 + b))));
  }
  const GreensOperators ops(R(1));
  CHECK_THROWS_AS(ops.apply_C(gconst(1, 0)), SingularC);
  CHECK_THROWS_AS(ops.apply_C(mono(1, 1, 2)), OddParity);
  CHECK_THROWS_AS(ops.apply_minus_TC(mono(1, 2, 3)), OddParity);
  CHECK(ops.apply_C(GradedPoly(E)).is_zero());
}

TEST_CASE("Neumann series terminates") {
  for (const Rational& b : kBs) {
    const GreensOperators ops(b);
    const GradedPoly expected = mono(1, 2, 2) + (mono(1, 2, 0) + mono(1, 0, 2)).shifted(-1, 0) * (1 / (2 * (1 + b))) +
                                gconst(1 / (4 * b), -2);
    CHECK(ops.neumann_apply(mono(1, 2, 2)) == expected);
    CHECK(ops.neumann_apply(GradedPoly(E)).is_zero());

    // one nonzero summand per g power: deg/2 + 1 of them
    for (int l = 0; l <= 4; ++l) {
      for (int m = 0; m <= 4; ++m) {
        if (l + m == 0) continue;
        const GradedPoly r = ops.neumann_apply(mono(1, 2 * l, 2 * m));
        int summands = 0;
        for (int s = 0; s <= l + m + 2; ++s) summands += r.g_order(-s).is_zero() ? 0 : 1;
        CHECK(summands == l + m + 1);
        CHECK(r.g_order(-(l + m + 1)).is_zero());
      }
    }
  }
  CHECK_THROWS_AS(GreensOperators(R(1)).neumann_apply(gconst(1, 0) + mono(1, 2, 0)), SingularC);
}

TEST_CASE("Gamma coefficients against the operator model") {
  for (const Rational& b : kBs) {
    CAPTURE(b.get_str());
    const GreensOperators ops(b);
    for (int l = 1; l <= 4; ++l) {
      CHECK(gamma_coefficient(ops, GammaKind::full_x, l) == gconst(double_factorial(2 * l - 1) / pow2(l), -l));
      CHECK(gamma_coefficient(ops, GammaKind::full_x, l) == gconst(model_chain(l, 0, l, b, {0, 0}), -l));
      CHECK(gamma_coefficient(ops, GammaKind::full_y, 0, l) == gconst(model_chain(0, l, l, b, {0, 0}), -l));
      CHECK(gamma_coefficient(ops, GammaKind::full_y, 0, l) ==
            gconst(double_factorial(2 * l - 1) / (pow2(l) * rpow(b, l)), -l));
      for (int n = 0; n < l; ++n) {
        const Rational cx = model_chain(l, 0, n, b, {l - n, 0}) / (2 * (l - n));
        CHECK(gamma_coefficient(ops, GammaKind::reduced_x, l, 0, n) == gconst(cx, -(n + 1)));
        const Rational cy = model_chain(0, l, n, b, {0, l - n}) / (2 * (l - n) * b);
        CHECK(gamma_coefficient(ops, GammaKind::reduced_y, 0, l, n) == gconst(cy, -(n + 1)));
      }
      for (int m = 1; m <= 4; ++m) {
        CHECK(gamma_coefficient(ops, GammaKind::mixed, l, m) == gconst(model_chain(l, m, l + m, b, {0, 0}), -(l + m)));
      }
    }
  }
}

TEST_CASE("Gamma closed forms") {
  for (const Rational& b : kBs) {
    CAPTURE(b.get_str());
    const GreensOperators ops(b);
    CHECK(gamma_coefficient(ops, GammaKind::full_x, 2) == gconst(R(3, 4), -2));
    CHECK(gamma_coefficient(ops, GammaKind::mixed, 1, 1) == gconst(1 / (4 * b), -2));
    CHECK(gamma_coefficient(ops, GammaKind::mixed, 2, 1) == gconst((6 / b + 3) / (8 * (2 + b)), -3));
    CHECK(gamma_coefficient(ops, GammaKind::mixed, 1, 2) == gconst((3 / (b * b) + 6 / b) / (8 * (1 + 2 * b)), -3));
    const Rational g22 = (6 / (1 + 2 * b) * (3 / (b * b) + 6 / b) + 6 / (2 + b) * (6 / b + 3)) / (32 * (1 + b));
    CHECK(gamma_coefficient(ops, GammaKind::mixed, 2, 2) == gconst(g22, -4));
  }
  const GreensOperators ops(R(1));
  CHECK_THROWS_AS(gamma_coefficient(ops, GammaKind::full_x, 0), IndexError);
  CHECK_THROWS_AS(gamma_coefficient(ops, GammaKind::reduced_x, 2, 0, 2), IndexError);
  CHECK_THROWS_AS(gamma_coefficient(ops, GammaKind::reduced_y, 0, 1, -1), IndexError);
  CHECK_THROWS_AS(gamma_coefficient(ops, GammaKind::mixed, 1, 0), IndexError);
}

TEST_CASE("Green solve reproduces the printed coefficients") {
  for (const Rational& b : kBs) {
    CAPTURE(b.get_str());
    const Rational bp = 1 + b;
    const GreenSolution gs = solve_green(PotentialSpec::quartic_coupling(b, E), 2);
    const ChiAnsatz& a = gs.ansatz;
    CHECK(a.max_degree == 4);
    REQUIRE(a.delta.size() == 3);
    CHECK(a.delta[1] == gconst(1 / (4 * b), -2));
    CHECK(a.delta[2] == gconst(-(b * b + 4 * b + 1) / (16 * b * b * b * bp), -5));

    // first order: only the three lowest coefficients appear
    CHECK(a.alpha_at(1, 1) == gconst(-1 / (4 * bp), -2));
    CHECK(a.beta_at(1, 1) == gconst(-1 / (4 * b * bp), -2));
    CHECK(a.a_at(1, 1, 1) == gconst(-1 / (2 * bp), -1));
    for (int l = 0; l <= 4; ++l) {
      for (int m = 0; m <= 4; ++m) {
        if (l + m == 0 || (l <= 1 && m <= 1)) continue;
        const GradedPoly c = l == 0 ? a.beta_at(m, 1) : m == 0 ? a.alpha_at(l, 1) : a.a_at(l, m, 1);
        CHECK(c.is_zero());
      }
    }

    // second order
    const Rational bp2 = bp * bp;
    const Rational s6x = 9 / ((1 + 2 * b) * (2 + b)) + R(3, 2) / (2 + b);
    CHECK(a.alpha_at(1, 2) == gconst((s6x + 1 / b + R(1, 2)) / (8 * bp2), -5));
    CHECK(a.alpha_at(2, 2) == gconst((4 + b) / (32 * bp2 * (2 + b)), -4));
    CHECK(a.a_at(1, 1, 2) == gconst((36 / ((1 + 2 * b) * (2 + b)) + 5 / b) / (16 * bp2), -4));
    CHECK(a.a_at(2, 1, 2) == gconst((4 + b) / (8 * bp2 * (2 + b)), -3));
    CHECK(a.a_at(1, 2, 2) == gconst((4 * b + 1) / (8 * bp2 * b * (2 * b + 1)), -3));
    CHECK(a.a_at(2, 2, 2) == gconst(1 / (8 * bp2), -2));
    CHECK(a.beta_at(2, 2) == gconst((4 * b + 1) / (32 * bp2 * b * b * (2 * b + 1)), -4));

    // the ansatz and the series carry the same chi
    CHECK(gs.series.chi == split_levels(a.to_poly(), 0, E));
    CHECK(ChiAnsatz::from_poly(a.to_poly(), a.max_degree).to_poly() == a.to_poly());
  }
}

TEST_CASE("Green solution matches the perturbative and hierarchy results") {
  for (const Rational& b : kBs) {
    CAPTURE(b.get_str());
    const SeriesSolution green = solve_green(PotentialSpec::quartic_coupling(b, E), 2).series;
    const SeriesSolution poly = solve_polynomial(PotentialSpec::quartic_coupling(b, E), E, {2, 5});
    CHECK(green.chi == poly.chi);
    CHECK(energy_total(green) == energy_total(poly));

    const SeriesSolution h = solve_hierarchy(PotentialSpec::quartic_coupling(b, Param::mu), 2, 1);
    const SeriesSolution gm = normalize_grading(green, Param::mu);
    CHECK(truncate_window(energy_total(gm), 2, -1) == energy_total(h));
  }
}

TEST_CASE("Green solve preconditions") {
  const PotentialSpec spec = PotentialSpec::quartic_coupling(R(1), E);
  CHECK_THROWS_AS(solve_green(spec, 2, 3), TruncationOverflow);
  CHECK_THROWS_AS(solve_green(spec, 0), InvalidArgument);
  CHECK_NOTHROW(solve_green(spec, 1, 2));
  CHECK(solve_green(spec, 3).ansatz.max_degree == 6);
}
