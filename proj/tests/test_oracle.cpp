#include <doctest.h>

#include <cmath>
#include <vector>

#include "stq/compare.hpp"
#include "stq/errors.hpp"
#include "stq/fd_solver.hpp"
#include "stq/hierarchy.hpp"
#include "stq/perturbation.hpp"
#include "stq/rs_oracle.hpp"
#include "support.hpp"

using namespace stq;
using stq::testing::kBs;
using stq::testing::R;

namespace {

constexpr Param E = Param::eps;

GradedPoly gconst(const Rational& c, int gp) { return GradedPoly::monomial(c, 0, 0, gp, 0, E); }

// Physicists' Hermite polynomial by the three-term recursion.
double hermite(int n, double z) {
  double h0 = 1.0;
  if (n == 0) return h0;
  double h1 = 2.0 * z;
  for (int k = 1; k < n; ++k) {
    const double h2 = 2.0 * z * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

// u_m(s) / u_0(s) for frequency w.
double basis_ratio(int m, double w, double s) {
  return hermite(m, std::sqrt(w) * s) / std::sqrt(std::pow(2.0, m) * std::tgamma(m + 1.0));
}

double table_value(const std::map<OscIndex, BasisCoefficient>& table, double g, double b, double x, double y) {
  double v = 0.0;
  for (const auto& [idx, c] : table) {
    v += c.value.value() * std::pow(g, c.gp) * basis_ratio(idx.first, g, x) * basis_ratio(idx.second, g * b, y);
  }
  return v;
}

SeriesSolution hierarchy(const Rational& b) {
  return solve_hierarchy(PotentialSpec::quartic_coupling(b, Param::mu), 2, 1);
}

}  // namespace

TEST_CASE("oscillator matrix elements") {
  CHECK(oscillator_matrix_element(0, 0) == Surd::make(R(1, 2), 1));
  CHECK(oscillator_matrix_element(0, 2) == Surd::make(R(1, 2), 2));  // 1/sqrt 2
  CHECK(oscillator_matrix_element(2, 0) == oscillator_matrix_element(0, 2));
  CHECK(oscillator_matrix_element(2, 2) == Surd::make(R(5, 2), 1));
  CHECK(oscillator_matrix_element(2, 4) == Surd::make(1, 3));
  CHECK(oscillator_matrix_element(4, 2) == Surd::make(1, 3));
  CHECK(oscillator_matrix_element(0, 4).coeff == 0);
  CHECK(oscillator_matrix_element(6, 0).coeff == 0);
  CHECK(oscillator_matrix_element(2, 4, R(3)) == Surd::make(R(1, 3), 3));
  CHECK(oscillator_matrix_element(0, 2, 2.0) == doctest::Approx(1.0 / (std::sqrt(2.0) * 2.0)));
  CHECK_THROWS_AS(oscillator_matrix_element(0, 0, R(0)), InvalidArgument);
  CHECK_THROWS_AS(oscillator_matrix_element(-2, 0), InvalidArgument);
  CHECK(Surd::make(R(1, 2), 12) == Surd{R(1), 3});

  // against the Hermite integral on a fine quadrature
  for (int m : {0, 2, 4}) {
    for (int n : {0, 2, 4}) {
      const double w = 1.3;
      double sum = 0.0;
      const double h = 1e-3;
      for (double s = -12.0; s <= 12.0; s += h) {
        const double u0 = std::pow(w / M_PI, 0.25) * std::exp(-0.5 * w * s * s);
        sum += u0 * u0 * basis_ratio(m, w, s) * basis_ratio(n, w, s) * s * s * h;
      }
      CHECK(oscillator_matrix_element(m, n, w) == doctest::Approx(sum).epsilon(1e-8));
    }
  }
}

TEST_CASE("Rayleigh-Schroedinger energies") {
  for (const Rational& b : kBs) {
    CAPTURE(b.get_str());
    const RsResult rs = rs_corrections(b, 2);
    REQUIRE(rs.energies.size() == 3);
    CHECK(rs.energies[1] == gconst(1 / (4 * b), -2));
    CHECK(rs.energies[2] == gconst(-(b * b + 4 * b + 1) / (16 * b * b * b * (b + 1)), -5));
  }
  CHECK_THROWS_AS(rs_corrections(R(0), 2), InvalidArgument);
  CHECK_THROWS_AS(rs_corrections(R(1), 0), InvalidArgument);
}

TEST_CASE("Rayleigh-Schroedinger wavefunction tables") {
  for (const Rational& b : kBs) {
    CAPTURE(b.get_str());
    const RsResult rs = rs_corrections(b, 2);
    const Rational bp = b + 1;
    const auto& t2 = rs.normalized.at(2);
    const std::map<OscIndex, Surd> printed = {
        {{2, 0}, Surd::make((2 * b * b + 8 * b + 1) / (32 * b * b * b * bp), 2)},
        {{0, 2}, Surd::make((b * b + 8 * b + 2) / (32 * b * b * b * b * bp), 2)},
        {{2, 2}, Surd::make((5 * b * b + 34 * b + 5) / (32 * b * b * b * bp * bp), 1)},
        {{4, 2}, Surd::make((b + 6) / (16 * b * b * bp * (b + 2)), 3)},
        {{2, 4}, Surd::make((6 * b + 1) / (16 * b * b * b * bp * (2 * b + 1)), 3)},
        {{4, 0}, Surd::make((b + 3) / (64 * b * b * bp), 6)},
        {{0, 4}, Surd::make((3 * b + 1) / (64 * b * b * b * b * bp), 6)},
        {{4, 4}, Surd::make(3 / (16 * b * b * bp * bp), 1)},
    };
    CHECK(t2.size() == printed.size());
    for (const auto& [idx, s] : printed) {
      CAPTURE(idx.first);
      CAPTURE(idx.second);
      REQUIRE(t2.count(idx) == 1);
      CHECK(t2.at(idx).value == s);
      CHECK(t2.at(idx).gp == -6);
    }
  }
}

TEST_CASE("first-order wavefunction in position space") {
  for (const Rational& b : kBs) {
    const double bd = b.get_d();
    const double g = 1.7;
    const RsResult rs = rs_corrections(b, 1);
    for (double x : {0.0, 0.3, -0.8}) {
      for (double y : {0.0, 0.5, 1.1}) {
        const double printed = (bd * bd + bd + 1) / (8 * g * g * g * bd * bd * (bd + 1)) -
                               (x * x + y * y / bd) / (4 * g * g * (bd + 1)) - x * x * y * y / (2 * g * (bd + 1));
        CHECK(table_value(rs.normalized.at(1), g, bd, x, y) == doctest::Approx(printed).epsilon(1e-12));
      }
    }
    const Rational c1 = rs.chi.coefficient(2, 2, -1, 1);
    CHECK(c1 == -1 / (2 * (b + 1)));
  }
}

TEST_CASE("RS chi equals the polynomial expansion") {
  for (const Rational& b : kBs) {
    CAPTURE(b.get_str());
    const SeriesSolution rs = solve_rs(b, 2);
    const SeriesSolution poly = solve_polynomial(PotentialSpec::quartic_coupling(b, E), E, {2, 5});
    CHECK(rs.chi == poly.chi);
    CHECK(energy_total(rs) == energy_total(poly));
    CHECK(rs.method == "rs");
  }
}

TEST_CASE("finite-difference harmonic ground state") {
  const SpectralEstimate e1 = fd_ground_state(1.0, 1.0, 0.0);
  CHECK(e1.energy == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(e1.residual <= 1e-10);
  CHECK(e1.grid_energies.size() == 3);
  CHECK(e1.lx == doctest::Approx(6.0));
  const SpectralEstimate e2 = fd_ground_state(1.0, 2.0, 0.0);
  CHECK(e2.energy == doctest::Approx(1.5).epsilon(1e-4));

  double norm = 0.0;
  for (double v : e1.psi_samples) norm += v * v;
  CHECK(norm == doctest::Approx(1.0));
}

TEST_CASE("finite-difference error is second order in the spacing") {
  GridConfig cfg;
  const double L = 6.0;
  std::vector<double> err;
  for (int n : {21, 41, 81}) err.push_back(std::abs(fd_single_grid(1.0, 1.0, 0.0, n, L, cfg).energy - 1.0));
  CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.1));
  CHECK(err[1] / err[2] == doctest::Approx(4.0).epsilon(0.05));
  CHECK(richardson_extrapolate({1.0}) == 1.0);
  CHECK(richardson_extrapolate({5.0, 2.0}) == doctest::Approx(1.0));
}

TEST_CASE("finite-difference preconditions") {
  CHECK_THROWS_AS(fd_ground_state(0.0, 1.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(fd_ground_state(1.0, -1.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(fd_ground_state(1.0, 1.0, -0.1), InvalidArgument);
  GridConfig tight;
  tight.points = 21;
  tight.richardson_levels = 1;
  tight.max_iterations = 1;
  CHECK_THROWS_AS(fd_ground_state(1.0, 1.0, 0.0, tight), ConvergenceFailure);
}

TEST_CASE("method comparison") {
  const SeriesSolution h = hierarchy(R(1));
  const SeriesSolution ex = solve_exponential(PotentialSpec::quartic_coupling(R(1), E), E, {2, 5});
  const SeriesSolution po = solve_polynomial(PotentialSpec::quartic_coupling(R(1), E), E, {2, 5});

  AgreementReport r = compare_methods({h, ex, po});
  CHECK(r.all_agree());
  REQUIRE(r.pairs.size() == 2);
  CHECK(r.pairs[0].reference == "hierarchy");
  CHECK(r.pairs[0].method == "exp-eps");
  CHECK(r.pairs[0].compared_terms > 0);
  CHECK_FALSE(r.pairs[0].first_mismatch.has_value());

  CHECK(compare_methods({ex, exp_to_poly(ex)}, std::nullopt, E).all_agree());

  SeriesSolution bad = ex;
  bad.exponent[3].add_term(Monomial{1, 0, 2, 0}, R(1, 1000));
  r = compare_methods({h, bad});
  CHECK_FALSE(r.all_agree());
  REQUIRE(r.pairs[0].first_mismatch.has_value());
  const TermMismatch& tm = *r.pairs[0].first_mismatch;
  CHECK(tm.quantity == "exponent");
  // eps x^2 at level 3 is mu x^2 g^0 in the mu frame
  CHECK(tm.slot == Monomial{1, 0, 2, 0});
  CHECK(tm.reference == R(1, 8));
  CHECK(tm.value == R(1, 8) + R(1, 1000));

  SeriesSolution bad_e = h;
  bad_e.energies[2] = GradedPoly::monomial(R(-1, 5), 0, 0, 0, 2, Param::mu);
  r = compare_methods({h, bad_e});
  REQUIRE(r.pairs[0].first_mismatch.has_value());
  CHECK(r.pairs[0].first_mismatch->quantity == "energy");
  CHECK(r.pairs[0].first_mismatch->slot == Monomial{2, -1, 0, 0});
}

TEST_CASE("numeric comparison at weak coupling") {
  const NumericPoint pt{10.0, 0.05, fd_ground_state(10.0, 1.0, 0.05)};
  const AgreementReport r = compare_methods({hierarchy(R(1)), solve_rs(R(1), 2)}, pt);
  REQUIRE(r.numeric.size() == 2);
  for (const NumericAgreement& n : r.numeric) {
    CAPTURE(n.method);
    CHECK(n.series_energy == doctest::Approx(10.0 + 0.05 / 4 - 3 * 0.05 * 0.05 / 160));
    CHECK(n.rel_diff <= 1e-4);
  }
}
