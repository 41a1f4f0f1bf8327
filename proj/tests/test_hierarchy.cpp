#include <doctest.h>

#include "stq/errors.hpp"
#include "stq/hierarchy.hpp"
#include "stq/perturbation.hpp"
#include "support.hpp"

using namespace stq;
using stq::testing::kBs;
using stq::testing::R;
using stq::testing::term;

namespace {

// Printed closed forms of the mu-hierarchy at (mu^2, 1/g).
struct MuGolden {
  GradedPoly s1, s2;
  Rational e0, e1, e2;
};

MuGolden golden(const Rational& b) {
  const Rational bp = 1 + b;
  MuGolden g;
  g.e0 = bp / 2;
  g.e1 = 1 / (4 * b);
  g.e2 = -(b * b + 4 * b + 1) / (16 * b * b * b * bp);
  g.s1 = term(1 / (4 * bp), 2, 0, 1) + term(1 / (4 * bp * b), 0, 2, 1) -
         term(1 / (4 * bp * bp), 0, 0, 2) *
             (term(1 / (4 * (2 + b)), 4, 0) + term(1 / b, 2, 2) + term(9 / ((2 + b) * (1 + 2 * b)), 2, 2) +
              term(1 / (4 * b * (1 + 2 * b)), 0, 4));
  const GradedPoly x2 = GradedPoly::x() * GradedPoly::x();
  const GradedPoly y2 = GradedPoly::y() * GradedPoly::y();
  g.s2 = term(-1 / (16 * bp * bp), 0, 0, 2) * (x2 + y2 * (1 / (b * b * b))) -
         term(1 / (8 * b * bp * bp), 0, 0, 2) * (x2 + y2 * (1 / b)) -
         term(1 / (8 * bp * bp), 0, 0, 2) * ((x2 + y2 * (1 / b)) * (9 / ((1 + 2 * b) * (2 + b))) +
                                              (x2 * (1 / (2 + b)) + y2 * (1 / (b * b * (1 + 2 * b)))) * R(3, 2));
  return g;
}

}  // namespace

TEST_CASE("mu hierarchy reproduces the printed levels") {
  for (const Rational& b : kBs) {
    CAPTURE(b.get_str());
    const SeriesSolution s = solve_hierarchy(PotentialSpec::quartic_coupling(b, Param::mu), 2, 1);
    const MuGolden g = golden(b);
    REQUIRE(s.exponent.size() == 3);
    REQUIRE(s.energies.size() == 3);
    CHECK(s.energies[0] == GradedPoly::constant(g.e0));
    CHECK(s.energies[1] == term(g.e1, 0, 0, 1));
    CHECK(s.energies[2] == term(g.e2, 0, 0, 2));
    CHECK(s.exponent[1] == g.s1);
    CHECK(s.exponent[2] == g.s2);
    CHECK(s.method == "hierarchy");
  }
}

TEST_CASE("each level satisfies its PDE in (x, y)") {
  for (const Rational& b : kBs) {
    const PotentialSpec spec = PotentialSpec::quartic_coupling(b, Param::mu);
    for (const SeriesSolution& s : {solve_hierarchy(spec, 2, 1), solve_hierarchy(spec, 3, 3)}) {
      for (const GradedPoly& r : hierarchy_pde_residuals(s, spec)) CHECK(r.is_zero());
      for (const GradedPoly& e : s.energies) CHECK(e.max_degree() <= 0);
    }
  }
}

TEST_CASE("energy is the right-hand side at the origin") {
  const PotentialSpec spec = PotentialSpec::quartic_coupling(R(2), Param::mu);
  const Trajectory t = invert_endpoint_constants(solve_classical_trajectory(spec, 2));
  const SeriesSolution s = solve_hierarchy(spec, t, 2);
  for (int n = 0; n + 1 < static_cast<int>(s.exponent.size()); ++n) {
    const GradedPoly rhs = exponential_rhs(s.exponent, n, 2);
    CHECK(rhs.evaluate(1.7, 0.3, 0.0, 0.0) == doctest::Approx(s.energies[n].evaluate(1.7, 0.3, 0, 0)));
    CHECK(extract_energy(restrict_to_trajectory(rhs, t, 2)).energy == rhs.constant_part());
  }
}

TEST_CASE("energy extraction") {
  const Rational b = R(3);
  const ExpSum harmonic_lap = ExpSum::term(1 + b, ExpKey{}, b) * R(1, 2);
  EnergySplit s = extract_energy(harmonic_lap);
  CHECK(s.energy == GradedPoly::constant(2));
  CHECK(s.remainder.is_zero());

  const ExpSum grow = ExpSum::term(4, ExpKey{0, 0, 2, 0, 2, 0}, b);
  s = extract_energy(grow);
  CHECK(s.energy.is_zero());
  CHECK(s.remainder == grow);

  s = extract_energy(ExpSum::term(7, ExpKey{}, b));
  CHECK(s.energy == GradedPoly::constant(7));
  CHECK(s.remainder.is_zero());

  CHECK_THROWS_AS(extract_energy(ExpSum::term(1, ExpKey{0, 0, 1, 0, 0, 0}, b)), ResidualTimeDependence);
}

TEST_CASE("assembled state and numeric energy") {
  const PotentialSpec spec = PotentialSpec::quartic_coupling(R(1), Param::mu);
  const SeriesSolution s = solve_hierarchy(spec, 2, 1);
  const AssembledState st = assemble_wavefunction(s);
  CHECK(st.chi == GradedPoly::constant(1));
  CHECK(st.energy == term(R(1), 0, 0, 0, Param::mu, 1) + term(R(1, 4), 0, 0, 1) - term(R(3, 16), 0, 0, 2, Param::mu, -1));
  CHECK(st.log_phi.coefficient(2, 0, 1) == R(-1, 2));
  CHECK(st.log_phi.coefficient(2, 2, 1, 1) == R(-1, 4));
  // 10 + 0.1/4 - 0.01 * 6/32 / 10
  CHECK(evaluate_energy(s, 10.0, 0.1) == doctest::Approx(10.0248125).epsilon(1e-14));

  const SeriesSolution h = solve_hierarchy(PotentialSpec::quartic_coupling(R(2), Param::mu), 0, 1);
  const AssembledState free = assemble_wavefunction(h);
  CHECK(free.log_phi == term(R(-1, 2), 2, 0, 0, Param::mu, 1) + term(R(-1), 0, 2, 0, Param::mu, 1));
  CHECK(free.energy == term(R(3, 2), 0, 0, 0, Param::mu, 1));
}

TEST_CASE("x-y exchange symmetry of the energy") {
  // E(g, b, mu) = E(g b, 1/b, mu / b^2): coefficient c_b of g^gp mu^ep must
  // equal c_{1/b} b^{gp - 2 ep}.
  for (const Rational& b : kBs) {
    CAPTURE(b.get_str());
    const GradedPoly e = energy_total(solve_hierarchy(PotentialSpec::quartic_coupling(b, Param::mu), 3, 3));
    const GradedPoly f = energy_total(solve_hierarchy(PotentialSpec::quartic_coupling(1 / b, Param::mu), 3, 3));
    GradedPoly mapped(Param::mu);
    for (const auto& [m, c] : f.terms()) {
      Rational scale = 1;
      const int k = m.gp - 2 * m.ep;
      for (int i = 0; i < std::abs(k); ++i) scale *= k > 0 ? b : 1 / b;
      mapped.add_term(m, c * scale);
    }
    CHECK(mapped == e);
  }
}

TEST_CASE("hierarchy preconditions") {
  const PotentialSpec mu = PotentialSpec::quartic_coupling(R(1), Param::mu);
  CHECK_THROWS_AS(solve_hierarchy(PotentialSpec::quartic_coupling(R(1), Param::eps), 2, 1), InvalidArgument);
  CHECK_THROWS_AS(solve_hierarchy(mu, solve_classical_trajectory(mu, 2), 1), InvalidArgument);
  CHECK_THROWS_AS(solve_hierarchy(mu, 2, -1), InvalidArgument);
}
