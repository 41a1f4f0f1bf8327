#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stq/graded_poly.hpp"
#include "stq/rational.hpp"
#include "stq/series_solution.hpp"

namespace stq {

// coeff * sqrt(radicand), radicand square-free.
struct Surd {
  Rational coeff = 0;
  unsigned long radicand = 1;

  static Surd make(const Rational& c, unsigned long r);
  double value() const;
  std::string to_string() const;
  friend bool operator==(const Surd&, const Surd&) = default;
};

// <u_m|s^2|u_n> for normalized oscillator states of frequency omega, as
// surd / omega. Nonzero only for |m - n| in {0, 2}.
Surd oscillator_matrix_element(int m, int n);
Surd oscillator_matrix_element(int m, int n, const Rational& omega);
double oscillator_matrix_element(int m, int n, double omega);

using OscIndex = std::pair<int, int>;  // (m, n), x and y quanta

// Normalized-basis coefficient: surd times g^gp.
struct BasisCoefficient {
  Surd value;
  int gp = 0;
  friend bool operator==(const BasisCoefficient&, const BasisCoefficient&) = default;
};

struct RsResult {
  Rational b;
  int order = 0;
  // energies[k]: eps^k shift (k >= 1) as a g-graded constant; energies[0] = g (1 + b) / 2.
  std::vector<GradedPoly> energies;
  // psi[k] over the ladder basis (a^+)^m (b^+)^n |0>, intermediate normalization.
  std::vector<std::map<OscIndex, GradedPoly>> ladder;
  // The same corrections over normalized product states u_m u_n.
  std::vector<std::map<OscIndex, BasisCoefficient>> normalized;
  // exp(+g S0) (psi_0 + eps psi_1 + ...) / value at the origin, as a
  // polynomial in (x, y); eps-graded, chi(0) = 1.
  GradedPoly chi;
};

// Rayleigh-Schroedinger series of H = -1/2 lap + g^2/2 (x^2 + b^2 y^2) + eps x^2 y^2
// about the oscillator ground state, with g kept symbolic.
RsResult rs_corrections(const Rational& b, int order);

// Packs an RS result as a polynomial-kind eps solution, exact in g.
SeriesSolution rs_series(const RsResult& rs);
SeriesSolution solve_rs(const Rational& b, int order);

}  // namespace stq
