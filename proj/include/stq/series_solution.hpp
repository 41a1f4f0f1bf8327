#pragma once

#include <climits>
#include <optional>
#include <string>
#include <vector>

#include "stq/graded_poly.hpp"
#include "stq/rational.hpp"

namespace stq {

enum class SolutionKind { exponential, polynomial };

std::string_view to_string(SolutionKind k);
SolutionKind parse_kind(std::string_view s);

inline constexpr int kUnboundedLevel = INT_MAX / 4;

// Output of every pipeline, indexed by level: S_i, chi_k and E_i carry g^{1-i} or g^{-k}.
//   exponential: Phi = exp(-sum_i g^{1-i} S_i), levels S_0..S_L
//   polynomial:  Phi = exp(-g S_0 - S_1) * sum_k g^{-k} chi_k, chi_0 = 1
//   energy:      E = sum_i g^{1-i} E_i
// Level polynomials carry gp = 0; the level index fixes the power of g.
// `ep` counts powers of `flavor`.
struct SeriesSolution {
  std::string method;
  SolutionKind kind = SolutionKind::exponential;
  Param flavor = Param::mu;
  Rational b = 1;
  int order = 0;              // highest parameter power kept
  std::optional<int> depth;   // deepest power g^{-depth} of gS (or chi); empty = exact in g
  int window_slope = 0;       // trusted level shift per parameter power, see max_level
  std::vector<GradedPoly> exponent;
  std::vector<GradedPoly> chi;
  std::vector<GradedPoly> energies;

  // Highest exponential-kind level whose parameter-power-`ep` terms are
  // complete. Regrading between flavors moves this by ep * (weight change).
  int max_level(int ep) const;

  friend bool operator==(const SeriesSolution&, const SeriesSolution&) = default;
};

// Sum of g^{1-i} S_i (exponential) or g S_0 + S_1 (polynomial) as a single
// graded polynomial with explicit g powers.
GradedPoly exponent_total(const SeriesSolution& s);
GradedPoly chi_total(const SeriesSolution& s);
GradedPoly energy_total(const SeriesSolution& s);

// Splits a total with explicit g powers back into levels, level = offset - gp.
// Throws InvalidArgument if a term would land on a negative level.
std::vector<GradedPoly> split_levels(const GradedPoly& total, int offset, Param param);

// Drops terms with parameter power above `max_ep` or g power below `min_gp`.
GradedPoly truncate_window(const GradedPoly& p, int max_ep, std::optional<int> min_gp);

}  // namespace stq
