#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stq/fd_solver.hpp"
#include "stq/graded_poly.hpp"
#include "stq/series_solution.hpp"

namespace stq {

// One coefficient slot g^gp (param)^ep x^i y^j of the exponent gS_0 + S_1 + ...
// or of the energy, in the comparison frame.
struct TermMismatch {
  std::string quantity;  // "exponent" or "energy"
  Monomial slot;
  Rational reference;
  Rational value;
};

struct PairAgreement {
  std::string reference;
  std::string method;
  bool agree = true;
  std::size_t compared_terms = 0;
  std::optional<TermMismatch> first_mismatch;
};

struct NumericAgreement {
  std::string method;
  double series_energy = 0.0;
  double abs_diff = 0.0;
  double rel_diff = 0.0;
};

struct NumericPoint {
  double g = 0.0;
  double mu = 0.0;  // parameter value in the comparison frame
  SpectralEstimate estimate;
};

struct AgreementReport {
  Param frame = Param::mu;
  std::vector<PairAgreement> pairs;
  std::optional<NumericPoint> point;
  std::vector<NumericAgreement> numeric;

  bool all_agree() const;
};

// Exact term-by-term diff of every solution against the first, after
// mapping each into exponential form in `frame`. Only slots inside both
// solutions' trusted windows are compared. With a numeric point, also
// evaluates each series energy there against the finite-difference value.
AgreementReport compare_methods(const std::vector<SeriesSolution>& solutions,
                                const std::optional<NumericPoint>& point = std::nullopt,
                                Param frame = Param::mu);

// The windowed graded totals the comparison runs on.
GradedPoly windowed_exponent(const SeriesSolution& normalized, const SeriesSolution& other);
GradedPoly windowed_energy(const SeriesSolution& normalized, const SeriesSolution& other);

}  // namespace stq
