#include "stq/compare.hpp"

#include <algorithm>
#include <cmath>

#include "stq/errors.hpp"
#include "stq/perturbation.hpp"

namespace stq {

namespace {

// Level of a g^gp term in a total of the form sum g^{1-i} X_i.
int level_of(int gp) { return 1 - gp; }

// A solution's graded totals in the comparison frame. Kept as totals rather
// than split back into levels: a corrupted input can leave terms that no
// level can hold, and those must show up as mismatches.
struct Framed {
  const SeriesSolution* source;
  int window_slope;
  GradedPoly exponent;
  GradedPoly energy;

  int max_level(int ep) const {
    if (!source->depth) return kUnboundedLevel;
    return *source->depth + 1 + window_slope * ep;
  }
};

Framed to_frame(const SeriesSolution& s, Param frame) {
  const SeriesSolution e = s.kind == SolutionKind::polynomial ? poly_to_exp(s) : s;
  const int dw = g_weight(e.flavor) - g_weight(frame);
  return Framed{&s, e.window_slope - dw, exponent_total(e).regraded(frame), energy_total(e).regraded(frame)};
}

GradedPoly window(const GradedPoly& total, const Framed& a, const Framed& b) {
  const int max_ep = std::min(a.source->order, b.source->order);
  GradedPoly out(total.param());
  for (const auto& [m, c] : total.terms()) {
    if (m.ep > max_ep) continue;
    if (level_of(m.gp) > std::min(a.max_level(m.ep), b.max_level(m.ep))) continue;
    out.add_term(m, c);
  }
  return out;
}

std::optional<TermMismatch> first_difference(const std::string& quantity, const GradedPoly& ref,
                                             const GradedPoly& val) {
  const GradedPoly diff = val - ref;
  if (diff.is_zero()) return std::nullopt;
  const Monomial slot = diff.terms().begin()->first;
  return TermMismatch{quantity, slot, ref.coefficient(slot), val.coefficient(slot)};
}

}  // namespace

bool AgreementReport::all_agree() const {
  return std::all_of(pairs.begin(), pairs.end(), [](const PairAgreement& p) { return p.agree; });
}

GradedPoly windowed_exponent(const SeriesSolution& normalized, const SeriesSolution& other) {
  const Framed a = to_frame(normalized, normalized.flavor);
  return window(a.exponent, a, to_frame(other, normalized.flavor));
}

GradedPoly windowed_energy(const SeriesSolution& normalized, const SeriesSolution& other) {
  const Framed a = to_frame(normalized, normalized.flavor);
  return window(a.energy, a, to_frame(other, normalized.flavor));
}

AgreementReport compare_methods(const std::vector<SeriesSolution>& solutions, const std::optional<NumericPoint>& point,
                                Param frame) {
  if (solutions.empty()) throw InvalidArgument("compare_methods: no solutions");
  AgreementReport report;
  report.frame = frame;
  report.point = point;

  std::vector<Framed> norm;
  norm.reserve(solutions.size());
  for (const auto& s : solutions) {
    if (s.b != solutions.front().b) throw InvalidArgument("compare_methods: solutions for different b");
    norm.push_back(to_frame(s, frame));
  }

  const Framed& ref = norm.front();
  for (std::size_t k = 1; k < norm.size(); ++k) {
    const Framed& s = norm[k];
    PairAgreement pa;
    pa.reference = ref.source->method;
    pa.method = s.source->method;
    const GradedPoly re = window(ref.exponent, ref, s);
    const GradedPoly se = window(s.exponent, s, ref);
    const GradedPoly rE = window(ref.energy, ref, s);
    const GradedPoly sE = window(s.energy, s, ref);
    pa.compared_terms = std::max(re.size(), se.size()) + std::max(rE.size(), sE.size());
    pa.first_mismatch = first_difference("exponent", re, se);
    if (!pa.first_mismatch) pa.first_mismatch = first_difference("energy", rE, sE);
    pa.agree = !pa.first_mismatch;
    report.pairs.push_back(std::move(pa));
  }

  if (point) {
    for (const auto& s : norm) {
      NumericAgreement na;
      na.method = s.source->method;
      na.series_energy = s.energy.evaluate(point->g, point->mu, 0.0, 0.0);
      na.abs_diff = std::abs(na.series_energy - point->estimate.energy);
      na.rel_diff = na.abs_diff / std::abs(point->estimate.energy);
      report.numeric.push_back(std::move(na));
    }
  }
  return report;
}

}  // namespace stq
