#include "stq/series_solution.hpp"

#include "stq/errors.hpp"

namespace stq {

std::string_view to_string(SolutionKind k) {
  return k == SolutionKind::exponential ? "exponential" : "polynomial";
}

SolutionKind parse_kind(std::string_view s) {
  if (s == "exponential") return SolutionKind::exponential;
  if (s == "polynomial") return SolutionKind::polynomial;
  throw InvalidArgument("unknown solution kind: " + std::string(s));
}

int SeriesSolution::max_level(int ep) const {
  if (!depth) return kUnboundedLevel;
  return *depth + 1 + window_slope * ep;
}

GradedPoly exponent_total(const SeriesSolution& s) {
  GradedPoly t(s.flavor);
  for (std::size_t i = 0; i < s.exponent.size(); ++i) {
    t += s.exponent[i].shifted(1 - static_cast<int>(i), 0);
  }
  return t;
}

GradedPoly chi_total(const SeriesSolution& s) {
  GradedPoly t(s.flavor);
  if (s.kind == SolutionKind::exponential) {
    throw InvalidArgument("chi_total: exponential-kind solution has no chi levels");
  }
  for (std::size_t k = 0; k < s.chi.size(); ++k) {
    t += s.chi[k].shifted(-static_cast<int>(k), 0);
  }
  return t;
}

GradedPoly energy_total(const SeriesSolution& s) {
  GradedPoly t(s.flavor);
  for (std::size_t i = 0; i < s.energies.size(); ++i) {
    t += s.energies[i].shifted(1 - static_cast<int>(i), 0);
  }
  return t;
}

std::vector<GradedPoly> split_levels(const GradedPoly& total, int offset, Param param) {
  std::vector<GradedPoly> levels;
  for (const auto& [m, c] : total.terms()) {
    const int level = offset - m.gp;
    if (level < 0) {
      throw InvalidArgument("split_levels: term " + GradedPoly::monomial(c, m.i, m.j, m.gp, m.ep, param).to_string() +
                            " has no level representation");
    }
    if (static_cast<int>(levels.size()) <= level) levels.resize(level + 1, GradedPoly(param));
    levels[level].add_term(Monomial{m.ep, 0, m.i, m.j}, c);
  }
  for (auto& l : levels) l = l.with_param(param);
  return levels;
}

GradedPoly truncate_window(const GradedPoly& p, int max_ep, std::optional<int> min_gp) {
  GradedPoly r(p.param());
  for (const auto& [m, c] : p.terms()) {
    if (max_ep >= 0 && m.ep > max_ep) continue;
    if (min_gp && m.gp < *min_gp) continue;
    r.add_term(m, c);
  }
  return r;
}

}  // namespace stq
