#include "stq/serialize.hpp"

#include <ostream>

#include "stq/errors.hpp"

namespace stq {

namespace {

using ojson = nlohmann::ordered_json;

// g power carried by level `index` of each quantity.
int level_gp(const std::string& quantity, int index) { return quantity == "chi" ? -index : 1 - index; }

ojson levels_to_json(const std::vector<GradedPoly>& levels, const std::string& quantity) {
  ojson arr = ojson::array();
  for (std::size_t k = 0; k < levels.size(); ++k) {
    ojson terms = ojson::array();
    for (const auto& [m, c] : levels[k].terms()) {
      terms.push_back({{"ep", m.ep},
                       {"gp", m.gp + level_gp(quantity, static_cast<int>(k))},
                       {"i", m.i},
                       {"j", m.j},
                       {"coefficient", to_string(c)}});
    }
    arr.push_back(std::move(terms));
  }
  return arr;
}

std::vector<GradedPoly> levels_from_json(const nlohmann::json& arr, const std::string& quantity, Param f) {
  if (!arr.is_array()) throw InvalidArgument("solution json: '" + quantity + "' must be an array of levels");
  std::vector<GradedPoly> levels;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    GradedPoly p(f);
    for (const auto& t : arr[k]) {
      const int gp = t.at("gp").get<int>() - level_gp(quantity, static_cast<int>(k));
      if (gp != 0) throw InvalidArgument("solution json: g power inconsistent with level in '" + quantity + "'");
      p.add_term(Monomial{t.at("ep").get<int>(), 0, t.at("i").get<int>(), t.at("j").get<int>()},
                 parse_rational(t.at("coefficient").get<std::string>()));
    }
    levels.push_back(std::move(p));
  }
  return levels;
}

void csv_levels(std::ostream& os, const SeriesSolution& s, const std::vector<GradedPoly>& levels,
                const std::string& quantity) {
  for (std::size_t k = 0; k < levels.size(); ++k) {
    for (const auto& [m, c] : levels[k].terms()) {
      os << s.method << ',' << quantity << k << ',' << m.ep << ',' << m.gp + level_gp(quantity, static_cast<int>(k))
         << ',' << m.i << ',' << m.j << ',' << to_string(c) << '\n';
    }
  }
}

void text_levels(std::ostream& os, const std::vector<GradedPoly>& levels, const char* name) {
  for (std::size_t k = 0; k < levels.size(); ++k) {
    os << "  " << name << k << " = " << levels[k].to_string() << '\n';
  }
}

std::string slot_string(const Monomial& m) {
  return "(i=" + std::to_string(m.i) + ", j=" + std::to_string(m.j) + ", gp=" + std::to_string(m.gp) +
         ", ep=" + std::to_string(m.ep) + ")";
}

}  // namespace

nlohmann::ordered_json to_json(const SeriesSolution& s) {
  ojson j;
  j["method"] = s.method;
  j["kind"] = std::string(to_string(s.kind));
  j["flavor"] = std::string(to_string(s.flavor));
  j["b"] = to_string(s.b);
  j["order"] = s.order;
  j["depth"] = s.depth ? ojson(*s.depth) : ojson(nullptr);
  j["window_slope"] = s.window_slope;
  j["exponent"] = levels_to_json(s.exponent, "S");
  j["chi"] = levels_to_json(s.chi, "chi");
  j["energies"] = levels_to_json(s.energies, "E");
  return j;
}

SeriesSolution solution_from_json(const nlohmann::json& j) {
  try {
    SeriesSolution s;
    s.method = j.at("method").get<std::string>();
    s.kind = parse_kind(j.at("kind").get<std::string>());
    s.flavor = parse_param(j.at("flavor").get<std::string>());
    s.b = parse_rational(j.at("b").get<std::string>());
    s.order = j.at("order").get<int>();
    if (!j.at("depth").is_null()) s.depth = j.at("depth").get<int>();
    s.window_slope = j.value("window_slope", 0);
    s.exponent = levels_from_json(j.at("exponent"), "S", s.flavor);
    s.chi = levels_from_json(j.value("chi", nlohmann::json::array()), "chi", s.flavor);
    s.energies = levels_from_json(j.at("energies"), "E", s.flavor);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("solution json: ") + e.what());
  }
}

void write_csv(std::ostream& os, const SeriesSolution& s, bool header) {
  if (header) os << "method,quantity,ep,gp,i,j,coefficient\n";
  csv_levels(os, s, s.exponent, "S");
  if (s.kind == SolutionKind::polynomial) csv_levels(os, s, s.chi, "chi");
  csv_levels(os, s, s.energies, "E");
}

void write_text(std::ostream& os, const SeriesSolution& s) {
  os << "method " << s.method << " (" << to_string(s.kind) << ", " << to_string(s.flavor) << "), b = " << to_string(s.b)
     << ", order " << s.order << ", depth " << (s.depth ? std::to_string(*s.depth) : "exact") << '\n';
  text_levels(os, s.exponent, "S");
  if (s.kind == SolutionKind::polynomial) text_levels(os, s.chi, "chi");
  text_levels(os, s.energies, "E");
  os << "  E = " << energy_total(s).to_string() << '\n';
}

nlohmann::ordered_json to_json(const AgreementReport& r) {
  ojson j;
  j["frame"] = std::string(to_string(r.frame));
  j["agree"] = r.all_agree();
  ojson pairs = ojson::array();
  for (const auto& p : r.pairs) {
    ojson pj{{"reference", p.reference}, {"method", p.method}, {"agree", p.agree}, {"compared_terms", p.compared_terms}};
    if (p.first_mismatch) {
      const auto& m = *p.first_mismatch;
      pj["first_mismatch"] = {{"quantity", m.quantity},
                              {"i", m.slot.i},
                              {"j", m.slot.j},
                              {"gp", m.slot.gp},
                              {"ep", m.slot.ep},
                              {"reference", to_string(m.reference)},
                              {"value", to_string(m.value)}};
    }
    pairs.push_back(std::move(pj));
  }
  j["pairs"] = std::move(pairs);
  if (r.point) {
    ojson nj{{"g", r.point->g},
             {"mu", r.point->mu},
             {"fd_energy", r.point->estimate.energy},
             {"fd_residual", r.point->estimate.residual},
             {"fd_grid_energies", r.point->estimate.grid_energies}};
    ojson per = ojson::array();
    for (const auto& n : r.numeric) {
      per.push_back({{"method", n.method},
                     {"series_energy", n.series_energy},
                     {"abs_diff", n.abs_diff},
                     {"rel_diff", n.rel_diff}});
    }
    nj["methods"] = std::move(per);
    j["numeric"] = std::move(nj);
  }
  return j;
}

void write_text(std::ostream& os, const AgreementReport& r) {
  os << "frame " << to_string(r.frame) << ": " << (r.all_agree() ? "all methods agree" : "DISAGREEMENT") << '\n';
  for (const auto& p : r.pairs) {
    os << "  " << p.method << " vs " << p.reference << ": " << (p.agree ? "agree" : "differ") << " ("
       << p.compared_terms << " terms)";
    if (p.first_mismatch) {
      const auto& m = *p.first_mismatch;
      os << "; first mismatch in " << m.quantity << " at " << slot_string(m.slot) << ": " << to_string(m.value)
         << " vs " << to_string(m.reference);
    }
    os << '\n';
  }
  if (r.point) {
    os.precision(12);
    os << "  numeric g = " << r.point->g << ", mu = " << r.point->mu << ": fd energy " << r.point->estimate.energy
       << " (residual " << r.point->estimate.residual << ")\n";
    for (const auto& n : r.numeric) {
      os << "    " << n.method << ": series " << n.series_energy << ", |dE| " << n.abs_diff << ", rel "
         << n.rel_diff << '\n';
    }
  }
}

void write_csv(std::ostream& os, const AgreementReport& r) {
  os << "reference,method,agree,quantity,ep,gp,i,j,reference_value,value\n";
  for (const auto& p : r.pairs) {
    os << p.reference << ',' << p.method << ',' << (p.agree ? 1 : 0);
    if (p.first_mismatch) {
      const auto& m = *p.first_mismatch;
      os << ',' << m.quantity << ',' << m.slot.ep << ',' << m.slot.gp << ',' << m.slot.i << ',' << m.slot.j << ','
         << to_string(m.reference) << ',' << to_string(m.value);
    } else {
      os << ",,,,,,,";
    }
    os << '\n';
  }
}

}  // namespace stq
