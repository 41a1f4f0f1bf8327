#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "stq/compare.hpp"
#include "stq/series_solution.hpp"

namespace stq {

// Exact coefficients travel as "p/q" strings. Each term also records the
// explicit power of g it carries in the assembled series, so a level's g
// order is readable without knowing the level convention.
nlohmann::ordered_json to_json(const SeriesSolution& s);
SeriesSolution solution_from_json(const nlohmann::json& j);

// One row per term: method,quantity,ep,gp,i,j,coefficient.
void write_csv(std::ostream& os, const SeriesSolution& s, bool header = true);
void write_text(std::ostream& os, const SeriesSolution& s);

nlohmann::ordered_json to_json(const AgreementReport& r);
void write_text(std::ostream& os, const AgreementReport& r);
void write_csv(std::ostream& os, const AgreementReport& r);

}  // namespace stq
