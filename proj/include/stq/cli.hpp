#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stq/rational.hpp"
#include "stq/series_solution.hpp"

namespace stq {

inline constexpr int kExitAgree = 0;
inline constexpr int kExitDisagree = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitConvergence = 3;

struct RunConfig {
  std::string method = "hierarchy";
  Rational b = 1;
  int order = 2;
  std::optional<int> depth;  // method default when empty; for compare/report the mu-hierarchy depth
  std::optional<double> g;
  std::optional<double> mu;
  std::vector<double> sweep;
  int grid = 81;
  int grid_levels = 3;
  std::string format = "json";
  std::vector<std::string> methods;
  std::string frame = "mu";
  double rtol = 1e-4;
  double min_order = 2.5;
};

const std::vector<std::string>& known_methods();
const std::vector<std::string>& symbolic_methods();  // every pipeline except the rs oracle

// Throws InvalidArgument on any violated precondition.
void validate(const RunConfig& c);

// Fields present in the document overwrite `base`.
RunConfig merge_config(RunConfig base, const nlohmann::json& doc);

int default_depth(const std::string& method, int order);

// Runs one pipeline. `depth` empty means the method default.
SeriesSolution run_method(const std::string& method, const Rational& b, int order, std::optional<int> depth);

// Full command-line entry point; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stq
