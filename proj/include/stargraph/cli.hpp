#ifndef STARGRAPH_CLI_HPP
#define STARGRAPH_CLI_HPP

// Command-line front end. Every subcommand maps an ExperimentConfig to a JSON
// document that depends only on (config, seed), never on the worker count.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stargraph/graph.hpp"
#include "stargraph/subordinator.hpp"

namespace stargraph::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "stargraph/1";
inline constexpr std::uint64_t kDefaultSeed = 20260101;

struct ExperimentConfig {
  int edges = 3;
  std::vector<double> probs;  // empty: uniform
  std::string process;        // standard | sticky | trapped; empty: inferred
  std::optional<double> b;
  std::optional<double> c;
  std::optional<double> theta;
  std::string subordinator = "elementary";
  std::size_t paths = 10000;
  double dt = 1e-4;
  double horizon = 1.0;
  double r = 1.0;
  double lambda = 0.5;
  double decay = 1.0;  // f(j, y) = exp(-decay y) for the resolvent
  std::vector<double> t;
  int start_edge = 1;
  double start_radius = 0.0;
  double budget = 5.0;
  double threshold = 0.1;
  std::vector<double> alphas{0.3, 0.5, 0.8};
  std::vector<double> lambdas{0.1, 1.0, 10.0};
  std::vector<double> gamma{1.0, 1.0};
  double bump_center = 1.0;
  double bump_width = 0.15;
  double solver_R = 0.0;  // 0: pick from the horizon and the data support
  int solver_M = 4000;
  double solver_dt = 1e-4;
  int every = 1;
  std::uint64_t seed = kDefaultSeed;
  int workers = 1;
  std::string out;
  std::string csv;
  bool check = false;

  StarGraph graph() const;
  StickyParams sticky() const;
  Subordinator spec() const;
  GraphPoint start() const;
  /// Echo of every field that influences results (workers and paths of
  /// output files excluded).
  Json to_json() const;
};

/// Unknown keys and wrongly typed values throw std::invalid_argument naming the key.
void apply_json(ExperimentConfig& cfg, const Json& doc);

struct Outcome {
  Json doc;
  bool pass = true;
  std::string csv;  // optional CSV artifact
};

Outcome run_exit(const ExperimentConfig& cfg);
Outcome run_holding(const ExperimentConfig& cfg);
Outcome run_resolvent(const ExperimentConfig& cfg);
Outcome run_excursions(const ExperimentConfig& cfg);
Outcome run_pde(const ExperimentConfig& cfg);
Outcome run_kernels(const ExperimentConfig& cfg);
Outcome run_simulate(const ExperimentConfig& cfg);

/// Full front end: parses argv, merges flags over config file over
/// STARGRAPH_SEED over defaults, runs and writes output. Returns 0 on success,
/// 1 on usage or validation errors and 3 when --check finds a failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stargraph::cli

#endif  // STARGRAPH_CLI_HPP
