#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "monoforge/algebra/rational.hpp"
#include "monoforge/approx/distribution.hpp"
#include "monoforge/graph/graph.hpp"
#include "monoforge/linalg/bitmatrix.hpp"
#include "monoforge/rank/real_matrix.hpp"

namespace monoforge::cli {

using Json = nlohmann::ordered_json;

/// Bad flags or inputs detected by the CLI itself (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ordered report: config echo, checks in execution order, results, provenance.
class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  Json& config() { return config_; }
  Json& results() { return results_; }
  /// Records that `stream` of the run seed fed `what`.
  void rng_stream(const std::string& what, std::uint64_t stream);
  void check(const std::string& id, bool pass, Json detail = nullptr);
  bool all_pass() const noexcept { return all_pass_; }
  const Json& checks() const noexcept { return checks_; }

  Json to_json(std::optional<std::uint64_t> seed, std::optional<double> wall_seconds) const;

 private:
  std::string command_;
  Json config_ = Json::object();
  Json checks_ = Json::array();
  Json results_ = Json::object();
  Json streams_ = Json::object();
  bool all_pass_ = true;
};

/// Options shared by every subcommand.
struct Globals {
  std::optional<std::uint64_t> seed;
  std::size_t trials = 0;  // 0: command default
  std::string mode = "exact";
  std::string out;
  std::string preset;
  int threads = 0;
  bool timing = false;
  bool quiet = false;
};

struct Context {
  Globals g;
  std::function<void(Report&)> action;
  std::string command;

  std::uint64_t seed() const;  // UsageError when --seed is missing
  std::size_t trials(std::size_t fallback) const { return g.trials ? g.trials : fallback; }
  bool exact_mode() const;     // validates --mode
};

/// Expansion budget: MONOFORGE_TERM_CAP if set, else 2,000,000 terms.
std::size_t term_cap();

Rational parse_rational_flag(const std::string& flag, const std::string& text);
std::vector<std::size_t> parse_index_list(const std::string& text);

graph::Graph load_graph(const std::string& path, const std::string& named);
linalg::BitMatrix load_f2_matrix(const std::string& path);
rank::RealMatrix01 load_q01(const std::string& path);
Json load_json(const std::string& path);
/// First whitespace-separated token of a file ("f2", "q01", ...).
std::string file_kind(const std::string& path);

/// Distribution specs: uniform | weight:W | point:BITS | d0-f2:FILE | d0-real:FILE
approx::Dist parse_dist(const std::string& spec, std::size_t n);

void write_text(const std::string& path, const std::string& text);

void register_poly(CLI::App& app, Context& ctx);
void register_code(CLI::App& app, Context& ctx);
void register_rank(CLI::App& app, Context& ctx);
void register_approx(CLI::App& app, Context& ctx);
void register_experiment(CLI::App& app, Context& ctx);

/// Runs one preset pipeline into the report. Each stage is labeled on failure.
void run_preset(const std::string& name, Context& ctx, Report& rep);

}  // namespace monoforge::cli
