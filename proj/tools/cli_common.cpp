#include "cli_common.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "monoforge/errors.hpp"

namespace monoforge::cli {

void Report::rng_stream(const std::string& what, std::uint64_t stream) { streams_[what] = stream; }

void Report::check(const std::string& id, bool pass, Json detail) {
  Json c;
  c["id"] = id;
  c["pass"] = pass;
  if (!detail.is_null()) c["detail"] = std::move(detail);
  checks_.push_back(std::move(c));
  all_pass_ = all_pass_ && pass;
}

Json Report::to_json(std::optional<std::uint64_t> seed, std::optional<double> wall_seconds) const {
  Json j;
  j["command"] = command_;
  j["config"] = config_;
  j["checks"] = checks_;
  j["all_pass"] = all_pass_;
  j["results"] = results_;
  Json prov;
  prov["version"] = MONOFORGE_VERSION;
  prov["git"] = MONOFORGE_GIT_HASH;
  if (seed) {
    prov["seed"] = *seed;
    prov["streams"] = streams_;
  }
  j["provenance"] = prov;
  if (wall_seconds) j["wall_time_s"] = *wall_seconds;
  return j;
}

std::uint64_t Context::seed() const {
  if (!g.seed) throw UsageError("this command is randomized: pass --seed <u64>");
  return *g.seed;
}

bool Context::exact_mode() const {
  if (g.mode == "exact") return true;
  if (g.mode == "mc") return false;
  throw UsageError("--mode must be 'exact' or 'mc'");
}

std::size_t term_cap() {
  if (const char* env = std::getenv("MONOFORGE_TERM_CAP")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw UsageError("MONOFORGE_TERM_CAP must be a non-negative integer");
  }
  return 2000000;
}

Rational parse_rational_flag(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::exception&) {
    throw UsageError(flag + ": not a rational number: '" + text + "'");
  }
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(static_cast<std::size_t>(std::stoull(item, &used)));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("not an index list: '" + text + "'");
    }
  }
  return out;
}

namespace {
std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return in;
}
}  // namespace

graph::Graph load_graph(const std::string& path, const std::string& named) {
  if (!path.empty() && !named.empty()) throw UsageError("pass either --graph or --named, not both");
  if (!named.empty()) {
    return graph::named_graph(named);
  }
  if (path.empty()) throw UsageError("a graph is required: --graph <file> or --named <name>");
  auto in = open_input(path);
  return graph::read_graph(in);
}

linalg::BitMatrix load_f2_matrix(const std::string& path) {
  auto in = open_input(path);
  return linalg::read_f2_matrix(in);
}

rank::RealMatrix01 load_q01(const std::string& path) {
  auto in = open_input(path);
  return rank::read_q01(in);
}

Json load_json(const std::string& path) {
  auto in = open_input(path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string file_kind(const std::string& path) {
  auto in = open_input(path);
  std::string tok;
  in >> tok;
  return tok;
}

approx::Dist parse_dist(const std::string& spec, std::size_t n) {
  using approx::Dist;
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  try {
    if (kind == "uniform") return Dist::uniform(n);
    if (kind == "weight") return Dist::uniform_weight(n, static_cast<std::size_t>(std::stoull(arg)));
    if (kind == "point") {
      if (arg.size() != n) throw UsageError("point distribution needs a bit string of length " + std::to_string(n));
      approx::Mask x = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (arg[i] != '0' && arg[i] != '1') throw UsageError("point distribution expects 0/1 characters");
        if (arg[i] == '1') x |= approx::Mask{1} << i;
      }
      return Dist::point_mass(n, x);
    }
    if (kind == "d0-f2" || kind == "d0-real") {
      Dist d = kind == "d0-f2" ? Dist::d0_f2(load_f2_matrix(arg)) : Dist::d0_real(load_q01(arg));
      if (d.n() != n)
        throw UsageError(kind + " matrix has " + std::to_string(d.n()) + " columns, expected " + std::to_string(n));
      return d;
    }
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::out_of_range*>(&e))
      throw UsageError("bad distribution spec '" + spec + "': " + e.what());
    throw;
  }
  throw UsageError("unknown distribution '" + spec + "' (uniform, weight:W, point:BITS, d0-f2:FILE, d0-real:FILE)");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

}  // namespace monoforge::cli
