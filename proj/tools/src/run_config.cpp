#include "mecsim_cli/run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include "config_json.hpp"
#include "mecsim/errors.hpp"

namespace mecsim::cli {

using nlohmann::json;

namespace {

// Typed field access with path diagnostics; unknown keys are rejected.
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(fmt::format("{}: expected an object", path_));
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return node_.contains(key);
  }

  template <typename T>
  void read(const std::string& key, T& out) {
    if (!has(key)) return;
    const json& v = node_.at(key);
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) fail(key, "expected a boolean");
      out = v.get<bool>();
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        fail(key, "expected a non-negative integer");
      }
      out = v.get<T>();
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) fail(key, "expected a number");
      out = v.get<double>();
    } else {
      if (!v.is_string()) fail(key, "expected a string");
      out = v.get<std::string>();
    }
  }

  const json& at(const std::string& key) {
    seen_.insert(key);
    return node_.at(key);
  }

  std::string field(const std::string& key) const { return path_ + "." + key; }

  [[noreturn]] void fail(const std::string& key, std::string_view what) const {
    throw ConfigError(fmt::format("{}: {}", field(key), what));
  }

  void reject_unknown() const {
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.contains(key)) throw ConfigError(fmt::format("{}: unknown field", field(key)));
    }
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

double beta_value(const json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return parse_beta(v.get<std::string>());
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("{}: {}", where, e.what()));
    }
  }
  if (!v.is_number()) throw ConfigError(fmt::format("{}: expected a number or \"inf\"", where));
  const double b = v.get<double>();
  if (!(b >= 0.0)) throw ConfigError(fmt::format("{}: must be non-negative", where));
  return b;
}

GeneratorConfig read_generator(Section& sec, bool& has_seed) {
  GeneratorConfig g;
  sec.read("grid_rows", g.grid_rows);
  sec.read("grid_cols", g.grid_cols);
  sec.read("spacing", g.spacing);
  sec.read("coverage_radius", g.coverage_radius);
  sec.read("speed_min", g.speed_min);
  sec.read("speed_max", g.speed_max);
  sec.read("pause_min", g.pause_min);
  sec.read("pause_max", g.pause_max);
  sec.read("demand_min", g.demand_min);
  sec.read("demand_max", g.demand_max);
  sec.read("size_min", g.size_min);
  sec.read("size_max", g.size_max);
  sec.read("bs_capacity_min", g.bs_capacity_min);
  sec.read("bs_capacity_max", g.bs_capacity_max);
  sec.read("cloud_capacity_min", g.cloud_capacity_min);
  sec.read("cloud_capacity_max", g.cloud_capacity_max);
  sec.read("latency_per_hop", g.latency_per_hop);
  sec.read("num_users", g.num_users);
  sec.read("num_slots", g.num_slots);
  has_seed = sec.has("seed");
  sec.read("seed", g.seed);
  sec.reject_unknown();
  return g;
}

void read_solver(Section& sec, SolverConfig& c) {
  sec.read("margin", c.margin);
  sec.read("gap_tolerance", c.gap_tolerance);
  sec.read("max_iterations", c.max_iterations);
  sec.read("residual_tolerance", c.residual_tolerance);
  sec.read("max_rounding_attempts", c.max_rounding_attempts);
  sec.read("max_step_halvings", c.max_step_halvings);
  sec.read("restarts", c.restarts);
  sec.read("polish", c.polish);
  sec.reject_unknown();
  if (!(c.margin >= 0.0)) sec.fail("margin", "must be non-negative");
  if (!(c.gap_tolerance > 0.0)) sec.fail("gap_tolerance", "must be positive");
}

void read_controller(Section& sec, ControllerSection& c) {
  sec.read("policy", c.policy);
  if (sec.has("beta")) c.beta = beta_value(sec.at("beta"), sec.field("beta"));
  if (sec.has("betas")) {
    const json& list = sec.at("betas");
    if (!list.is_array()) sec.fail("betas", "expected an array");
    for (std::size_t n = 0; n < list.size(); ++n) {
      c.betas.push_back(beta_value(list[n], fmt::format("{}[{}]", sec.field("betas"), n)));
    }
  }
  if (sec.has("seed")) {
    std::uint64_t seed = 0;
    sec.read("seed", seed);
    c.seed = seed;
  }
  sec.read("oracle_budget", c.oracle_budget);
  sec.reject_unknown();
  make_policy(c.policy, c.beta);
}

}  // namespace

RunConfig parse_run_config(std::string_view text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("{}: {}", source, e.what()));
  }
  RunConfig cfg;
  Section root(doc, std::string(source));
  if (root.has("generator")) {
    Section sec(root.at("generator"), "generator");
    cfg.generator = read_generator(sec, cfg.generator_has_seed);
  }
  if (root.has("solver")) {
    Section sec(root.at("solver"), "solver");
    read_solver(sec, cfg.solver);
  }
  if (root.has("controller")) {
    Section sec(root.at("controller"), "controller");
    read_controller(sec, cfg.controller);
  }
  if (root.has("output")) {
    Section sec(root.at("output"), "output");
    std::string dir = cfg.output.dir.string();
    sec.read("dir", dir);
    cfg.output.dir = dir;
    sec.reject_unknown();
  }
  root.reject_unknown();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("{}: cannot open file", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str(), path.string());
}

double parse_beta(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return kInfinity;
  std::size_t used = 0;
  double b = 0.0;
  try {
    b = std::stod(std::string(text), &used);
  } catch (const std::exception&) {
    throw ConfigError(fmt::format("beta '{}' is not a number", text));
  }
  if (used != text.size()) throw ConfigError(fmt::format("beta '{}' is not a number", text));
  if (!(b >= 0.0)) throw ConfigError(fmt::format("beta '{}' must be non-negative", text));
  return b;
}

std::string format_beta(double beta) {
  return std::isinf(beta) ? std::string("inf") : fmt::format("{}", beta);
}

std::vector<double> parse_beta_list(std::string_view text) {
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    if (!item.empty()) out.push_back(parse_beta(item));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

PolicyKind make_policy(std::string_view name, double beta) {
  if (name == "threshold") return PolicyKind::threshold(beta);
  if (name == "always") return PolicyKind::always_migrate();
  if (name == "never") return PolicyKind::never_migrate();
  if (name == "oracle") return PolicyKind::offline_oracle();
  throw ConfigError(
      fmt::format("policy '{}' is not one of threshold, always, never, oracle", name));
}

json to_json(const SolverConfig& c) {
  return json{{"margin", c.margin},
              {"gap_tolerance", c.gap_tolerance},
              {"max_iterations", c.max_iterations},
              {"residual_tolerance", c.residual_tolerance},
              {"max_rounding_attempts", c.max_rounding_attempts},
              {"max_step_halvings", c.max_step_halvings},
              {"restarts", c.restarts},
              {"polish", c.polish}};
}

json to_json(const GeneratorConfig& g) {
  return json{{"grid_rows", g.grid_rows},
              {"grid_cols", g.grid_cols},
              {"spacing", g.spacing},
              {"coverage_radius", g.coverage_radius},
              {"speed_min", g.speed_min},
              {"speed_max", g.speed_max},
              {"pause_min", g.pause_min},
              {"pause_max", g.pause_max},
              {"demand_min", g.demand_min},
              {"demand_max", g.demand_max},
              {"size_min", g.size_min},
              {"size_max", g.size_max},
              {"bs_capacity_min", g.bs_capacity_min},
              {"bs_capacity_max", g.bs_capacity_max},
              {"cloud_capacity_min", g.cloud_capacity_min},
              {"cloud_capacity_max", g.cloud_capacity_max},
              {"latency_per_hop", g.latency_per_hop},
              {"num_users", g.num_users},
              {"num_slots", g.num_slots},
              {"seed", g.seed}};
}

}  // namespace mecsim::cli
