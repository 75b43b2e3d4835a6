#include "mecsim_cli/commands.hpp"

#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "config_json.hpp"
#include "mecsim/errors.hpp"
#include "mecsim/scenario_io.hpp"

namespace mecsim::cli {

using nlohmann::json;
namespace fs = std::filesystem;

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const OracleTooLarge*>(&e)) return kExitOracleTooLarge;
  if (dynamic_cast<const Infeasible*>(&e) || dynamic_cast<const EmptyCoverage*>(&e) ||
      dynamic_cast<const NoInteriorPoint*>(&e) || dynamic_cast<const RoundingFailed*>(&e)) {
    return kExitInfeasible;
  }
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const ParseError*>(&e) ||
      dynamic_cast<const DimensionMismatch*>(&e) || dynamic_cast<const NegativeValue*>(&e) ||
      dynamic_cast<const NonPositiveCapacity*>(&e) || dynamic_cast<const UncoverableArea*>(&e)) {
    return kExitConfig;
  }
  return kExitFailure;
}

namespace {

std::string beta_field(const PolicyKind& p) {
  return p.type == PolicyType::kThreshold ? format_beta(p.beta) : std::string();
}

json beta_json(const PolicyKind& p) {
  if (p.type != PolicyType::kThreshold) return nullptr;
  if (std::isinf(p.beta)) return "inf";
  return p.beta;
}

std::string stem_for(const PolicyKind& p) {
  if (p.type == PolicyType::kThreshold) return "threshold-beta" + format_beta(p.beta);
  return p.name();
}

RunConfig resolve_config(const Invocation& inv) {
  RunConfig cfg = inv.config ? load_run_config(*inv.config) : RunConfig{};
  if (inv.policy) cfg.controller.policy = *inv.policy;
  if (inv.beta) cfg.controller.beta = *inv.beta;
  if (inv.betas) cfg.controller.betas = *inv.betas;
  if (inv.seed) cfg.controller.seed = *inv.seed;
  if (inv.out) cfg.output.dir = *inv.out;
  if (inv.max_iters) cfg.solver.max_iterations = *inv.max_iters;
  if (inv.tol) {
    if (!(*inv.tol > 0.0)) throw ConfigError("--tol must be positive");
    cfg.solver.gap_tolerance = *inv.tol;
  }
  if (inv.margin) {
    if (!(*inv.margin >= 0.0)) throw ConfigError("--margin must be non-negative");
    cfg.solver.margin = *inv.margin;
  }
  return cfg;
}

GeneratorConfig generator_of(const RunConfig& cfg) {
  if (!cfg.generator) throw ConfigError("generator: section missing");
  if (!cfg.generator_has_seed) throw ConfigError("generator.seed: missing");
  return *cfg.generator;
}

// Loads --scenario, or generates from the config (saving a copy in the output
// directory) when no scenario file is given.
Scenario resolve_scenario(const Invocation& inv, const RunConfig& cfg, std::ostream& out) {
  if (inv.scenario) return load(*inv.scenario);
  if (!cfg.generator) {
    throw ConfigError("--scenario is required unless the config has a generator section");
  }
  Scenario s = generate(generator_of(cfg));
  fs::create_directories(cfg.output.dir);
  const fs::path path = cfg.output.dir / "scenario.json";
  save(s, path);
  out << fmt::format("generated {}\n", path.string());
  return s;
}

ControllerConfig controller_config(const RunConfig& cfg) {
  ControllerConfig c;
  c.solver = cfg.solver;
  c.solver.restart_seed = cfg.controller.seed.value_or(0);
  c.oracle.budget = cfg.controller.oracle_budget;
  c.oracle.margin = cfg.solver.margin;
  return c;
}

json summary_document(const Scenario& s, const RunRecord& r, std::uint64_t seed,
                      const ControllerConfig& config) {
  DelayBreakdown sum;
  std::size_t solves = 0, iterations = 0, restarts = 0, attempts = 0, repairs = 0;
  double max_gap = 0.0;
  for (const SlotOutcome& o : r.outcomes) {
    sum.switching += o.delay.switching;
    sum.queuing += o.delay.queuing;
    sum.communication += o.delay.communication;
    sum.non_switching += o.delay.non_switching;
    sum.total += o.delay.total;
    if (o.solver.objective_trace.empty()) continue;
    ++solves;
    iterations += o.solver.iterations;
    restarts += o.solver.restarts;
    attempts += o.solver.rounding_attempts;
    repairs += o.solver.repair_actions;
    max_gap = std::max(max_gap, o.solver.gap);
  }
  const json stats{{"solves", solves},
               {"iterations", iterations},
               {"restarts", restarts},
               {"rounding_attempts", attempts},
               {"repair_actions", repairs},
               {"max_gap", max_gap}};

  json cfg{{"policy", r.policy.name()},
           {"beta", beta_json(r.policy)},
           {"seed", seed},
           {"solver", to_json(config.solver)},
           {"oracle_budget", config.oracle.budget}};
  const std::string digest = scenario_digest(s);
  const std::string run_id = sha256_hex(digest + "\n" + cfg.dump()).substr(0, 16);
  return json{{"run_id", run_id},
              {"scenario",
               {{"digest", digest},
                {"num_clouds", s.num_clouds},
                {"num_users", s.num_users},
                {"num_slots", s.num_slots}}},
              {"config", cfg},
              {"totals",
               {{"switching", sum.switching},
                {"queuing", sum.queuing},
                {"communication", sum.communication},
                {"non_switching", sum.non_switching},
                {"total", sum.total}}},
              {"migrations", r.migrations},
              {"forced_migrations", r.forced},
              {"solver", stats}};
}

void write_record(const fs::path& dir, const RunRecord& r) {
  fs::create_directories(dir);
  write_file_atomic(dir / (r.stem + ".csv"), r.csv);
  write_file_atomic(dir / (r.stem + ".summary.json"), r.summary);
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace

std::string metrics_csv(const std::vector<SlotOutcome>& outcomes, const PolicyKind& policy) {
  std::string csv = std::string(kCsvHeader) + "\n";
  const std::string name = policy.name();
  const std::string beta = beta_field(policy);
  double cum = 0.0;
  for (const SlotOutcome& o : outcomes) {
    cum += o.delay.total;
    csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", o.slot, name, beta,
                       o.migrated ? 1 : 0, o.forced ? 1 : 0, o.delay.switching, o.delay.queuing,
                       o.delay.communication, o.delay.non_switching, o.delay.total, cum);
  }
  return csv;
}

RunRecord execute_run(const Scenario& s, const PolicyKind& policy, std::uint64_t seed,
                      const ControllerConfig& config) {
  RunRecord r;
  r.policy = policy;
  r.outcomes = run_policy(s, policy, seed, config);
  r.stem = stem_for(policy);
  for (const SlotOutcome& o : r.outcomes) {
    r.total += o.delay.total;
    r.migrations += o.migrated ? 1 : 0;
    r.forced += o.forced ? 1 : 0;
  }
  r.csv = metrics_csv(r.outcomes, policy);
  r.summary = summary_document(s, r, seed, config).dump(2) + "\n";
  return r;
}

int cmd_generate(const Invocation& inv, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!inv.config) throw ConfigError("--config is required");
    const RunConfig cfg = resolve_config(inv);
    GeneratorConfig g = generator_of(cfg);
    if (inv.seed) g.seed = *inv.seed;
    const fs::path path = inv.out ? *inv.out : cfg.output.dir / "scenario.json";
    const Scenario s = generate(g);
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    save(s, path);
    out << fmt::format("M={} N={} tau={} seed={} -> {}\n", s.num_clouds, s.num_users,
                       s.num_slots, g.seed, path.string());
    return int(kExitOk);
  });
}

int cmd_run(const Invocation& inv, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = resolve_config(inv);
    const PolicyKind policy = make_policy(cfg.controller.policy, cfg.controller.beta);
    const Scenario s = resolve_scenario(inv, cfg, out);
    const std::uint64_t seed = cfg.controller.seed.value_or(0);
    const RunRecord r = execute_run(s, policy, seed, controller_config(cfg));
    write_record(cfg.output.dir, r);
    out << fmt::format("{}: total={} migrations={} forced={} -> {}\n", r.stem, r.total,
                       r.migrations, r.forced, (cfg.output.dir / (r.stem + ".csv")).string());
    return int(kExitOk);
  });
}

int cmd_compare(const Invocation& inv, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = resolve_config(inv);
    const Scenario s = resolve_scenario(inv, cfg, out);
    const std::uint64_t seed = cfg.controller.seed.value_or(0);
    const ControllerConfig cc = controller_config(cfg);

    std::vector<PolicyKind> policies;
    for (double b : cfg.controller.betas) policies.push_back(PolicyKind::threshold(b));
    policies.push_back(PolicyKind::always_migrate());
    policies.push_back(PolicyKind::never_migrate());
    if (oracle::fits_budget(s, cc.oracle)) policies.push_back(PolicyKind::offline_oracle());

    std::string table = "policy,beta,total,migrations,forced\n";
    out << fmt::format("{:<10} {:>6} {:>14} {:>10} {:>7}\n", "policy", "beta", "total",
                       "migrations", "forced");
    for (const PolicyKind& p : policies) {
      const RunRecord r = execute_run(s, p, seed, cc);
      write_record(cfg.output.dir, r);
      table += fmt::format("{},{},{},{},{}\n", p.name(), beta_field(p), r.total, r.migrations,
                           r.forced);
      out << fmt::format("{:<10} {:>6} {:>14.6f} {:>10} {:>7}\n", p.name(), beta_field(p),
                         r.total, r.migrations, r.forced);
    }
    write_file_atomic(cfg.output.dir / "comparison.csv", table);
    return int(kExitOk);
  });
}

}  // namespace mecsim::cli
