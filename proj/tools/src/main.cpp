#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "mecsim_cli/commands.hpp"
#include "mecsim/errors.hpp"

namespace {

using mecsim::cli::Invocation;

void add_solver_flags(CLI::App* cmd, Invocation& inv) {
  cmd->add_option("--max-iters", inv.max_iters, "Conditional-gradient iteration cap");
  cmd->add_option("--tol", inv.tol, "Relative duality-gap tolerance");
  cmd->add_option("--margin", inv.margin, "Base-station capacity margin");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Service placement and migration simulator"};
  app.require_subcommand(1);

  Invocation inv;
  std::string beta_text;
  std::string beta_list;

  auto* gen = app.add_subcommand("generate", "Generate a synthetic scenario from a run config");
  gen->add_option("--config", inv.config, "Run configuration file")->required();
  gen->add_option("--out", inv.out, "Scenario file to write");
  gen->add_option("--seed", inv.seed, "Override generator.seed");

  auto* run = app.add_subcommand("run", "Run one policy over a scenario");
  run->add_option("--scenario", inv.scenario, "Scenario file");
  run->add_option("--config", inv.config, "Run configuration file");
  run->add_option("--policy", inv.policy, "threshold | always | never | oracle");
  run->add_option("--beta", beta_text, "Tolerance factor (number or inf)");
  run->add_option("--seed", inv.seed, "Run seed");
  run->add_option("--out", inv.out, "Output directory");
  add_solver_flags(run, inv);

  auto* cmp = app.add_subcommand("compare", "Run the threshold policy over a beta grid plus baselines");
  cmp->add_option("--scenario", inv.scenario, "Scenario file");
  cmp->add_option("--config", inv.config, "Run configuration file");
  cmp->add_option("--beta", beta_list, "Comma-separated beta grid, e.g. 0,1,inf");
  cmp->add_option("--seed", inv.seed, "Run seed");
  cmp->add_option("--out", inv.out, "Output directory");
  add_solver_flags(cmp, inv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : mecsim::cli::kExitConfig;
  }

  try {
    if (!beta_text.empty()) inv.beta = mecsim::cli::parse_beta(beta_text);
    if (cmp->parsed() && cmp->count("--beta") > 0) {
      inv.betas = mecsim::cli::parse_beta_list(beta_list);
    }
  } catch (const mecsim::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return mecsim::cli::kExitConfig;
  }

  if (gen->parsed()) return mecsim::cli::cmd_generate(inv, std::cout, std::cerr);
  if (run->parsed()) return mecsim::cli::cmd_run(inv, std::cout, std::cerr);
  return mecsim::cli::cmd_compare(inv, std::cout, std::cerr);
}
