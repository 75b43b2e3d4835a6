#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mecsim/controller.hpp"
#include "mecsim/generator.hpp"

namespace mecsim::cli {

struct ControllerSection {
  std::string policy = "threshold";
  double beta = 1.0;
  std::vector<double> betas;  // compare grid
  std::optional<std::uint64_t> seed;
  std::size_t oracle_budget = oracle::kDefaultBudget;
};

struct OutputSection {
  std::filesystem::path dir = "out";
};

/// Run configuration document with sections generator, solver, controller and
/// output. Every section and field is optional except generator.seed when a
/// scenario is generated.
struct RunConfig {
  std::optional<GeneratorConfig> generator;
  bool generator_has_seed = false;
  SolverConfig solver;
  ControllerSection controller;
  OutputSection output;
};

/// Throws ConfigError naming the offending field.
RunConfig parse_run_config(std::string_view text, std::string_view source = "<memory>");
RunConfig load_run_config(const std::filesystem::path& path);

/// Accepts finite non-negative numbers and "inf"/"infinity".
double parse_beta(std::string_view text);
/// "inf" for infinity, otherwise fmt's shortest round-trip form.
std::string format_beta(double beta);
std::vector<double> parse_beta_list(std::string_view text);

PolicyKind make_policy(std::string_view name, double beta);

}  // namespace mecsim::cli
