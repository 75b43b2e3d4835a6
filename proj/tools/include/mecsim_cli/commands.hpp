#pragma once

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mecsim/controller.hpp"
#include "mecsim_cli/run_config.hpp"

namespace mecsim::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitInfeasible = 3,
  kExitOracleTooLarge = 4,
};

/// Maps a library error onto the exit-code contract.
int exit_code_for(const std::exception& e);

/// Command-line overrides; unset fields fall back to the config file.
struct Invocation {
  std::optional<std::filesystem::path> scenario;
  std::optional<std::filesystem::path> config;
  std::optional<std::string> policy;
  std::optional<double> beta;
  std::optional<std::vector<double>> betas;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out;
  std::optional<std::size_t> max_iters;
  std::optional<double> tol;
  std::optional<double> margin;
};

inline constexpr const char* kCsvHeader =
    "slot,policy,beta,migrated,forced,switching,queuing,communication,non_switching,total,"
    "cum_total";

/// Per-slot metrics table, header included.
std::string metrics_csv(const std::vector<SlotOutcome>& outcomes, const PolicyKind& policy);

struct RunRecord {
  PolicyKind policy;
  std::vector<SlotOutcome> outcomes;
  std::string stem;  // file name stem, e.g. threshold-beta0.5
  std::string csv;
  std::string summary;
  double total = 0.0;
  std::size_t migrations = 0;
  std::size_t forced = 0;
};

RunRecord execute_run(const Scenario& s, const PolicyKind& policy, std::uint64_t seed,
                      const ControllerConfig& config);

// Each command reports progress on `out`, diagnostics on `err`, and returns an
// exit code. Library errors never escape.
int cmd_generate(const Invocation& inv, std::ostream& out, std::ostream& err);
int cmd_run(const Invocation& inv, std::ostream& out, std::ostream& err);
int cmd_compare(const Invocation& inv, std::ostream& out, std::ostream& err);

}  // namespace mecsim::cli
