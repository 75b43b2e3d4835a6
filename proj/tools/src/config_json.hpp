#pragma once

#include "json.hpp"
#include "mecsim/generator.hpp"
#include "mecsim/relaxed_optimizer.hpp"

namespace mecsim::cli {

nlohmann::json to_json(const SolverConfig& c);
nlohmann::json to_json(const GeneratorConfig& c);

}  // namespace mecsim::cli
