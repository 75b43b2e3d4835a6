#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "mecsim/scenario_io.hpp"
#include "mecsim/types.hpp"

namespace mecsim::testing {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(MECSIM_TEST_DATA_DIR) / name;
}

inline nlohmann::json load_json(const std::string& name) {
  std::ifstream in(data_path(name));
  std::ostringstream buf;
  buf << in.rdbuf();
  return nlohmann::json::parse(buf.str());
}

inline Scenario scenario_from(const nlohmann::json& j) { return from_text(j.dump()); }

inline SlotDecision decision_from(const nlohmann::json& j) {
  return {j.at("placement").get<std::vector<std::size_t>>(),
          j.at("selection").get<std::vector<std::size_t>>()};
}

inline double number_from(const nlohmann::json& j) {
  return j.is_string() ? kInfinity : j.get<double>();
}

}  // namespace mecsim::testing
