#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "mecsim/types.hpp"

namespace mecsim {

/// Canonical text form (JSON, two-space indent, trailing newline).
std::string to_text(const Scenario& s);

/// Parses and validates a scenario document. Throws ParseError naming the
/// line/column or the offending field, then any validate_scenario error.
Scenario from_text(std::string_view text, std::string_view source = "<memory>");

Scenario load(const std::filesystem::path& path);

/// Writes to a temporary sibling and renames it into place.
void save(const Scenario& s, const std::filesystem::path& path);

/// Hex SHA-256 of the canonical text form.
std::string scenario_digest(const Scenario& s);

/// Hex SHA-256 of arbitrary bytes.
std::string sha256_hex(std::string_view bytes);

/// Atomic whole-file write (temp + rename).
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace mecsim
