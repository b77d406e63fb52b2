// Line-oriented `name=value` key files.
//
// Secret key fields: algorithm, n0, alpha, m, h, x0, c, q0, beta.
// Equivalent key fields: n0, c, z, y_long.
// Vectors are comma-separated decimal literals. Blank lines and lines
// starting with '#' are ignored. Unknown field names are rejected.
#pragma once

#include <filesystem>
#include <string>

#include "chaoscrack/core.hpp"

namespace chaoscrack {

/// Parses and validates a secret key. `algorithm` defaults to ieatd when absent.
SecretKey load_key(const std::string& text);
std::string save_key(const SecretKey& key);

EquivalentKey load_equivalent_key(const std::string& text);
std::string save_equivalent_key(const EquivalentKey& key);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace chaoscrack
