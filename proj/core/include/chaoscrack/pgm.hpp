// Binary PGM (P5, maxval 255) reading and writing.
#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "chaoscrack/core.hpp"

namespace chaoscrack {

/// Parses a P5 PGM. Comments (`#` to end of line) are allowed in the header.
/// Throws FormatError on bad magic, maxval != 255 or a truncated payload.
Image load_pgm(std::span<const char> data);
Image load_pgm(const std::string& data);

/// Serializes as "P5\n<w> <h>\n255\n" followed by raw pixels.
std::string save_pgm(const Image& image);

Image read_pgm_file(const std::filesystem::path& path);
void write_pgm_file(const std::filesystem::path& path, const Image& image);

}  // namespace chaoscrack
