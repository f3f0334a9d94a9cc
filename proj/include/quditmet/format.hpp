// format.hpp — deterministic numeric formatting, checksums, atomic file writes.

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace quditmet {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 17 significant digits; infinities print as the literal token "inf".
std::string format_number(double value);

// FNV-1a 64-bit, hex-encoded.
std::string fnv1a_hex(std::string_view bytes);

// Write via temp file + rename so readers never observe a partial file.
// Throws IoError on failure.
void atomic_write(const std::filesystem::path& path, std::string_view bytes);

}  // namespace quditmet
