#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace websplit {

std::string read_file(const std::filesystem::path& path);
std::vector<std::string> read_lines(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// FNV-1a 64-bit digest, hex-encoded. Used to fingerprint input files in
/// run metadata; not cryptographic.
std::string fnv1a64_hex(std::string_view data);

/// Writes `<output>.meta.json` next to an output file: tool name/version,
/// seed, and a digest per input file.
void write_metadata(const std::filesystem::path& output,
                    const std::string& command,
                    std::uint64_t seed,
                    const std::vector<std::filesystem::path>& inputs);

}  // namespace websplit
