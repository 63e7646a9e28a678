#include "websplit/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include "websplit/errors.hpp"
#include "websplit/version.hpp"

namespace websplit {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return out.str();
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::string contents = read_file(path);
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= contents.size()) {
    std::size_t end = contents.find('\n', start);
    if (end == std::string::npos) {
      if (start < contents.size()) lines.push_back(contents.substr(start));
      break;
    }
    std::string line = contents.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

std::string fnv1a64_hex(std::string_view data) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string hex(16, '0');
  for (int i = 15; i >= 0; --i) {
    hex[static_cast<std::size_t>(i)] = digits[hash & 0xF];
    hash >>= 4;
  }
  return hex;
}

void write_metadata(const std::filesystem::path& output,
                    const std::string& command,
                    std::uint64_t seed,
                    const std::vector<std::filesystem::path>& inputs) {
  nlohmann::json meta;
  meta["tool"] = kToolName;
  meta["version"] = kToolVersion;
  meta["command"] = command;
  meta["seed"] = seed;
  nlohmann::json digests = nlohmann::json::object();
  for (const auto& input : inputs) {
    digests[input.string()] = fnv1a64_hex(read_file(input));
  }
  meta["inputs"] = digests;
  std::filesystem::path meta_path = output;
  meta_path += ".meta.json";
  write_file(meta_path, meta.dump(2) + "\n");
}

}  // namespace websplit
