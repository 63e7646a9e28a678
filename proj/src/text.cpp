#include "websplit/text.hpp"

#include <cctype>

#include "json.hpp"
#include "websplit/errors.hpp"
#include "websplit/io.hpp"

namespace websplit {

namespace {

bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }

constexpr const char* kEdgePunct = ".,;:!?()\"'";

bool is_edge_punct(char c) {
  for (const char* p = kEdgePunct; *p; ++p) {
    if (*p == c) return true;
  }
  return false;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

// Word immediately before position i (exclusive), up to the previous space.
std::string word_before(const std::string& s, std::size_t i) {
  std::size_t begin = i;
  while (begin > 0 && !is_space(s[begin - 1])) --begin;
  return s.substr(begin, i - begin);
}

bool is_abbreviation(const std::string& word,
                     const AbbreviationLexicon& abbreviations) {
  if (word.empty()) return false;
  if (abbreviations.count(word) > 0) return true;
  // tolerate leading quotes or brackets around the token
  std::size_t begin = 0;
  while (begin < word.size() &&
         (word[begin] == '"' || word[begin] == '\'' || word[begin] == '(')) {
    ++begin;
  }
  std::string stripped = word.substr(begin);
  if (stripped != word && abbreviations.count(stripped) > 0) return true;
  return stripped.size() == 1 && is_upper(stripped[0]);
}

}  // namespace

std::string normalize_whitespace(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (is_space(c)) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(c);
    }
  }
  return out;
}

Text segment_sentences(const std::string& raw,
                       const AbbreviationLexicon& abbreviations,
                       const SegmentationOverrides& overrides) {
  std::string norm = normalize_whitespace(raw);

  auto ov = overrides.find(raw);
  if (ov != overrides.end()) {
    if (join(ov->second, " ") != norm) {
      throw InvalidOverride("override for \"" + raw +
                            "\" does not reproduce the text");
    }
    return Text{raw, ov->second};
  }

  Text text{raw, {}};
  if (norm.empty()) return text;

  int paren_depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < norm.size(); ++i) {
    char c = norm[i];
    if (c == '(') {
      ++paren_depth;
      continue;
    }
    if (c == ')') {
      if (paren_depth > 0) --paren_depth;
      continue;
    }
    if (c != '.' && c != '!' && c != '?') continue;
    if (paren_depth > 0) continue;

    bool at_end = i + 1 == norm.size();
    bool before_capital =
        i + 2 < norm.size() && norm[i + 1] == ' ' && is_upper(norm[i + 2]);
    if (!at_end && !before_capital) continue;
    if (c == '.' && is_abbreviation(word_before(norm, i), abbreviations)) {
      continue;
    }
    text.sentences.push_back(norm.substr(start, i + 1 - start));
    start = i + 2;  // skip the single separating space
    if (start >= norm.size()) break;
  }
  if (start < norm.size()) text.sentences.push_back(norm.substr(start));
  return text;
}

AbbreviationLexicon load_abbreviations(const std::filesystem::path& path) {
  AbbreviationLexicon lexicon;
  for (const std::string& line : read_lines(path)) {
    std::string entry = normalize_whitespace(line);
    if (entry.empty() || entry[0] == '#') continue;
    if (entry.back() == '.') entry.pop_back();
    if (!entry.empty()) lexicon.insert(entry);
  }
  return lexicon;
}

SegmentationOverrides load_overrides(const std::filesystem::path& path) {
  std::string contents = read_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(contents);
  } catch (const nlohmann::json::exception& e) {
    throw IoError("cannot parse overrides " + path.string() + ": " + e.what());
  }
  if (!j.is_object()) {
    throw IoError("overrides " + path.string() +
                  " must be a JSON object mapping text to sentences");
  }
  SegmentationOverrides overrides;
  for (const auto& [raw, sentences] : j.items()) {
    if (!sentences.is_array()) {
      throw IoError("override for \"" + raw + "\" must be an array");
    }
    std::vector<std::string> list;
    for (const auto& s : sentences) {
      if (!s.is_string()) {
        throw IoError("override for \"" + raw + "\" must contain strings");
      }
      list.push_back(s.get<std::string>());
    }
    overrides.emplace(raw, std::move(list));
  }
  return overrides;
}

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    if (i >= text.size()) break;
    std::size_t end = i;
    while (end < text.size() && !is_space(text[end])) ++end;

    std::size_t lo = i;
    std::size_t hi = end;  // [lo, hi) is the chunk
    while (lo < hi && is_edge_punct(text[lo])) {
      tokens.push_back(std::string(1, text[lo]));
      ++lo;
    }
    std::vector<std::string> trailing;
    while (hi > lo && is_edge_punct(text[hi - 1])) {
      trailing.push_back(std::string(1, text[hi - 1]));
      --hi;
    }
    if (hi > lo) tokens.push_back(text.substr(lo, hi - lo));
    for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) {
      tokens.push_back(std::move(*it));
    }
    i = end;
  }
  return tokens;
}

}  // namespace websplit
