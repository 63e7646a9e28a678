#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace websplit {

/// A verbalisation: the raw string plus its sentence segmentation.
/// Invariant once segmented: sentences joined by single spaces equal the
/// whitespace-normalized raw string.
struct Text {
  std::string raw;
  std::vector<std::string> sentences;

  std::size_t sentence_count() const { return sentences.size(); }
  bool operator==(const Text& other) const = default;
};

/// Abbreviation lexicon for the sentence splitter. Entries are stored
/// without trailing periods ("St." and "St" are the same entry).
using AbbreviationLexicon = std::set<std::string>;

/// Manual segmentations keyed on the exact raw string; replaces rule
/// output when present.
using SegmentationOverrides = std::map<std::string, std::vector<std::string>>;

/// Collapses whitespace runs to single spaces and trims the ends.
std::string normalize_whitespace(const std::string& s);

/// Rule-based sentence splitter. Splits after `.`, `!` or `?` followed by
/// a space and an uppercase letter (or end of string), except after a
/// lexicon abbreviation, after a single capital letter, or inside
/// parentheses. An override for the exact raw string wins outright;
/// overrides that do not reproduce the normalized raw throw
/// InvalidOverride.
Text segment_sentences(const std::string& raw,
                       const AbbreviationLexicon& abbreviations = {},
                       const SegmentationOverrides& overrides = {});

/// One abbreviation per line; blank lines and lines starting with '#'
/// are skipped.
AbbreviationLexicon load_abbreviations(const std::filesystem::path& path);

/// JSON object mapping raw text to its sentence list.
SegmentationOverrides load_overrides(const std::filesystem::path& path);

/// Whitespace split with leading/trailing `.,;:!?()"'` characters emitted
/// as their own tokens. Case preserved.
std::vector<std::string> tokenize(const std::string& text);

}  // namespace websplit
