#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "websplit/rdf.hpp"
#include "websplit/text.hpp"

namespace websplit {

/// One input entry: a meaning representation and its verbalisations.
struct WebNlgEntry {
  TripleSet mr;
  std::vector<Text> verbalisations;  // deduplicated on raw string
  std::string category;              // optional DBpedia category
};

enum class ItemOrigin { within_entry, across_entry, unspecified };

/// One benchmark tuple: a single complex sentence with semantics
/// complex_mr, paired with parts whose meaning representations partition
/// complex_mr and whose texts total at least two sentences.
struct WebSplitItem {
  TripleSet complex_mr;
  Text complex_text;  // exactly one sentence
  std::vector<std::pair<TripleSet, Text>> parts;
  ItemOrigin origin = ItemOrigin::unspecified;

  std::size_t total_part_sentences() const;
  /// Part raw strings joined by single spaces: the rephrasing string used
  /// for deduplication and as an evaluation reference.
  std::string rephrasing_string() const;
};

struct IngestOptions {
  bool lenient = false;  // callers decide whether errors abort
};

struct LineError {
  std::size_t line = 0;
  std::string message;
};

struct IngestResult {
  std::vector<WebNlgEntry> entries;
  std::vector<LineError> errors;
};

/// Reads JSON-lines entries: {"mr": [triple strings], "texts": [strings],
/// "category": optional}. Lines that fail to parse are collected in
/// errors with their line numbers; entries with equal MRs are merged and
/// duplicate (mr, text) rows dropped.
IngestResult ingest(const std::filesystem::path& path,
                    const IngestOptions& options = {});
IngestResult ingest_stream(std::istream& in, const IngestOptions& options = {});

/// Segments every verbalisation in place.
void segment_entries(std::vector<WebNlgEntry>& entries,
                     const AbbreviationLexicon& abbreviations = {},
                     const SegmentationOverrides& overrides = {});

/// Pairs alternative verbalisations of one entry: for every
/// single-sentence verbalisation T_C and every multi-sentence
/// verbalisation T of the same MR, one item ⟨(M, T_C), {(M, T)}⟩.
std::vector<WebSplitItem> build_within_entries(
    const std::vector<WebNlgEntry>& entries);

/// Assembles items across entries: for every single-sentence
/// verbalisation C and every partition of its semantics whose blocks all
/// match an entry, one item per combination of block verbalisations
/// totalling at least two sentences. The n = 1 partition contributes only
/// multi-sentence matches.
std::vector<WebSplitItem> build_across_entries(
    const std::vector<WebNlgEntry>& entries);

/// Sorts parts by the minimum traversal index (within complex_mr) of each
/// part's triples; stable for ties.
WebSplitItem order_texts(WebSplitItem item);

struct BuildResult {
  std::vector<WebSplitItem> items;  // deduplicated, deterministically sorted
  std::size_t within_count = 0;
  std::size_t across_count = 0;  // across items not already found within
};

/// build_within_entries ∪ build_across_entries with exact-duplicate items
/// removed, deterministically sorted.
BuildResult build_corpus(const std::vector<WebNlgEntry>& entries);

struct CorpusStats {
  std::size_t total_pairs = 0;
  std::size_t distinct_pairs = 0;
  std::size_t distinct_complex_sentences = 0;
  double rephrasings_mean = 0.0;
  double rephrasings_median = 0.0;
  std::size_t rephrasings_min = 0;
  std::size_t rephrasings_max = 0;
  double mean_sentences_per_rephrasing = 0.0;
  std::size_t vocabulary_size = 0;
  std::size_t within_entry_count = 0;
  std::size_t across_entry_count = 0;
};

/// Distinct pairs are keyed on (complex raw, ordered part raws);
/// vocabulary counts distinct tokens over all complex and part texts.
CorpusStats corpus_stats(const std::vector<WebSplitItem>& items);

struct SplitRatios {
  double train = 0.8;
  double val = 0.1;
  double test = 0.1;
};

struct DataSplit {
  std::vector<WebSplitItem> train;
  std::vector<WebSplitItem> val;
  std::vector<WebSplitItem> test;
};

/// Shuffles the distinct complex sentences with a seeded Fisher-Yates and
/// assigns them to splits by ratio (val and test floor, train takes the
/// remainder). Every item follows its complex sentence; no complex
/// sentence appears in two splits.
DataSplit split_train_val_test(const std::vector<WebSplitItem>& items,
                               const SplitRatios& ratios, std::uint64_t seed);

/// Full identity of an item (MRs and texts, parts in order); the
/// deduplication key.
std::string item_identity(const WebSplitItem& item);

/// Deterministic order: complex canonical key, then partition encoding
/// (block keys), then texts. Output order is run-independent.
void sort_items(std::vector<WebSplitItem>& items);

/// JSON-lines: {"complex_mr": [...], "complex": "...",
/// "parts": [{"mr": [...], "text": "..."}]}.
void write_items_jsonl(const std::filesystem::path& path,
                       const std::vector<WebSplitItem>& items);

/// Reads items back. Complex texts get their single-sentence segmentation;
/// part texts are left unsegmented (call segment_items when sentence
/// counts are needed).
std::vector<WebSplitItem> read_items_jsonl(const std::filesystem::path& path);

void segment_items(std::vector<WebSplitItem>& items,
                   const AbbreviationLexicon& abbreviations = {},
                   const SegmentationOverrides& overrides = {});

nlohmann::json stats_to_json(const CorpusStats& stats);

}  // namespace websplit
