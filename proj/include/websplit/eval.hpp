#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "websplit/corpus.hpp"
#include "websplit/pipeline.hpp"
#include "websplit/text.hpp"

namespace websplit {

// Corpus-level BLEU-4 state: clipped n-gram matches and totals per order,
// hypothesis length, and the sum of closest reference lengths.
struct BleuAccumulator {
  std::array<std::uint64_t, 4> matches{};
  std::array<std::uint64_t, 4> totals{};
  std::uint64_t hyp_len = 0;
  std::uint64_t ref_len = 0;

  void add(const std::vector<std::string>& hyp_tokens,
           const std::vector<std::vector<std::string>>& ref_token_lists);
  double score() const;  // 0..100; any zero precision gives 0
};

// Sentence-level convenience over one accumulator.
double bleu4_multi_ref(const std::vector<std::string>& hyp_tokens,
                       const std::vector<std::vector<std::string>>& ref_token_lists);

struct EvalOptions {
  bool lowercase = false;
  bool pretokenized = false;  // split on whitespace only
  AbbreviationLexicon abbreviations;
  SegmentationOverrides overrides;
};

// One evaluated system on one reference corpus.
struct EvalReport {
  std::string system_name;
  double bleu = 0.0;
  double sentences_per_complex = 0.0;  // macro-average over items
  double tokens_per_sentence = 0.0;    // micro-average over output sentences
  std::uint64_t item_count = 0;

  nlohmann::json to_json() const;
};

// Groups reference items by complex sentence, matches outputs by their
// complex sentence, and scores with multi-reference BLEU-4.  Every output
// must have at least one reference group, and every reference group an
// output, else MissingOutput.
EvalReport evaluate_system(const std::string& system_name,
                           const std::vector<SystemOutput>& outputs,
                           const std::vector<WebSplitItem>& reference_items,
                           const EvalOptions& options = {});

std::string report_table(const std::vector<EvalReport>& reports);

}  // namespace websplit
