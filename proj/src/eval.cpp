#include "websplit/eval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "websplit/errors.hpp"

namespace websplit {

namespace {

std::map<std::string, std::uint64_t> ngram_counts(
    const std::vector<std::string>& tokens, std::size_t n) {
  std::map<std::string, std::uint64_t> counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string gram;
    for (std::size_t k = 0; k < n; ++k) {
      if (k > 0) gram.push_back('\x1f');
      gram += tokens[i + k];
    }
    ++counts[gram];
  }
  return counts;
}

std::string ascii_lower(std::string s) {
  for (char& c : s) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return s;
}

std::vector<std::string> whitespace_split(const std::string& s) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) tokens.push_back(s.substr(start, i - start));
  }
  return tokens;
}

}  // namespace

void BleuAccumulator::add(
    const std::vector<std::string>& hyp_tokens,
    const std::vector<std::vector<std::string>>& ref_token_lists) {
  if (ref_token_lists.empty()) {
    throw WebsplitError("BLEU needs at least one reference");
  }

  hyp_len += hyp_tokens.size();
  // closest reference length; ties go to the shorter reference
  std::size_t closest = ref_token_lists.front().size();
  for (const auto& ref : ref_token_lists) {
    std::size_t len = ref.size();
    auto dist = [&](std::size_t l) {
      return l > hyp_tokens.size() ? l - hyp_tokens.size()
                                   : hyp_tokens.size() - l;
    };
    if (dist(len) < dist(closest) || (dist(len) == dist(closest) && len < closest)) {
      closest = len;
    }
  }
  ref_len += closest;

  for (std::size_t n = 1; n <= 4; ++n) {
    if (hyp_tokens.size() < n) continue;
    totals[n - 1] += hyp_tokens.size() - n + 1;

    std::map<std::string, std::uint64_t> max_ref;
    for (const auto& ref : ref_token_lists) {
      for (const auto& [gram, count] : ngram_counts(ref, n)) {
        std::uint64_t& slot = max_ref[gram];
        slot = std::max(slot, count);
      }
    }
    for (const auto& [gram, count] : ngram_counts(hyp_tokens, n)) {
      auto it = max_ref.find(gram);
      if (it != max_ref.end()) matches[n - 1] += std::min(count, it->second);
    }
  }
}

double BleuAccumulator::score() const {
  if (hyp_len == 0) return 0.0;
  double log_sum = 0.0;
  for (std::size_t n = 0; n < 4; ++n) {
    if (totals[n] == 0 || matches[n] == 0) return 0.0;
    log_sum += std::log(static_cast<double>(matches[n]) /
                        static_cast<double>(totals[n]));
  }
  double precision = std::exp(log_sum / 4.0);
  double bp = hyp_len >= ref_len
                  ? 1.0
                  : std::exp(1.0 - static_cast<double>(ref_len) /
                                       static_cast<double>(hyp_len));
  return 100.0 * bp * precision;
}

double bleu4_multi_ref(const std::vector<std::string>& hyp_tokens,
                       const std::vector<std::vector<std::string>>& ref_token_lists) {
  BleuAccumulator acc;
  acc.add(hyp_tokens, ref_token_lists);
  return acc.score();
}

nlohmann::json EvalReport::to_json() const {
  nlohmann::json j;
  j["system"] = system_name;
  j["bleu"] = bleu;
  j["sentences_per_complex"] = sentences_per_complex;
  j["tokens_per_sentence"] = tokens_per_sentence;
  j["n_items"] = item_count;
  return j;
}

EvalReport evaluate_system(const std::string& system_name,
                           const std::vector<SystemOutput>& outputs,
                           const std::vector<WebSplitItem>& reference_items,
                           const EvalOptions& options) {
  std::map<std::string, std::vector<std::string>> groups;
  for (const WebSplitItem& item : reference_items) {
    groups[normalize_whitespace(item.complex_text.raw)].push_back(
        item.rephrasing_string());
  }

  auto to_tokens = [&](const std::string& text) {
    std::string prepared = normalize_whitespace(text);
    if (options.lowercase) prepared = ascii_lower(prepared);
    return options.pretokenized ? whitespace_split(prepared)
                                : tokenize(prepared);
  };

  BleuAccumulator acc;
  std::set<std::string> covered;
  std::uint64_t sentence_total = 0;
  std::uint64_t token_total = 0;

  for (const SystemOutput& output : outputs) {
    std::string complex = normalize_whitespace(output.complex);
    auto group = groups.find(complex);
    if (group == groups.end()) {
      throw WebsplitError("output for a complex sentence not in the reference "
                          "corpus: " + complex);
    }
    covered.insert(complex);

    std::vector<std::vector<std::string>> refs;
    refs.reserve(group->second.size());
    for (const std::string& ref : group->second) refs.push_back(to_tokens(ref));
    acc.add(to_tokens(output.output), refs);

    Text segmented = segment_sentences(output.output, options.abbreviations,
                                       options.overrides);
    sentence_total += segmented.sentence_count();
    for (const std::string& sentence : segmented.sentences) {
      token_total += to_tokens(sentence).size();
    }
  }

  for (const auto& [complex, refs] : groups) {
    if (covered.count(complex) == 0) throw MissingOutput(complex);
  }

  EvalReport report;
  report.system_name = system_name;
  report.bleu = acc.score();
  report.item_count = outputs.size();
  if (!outputs.empty()) {
    report.sentences_per_complex = static_cast<double>(sentence_total) /
                                   static_cast<double>(outputs.size());
  }
  if (sentence_total > 0) {
    report.tokens_per_sentence = static_cast<double>(token_total) /
                                 static_cast<double>(sentence_total);
  }
  return report;
}

std::string report_table(const std::vector<EvalReport>& reports) {
  std::size_t name_width = 6;  // "System"
  for (const EvalReport& r : reports) {
    name_width = std::max(name_width, r.system_name.size());
  }
  std::string table;
  char line[256];
  std::snprintf(line, sizeof(line), "%-*s  %8s  %6s  %10s\n",
                static_cast<int>(name_width), "System", "BLEU", "#S/C",
                "#Tokens/S");
  table += line;
  for (const EvalReport& r : reports) {
    std::snprintf(line, sizeof(line), "%-*s  %8.2f  %6.2f  %10.2f\n",
                  static_cast<int>(name_width), r.system_name.c_str(), r.bleu,
                  r.sentences_per_complex, r.tokens_per_sentence);
    table += line;
  }
  return table;
}

}  // namespace websplit
