#include "websplit/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include "websplit/io.hpp"
#include "websplit/log.hpp"

namespace websplit {

namespace {

std::string norm(const std::string& s) { return normalize_whitespace(s); }

nlohmann::json mr_to_json(const TripleSet& mr) {
  nlohmann::json arr = nlohmann::json::array();
  for (const RdfTriple& t : mr.triples()) arr.push_back(t.str());
  return arr;
}

TripleSet mr_from_json(const nlohmann::json& arr, const char* what) {
  if (!arr.is_array() || arr.empty()) {
    throw WebsplitError(std::string(what) + " must be a non-empty array");
  }
  std::vector<RdfTriple> triples;
  for (const auto& t : arr) {
    if (!t.is_string()) {
      throw WebsplitError(std::string(what) + " must contain triple strings");
    }
    triples.push_back(parse_triple(t.get<std::string>()));
  }
  return TripleSet(std::move(triples));
}

nlohmann::json item_to_json(const WebSplitItem& item) {
  nlohmann::json o;
  o["complex"] = item.complex_text.raw;
  o["complex_mr"] = mr_to_json(item.complex_mr);
  nlohmann::json parts = nlohmann::json::array();
  for (const auto& [mr, text] : item.parts) {
    nlohmann::json p;
    p["mr"] = mr_to_json(mr);
    p["text"] = text.raw;
    parts.push_back(std::move(p));
  }
  o["parts"] = std::move(parts);
  return o;
}

WebSplitItem item_from_json(const nlohmann::json& o) {
  if (!o.is_object()) throw WebsplitError("item must be a JSON object");
  if (!o.contains("complex") || !o["complex"].is_string()) {
    throw WebsplitError("item field \"complex\" must be a string");
  }
  if (!o.contains("parts") || !o["parts"].is_array() || o["parts"].empty()) {
    throw WebsplitError("item field \"parts\" must be a non-empty array");
  }
  WebSplitItem item;
  item.complex_mr = mr_from_json(o.value("complex_mr", nlohmann::json()),
                                 "item field \"complex_mr\"");
  item.complex_text.raw = o["complex"].get<std::string>();
  std::string normalized = norm(item.complex_text.raw);
  if (!normalized.empty()) item.complex_text.sentences = {normalized};
  for (const auto& p : o["parts"]) {
    if (!p.is_object() || !p.contains("text") || !p["text"].is_string()) {
      throw WebsplitError("item part must be an object with \"text\"");
    }
    TripleSet mr =
        mr_from_json(p.value("mr", nlohmann::json()), "item part field \"mr\"");
    Text text;
    text.raw = p["text"].get<std::string>();
    item.parts.emplace_back(std::move(mr), std::move(text));
  }
  return item;
}

}  // namespace

std::size_t WebSplitItem::total_part_sentences() const {
  std::size_t total = 0;
  for (const auto& [mr, text] : parts) total += text.sentence_count();
  return total;
}

std::string WebSplitItem::rephrasing_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += " ";
    out += norm(parts[i].second.raw);
  }
  return out;
}

IngestResult ingest_stream(std::istream& in, const IngestOptions& options) {
  IngestResult result;
  std::map<std::string, std::size_t> by_key;          // canonical key -> index
  std::vector<std::set<std::string>> seen_texts;      // parallel to entries

  auto fail = [&](std::size_t line, const std::string& message) {
    result.errors.push_back({line, message});
    if (options.lenient) {
      log_note("entries line " + std::to_string(line) + " skipped: " + message);
    }
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (norm(line).empty()) continue;

    nlohmann::json o;
    try {
      o = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      fail(line_no, std::string("invalid JSON: ") + e.what());
      continue;
    }
    if (!o.is_object()) {
      fail(line_no, "entry must be a JSON object");
      continue;
    }
    if (!o.contains("mr") || !o["mr"].is_array() || o["mr"].empty()) {
      fail(line_no, "field \"mr\" must be a non-empty array of triple strings");
      continue;
    }
    if (!o.contains("texts") || !o["texts"].is_array() || o["texts"].empty()) {
      fail(line_no, "field \"texts\" must be a non-empty array of strings");
      continue;
    }

    std::vector<RdfTriple> triples;
    bool bad = false;
    for (const auto& t : o["mr"]) {
      if (!t.is_string()) {
        fail(line_no, "field \"mr\" must contain strings");
        bad = true;
        break;
      }
      try {
        triples.push_back(parse_triple(t.get<std::string>()));
      } catch (const MalformedTriple& e) {
        fail(line_no, e.what());
        bad = true;
        break;
      }
    }
    if (bad) continue;

    std::vector<std::string> texts;
    for (const auto& t : o["texts"]) {
      if (!t.is_string()) {
        fail(line_no, "field \"texts\" must contain strings");
        bad = true;
        break;
      }
      texts.push_back(t.get<std::string>());
    }
    if (bad) continue;

    std::string category;
    if (o.contains("category") && o["category"].is_string()) {
      category = o["category"].get<std::string>();
    }

    TripleSet mr(std::move(triples));
    auto [it, fresh] = by_key.emplace(mr.canonical_key(), result.entries.size());
    if (fresh) {
      result.entries.push_back(WebNlgEntry{std::move(mr), {}, category});
      seen_texts.emplace_back();
    }
    WebNlgEntry& entry = result.entries[it->second];
    if (entry.category.empty() && !category.empty()) entry.category = category;
    for (std::string& text : texts) {
      if (seen_texts[it->second].insert(text).second) {
        entry.verbalisations.push_back(Text{std::move(text), {}});
      }
    }
  }

  if (!options.lenient && !result.errors.empty()) {
    std::string message = std::to_string(result.errors.size()) +
                          " malformed entry line(s):";
    std::size_t shown = 0;
    for (const LineError& error : result.errors) {
      if (++shown > 5) {
        message += " ...";
        break;
      }
      message += " line " + std::to_string(error.line) + ": " + error.message +
                 ";";
    }
    throw WebsplitError(message);
  }
  return result;
}

IngestResult ingest(const std::filesystem::path& path,
                    const IngestOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  return ingest_stream(in, options);
}

void segment_entries(std::vector<WebNlgEntry>& entries,
                     const AbbreviationLexicon& abbreviations,
                     const SegmentationOverrides& overrides) {
  for (WebNlgEntry& entry : entries) {
    for (Text& text : entry.verbalisations) {
      text = segment_sentences(text.raw, abbreviations, overrides);
    }
  }
}

std::vector<WebSplitItem> build_within_entries(
    const std::vector<WebNlgEntry>& entries) {
  std::vector<WebSplitItem> items;
  for (const WebNlgEntry& entry : entries) {
    for (const Text& complex : entry.verbalisations) {
      if (complex.sentence_count() != 1) continue;
      for (const Text& rephrasing : entry.verbalisations) {
        if (rephrasing.sentence_count() < 2) continue;
        WebSplitItem item;
        item.complex_mr = entry.mr;
        item.complex_text = complex;
        item.parts.emplace_back(entry.mr, rephrasing);
        item.origin = ItemOrigin::within_entry;
        items.push_back(order_texts(std::move(item)));
      }
    }
  }
  return items;
}

std::vector<WebSplitItem> build_across_entries(
    const std::vector<WebNlgEntry>& entries) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    index.emplace(entries[i].mr.canonical_key(), i);
  }

  std::vector<WebSplitItem> items;
  for (const WebNlgEntry& entry : entries) {
    if (entry.mr.size() > kMaxPartitionElements) {
      log_note("skipping across-entry construction for an MR of " +
               std::to_string(entry.mr.size()) + " triples");
      continue;
    }

    // partitions of this MR whose blocks all match an entry, found once
    std::vector<std::vector<std::size_t>> matched_partitions;
    for_each_partition(entry.mr, [&](const Partition& p) {
      std::vector<std::size_t> matched;
      for (const TripleSet& block : p.blocks) {
        auto it = index.find(block.canonical_key());
        if (it == index.end()) return;
        matched.push_back(it->second);
      }
      matched_partitions.push_back(std::move(matched));
    });
    if (matched_partitions.empty()) continue;

    for (const Text& complex : entry.verbalisations) {
      if (complex.sentence_count() != 1) continue;
      for (const std::vector<std::size_t>& blocks : matched_partitions) {
        bool whole_mr = blocks.size() == 1;
        std::vector<std::vector<const Text*>> candidates(blocks.size());
        bool feasible = true;
        for (std::size_t b = 0; b < blocks.size(); ++b) {
          for (const Text& text : entries[blocks[b]].verbalisations) {
            std::size_t min_sentences = whole_mr ? 2 : 1;
            if (text.sentence_count() < min_sentences) continue;
            candidates[b].push_back(&text);
          }
          if (candidates[b].empty()) {
            feasible = false;
            break;
          }
        }
        if (!feasible) continue;

        std::vector<std::size_t> pick(blocks.size(), 0);
        while (true) {
          std::size_t total_sentences = 0;
          for (std::size_t b = 0; b < blocks.size(); ++b) {
            total_sentences += candidates[b][pick[b]]->sentence_count();
          }
          if (total_sentences >= 2) {
            WebSplitItem item;
            item.complex_mr = entry.mr;
            item.complex_text = complex;
            for (std::size_t b = 0; b < blocks.size(); ++b) {
              item.parts.emplace_back(entries[blocks[b]].mr,
                                      *candidates[b][pick[b]]);
            }
            item.origin = ItemOrigin::across_entry;
            items.push_back(order_texts(std::move(item)));
          }
          // odometer over verbalisation choices
          bool exhausted = false;
          std::size_t b = blocks.size();
          while (true) {
            if (b == 0) {
              exhausted = true;
              break;
            }
            --b;
            if (++pick[b] < candidates[b].size()) break;
            pick[b] = 0;
          }
          if (exhausted) break;
        }
      }
    }
  }
  return items;
}

WebSplitItem order_texts(WebSplitItem item) {
  std::map<std::string, std::size_t> position;
  std::vector<RdfTriple> order = traversal_order(item.complex_mr);
  for (std::size_t i = 0; i < order.size(); ++i) {
    position.emplace(order[i].str(), i);
  }
  auto min_position = [&](const TripleSet& mr) {
    std::size_t best = position.size();
    for (const RdfTriple& t : mr.triples()) {
      auto it = position.find(t.str());
      if (it != position.end()) best = std::min(best, it->second);
    }
    return best;
  };
  std::stable_sort(item.parts.begin(), item.parts.end(),
                   [&](const auto& a, const auto& b) {
                     return min_position(a.first) < min_position(b.first);
                   });
  return item;
}

BuildResult build_corpus(const std::vector<WebNlgEntry>& entries) {
  BuildResult result;
  std::map<std::string, WebSplitItem> by_identity;
  for (WebSplitItem& item : build_within_entries(entries)) {
    if (by_identity.emplace(item_identity(item), std::move(item)).second) {
      ++result.within_count;
    }
  }
  for (WebSplitItem& item : build_across_entries(entries)) {
    if (by_identity.emplace(item_identity(item), std::move(item)).second) {
      ++result.across_count;
    }
  }
  result.items.reserve(by_identity.size());
  for (auto& [identity, item] : by_identity) {
    result.items.push_back(std::move(item));
  }
  sort_items(result.items);
  return result;
}

CorpusStats corpus_stats(const std::vector<WebSplitItem>& items) {
  CorpusStats stats;
  stats.total_pairs = items.size();

  // distinct text pairs and per-complex rephrasing counts
  std::map<std::string, std::set<std::string>> rephrasings;
  std::map<std::string, std::size_t> pair_sentences;
  std::set<std::string> vocabulary;
  std::size_t sentence_total = 0;

  for (const WebSplitItem& item : items) {
    std::string complex = norm(item.complex_text.raw);
    std::string rephrasing = item.rephrasing_string();
    std::string pair_key = complex + '\x1f' + rephrasing;
    rephrasings[complex].insert(rephrasing);
    pair_sentences.emplace(pair_key, item.total_part_sentences());

    for (const std::string& token : tokenize(complex)) {
      vocabulary.insert(token);
    }
    for (const auto& [mr, text] : item.parts) {
      for (const std::string& token : tokenize(norm(text.raw))) {
        vocabulary.insert(token);
      }
    }
    if (item.origin == ItemOrigin::within_entry) ++stats.within_entry_count;
    if (item.origin == ItemOrigin::across_entry) ++stats.across_entry_count;
  }

  stats.distinct_pairs = pair_sentences.size();
  stats.distinct_complex_sentences = rephrasings.size();
  stats.vocabulary_size = vocabulary.size();

  for (const auto& [key, sentences] : pair_sentences) {
    sentence_total += sentences;
  }
  if (!pair_sentences.empty()) {
    stats.mean_sentences_per_rephrasing =
        static_cast<double>(sentence_total) /
        static_cast<double>(pair_sentences.size());
  }

  std::vector<std::size_t> counts;
  counts.reserve(rephrasings.size());
  for (const auto& [complex, set] : rephrasings) counts.push_back(set.size());
  std::sort(counts.begin(), counts.end());
  if (!counts.empty()) {
    stats.rephrasings_min = counts.front();
    stats.rephrasings_max = counts.back();
    stats.rephrasings_mean = static_cast<double>(stats.distinct_pairs) /
                             static_cast<double>(counts.size());
    std::size_t mid = counts.size() / 2;
    stats.rephrasings_median =
        counts.size() % 2 == 1
            ? static_cast<double>(counts[mid])
            : (static_cast<double>(counts[mid - 1]) +
               static_cast<double>(counts[mid])) /
                  2.0;
  }
  return stats;
}

DataSplit split_train_val_test(const std::vector<WebSplitItem>& items,
                               const SplitRatios& ratios, std::uint64_t seed) {
  if (ratios.train < 0 || ratios.val < 0 || ratios.test < 0 ||
      std::abs(ratios.train + ratios.val + ratios.test - 1.0) > 1e-9) {
    throw WebsplitError("split ratios must be non-negative and sum to 1");
  }

  std::set<std::string> complex_set;
  for (const WebSplitItem& item : items) {
    complex_set.insert(norm(item.complex_text.raw));
  }
  std::vector<std::string> sentences(complex_set.begin(), complex_set.end());

  // explicit Fisher-Yates so the permutation is identical across platforms
  std::mt19937_64 gen(seed);
  for (std::size_t i = sentences.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(gen() % i);
    std::swap(sentences[i - 1], sentences[j]);
  }

  std::size_t n = sentences.size();
  std::size_t n_val = static_cast<std::size_t>(
      std::floor(static_cast<double>(n) * ratios.val));
  std::size_t n_test = static_cast<std::size_t>(
      std::floor(static_cast<double>(n) * ratios.test));

  enum class Bucket { train, val, test };
  std::map<std::string, Bucket> assignment;
  for (std::size_t i = 0; i < n; ++i) {
    Bucket b = i < n_val              ? Bucket::val
               : i < n_val + n_test   ? Bucket::test
                                      : Bucket::train;
    assignment.emplace(sentences[i], b);
  }

  DataSplit split;
  for (const WebSplitItem& item : items) {
    switch (assignment.at(norm(item.complex_text.raw))) {
      case Bucket::train: split.train.push_back(item); break;
      case Bucket::val: split.val.push_back(item); break;
      case Bucket::test: split.test.push_back(item); break;
    }
  }
  return split;
}

std::string item_identity(const WebSplitItem& item) {
  return item_to_json(item).dump();
}

void sort_items(std::vector<WebSplitItem>& items) {
  std::vector<std::pair<std::string, WebSplitItem>> keyed;
  keyed.reserve(items.size());
  for (WebSplitItem& item : items) {
    std::string key = item.complex_mr.canonical_key();
    key += '\x1f';
    for (const auto& [mr, text] : item.parts) {
      key += mr.canonical_key();
      key += '\x1e';
    }
    key += '\x1f';
    key += item_identity(item);
    keyed.emplace_back(std::move(key), std::move(item));
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  items.clear();
  for (auto& [key, item] : keyed) items.push_back(std::move(item));
}

void write_items_jsonl(const std::filesystem::path& path,
                       const std::vector<WebSplitItem>& items) {
  std::string out;
  for (const WebSplitItem& item : items) {
    out += item_to_json(item).dump();
    out += '\n';
  }
  write_file(path, out);
}

std::vector<WebSplitItem> read_items_jsonl(const std::filesystem::path& path) {
  std::vector<WebSplitItem> items;
  std::vector<std::string> lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (norm(lines[i]).empty()) continue;
    try {
      items.push_back(item_from_json(nlohmann::json::parse(lines[i])));
    } catch (const nlohmann::json::exception& e) {
      throw WebsplitError("items line " + std::to_string(i + 1) +
                          ": invalid JSON: " + e.what());
    } catch (const WebsplitError& e) {
      throw WebsplitError("items line " + std::to_string(i + 1) + ": " +
                          e.what());
    }
  }
  return items;
}

void segment_items(std::vector<WebSplitItem>& items,
                   const AbbreviationLexicon& abbreviations,
                   const SegmentationOverrides& overrides) {
  for (WebSplitItem& item : items) {
    for (auto& [mr, text] : item.parts) {
      text = segment_sentences(text.raw, abbreviations, overrides);
    }
  }
}

nlohmann::json stats_to_json(const CorpusStats& stats) {
  nlohmann::json j;
  j["total_pairs"] = stats.total_pairs;
  j["distinct_pairs"] = stats.distinct_pairs;
  j["distinct_complex_sentences"] = stats.distinct_complex_sentences;
  j["rephrasings_mean"] = stats.rephrasings_mean;
  j["rephrasings_median"] = stats.rephrasings_median;
  j["rephrasings_min"] = stats.rephrasings_min;
  j["rephrasings_max"] = stats.rephrasings_max;
  j["mean_sentences_per_rephrasing"] = stats.mean_sentences_per_rephrasing;
  j["vocabulary_size"] = stats.vocabulary_size;
  j["within_entry_count"] = stats.within_entry_count;
  j["across_entry_count"] = stats.across_entry_count;
  return j;
}

}  // namespace websplit
