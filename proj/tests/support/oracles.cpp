#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <random>
#include <utility>

namespace testsupport {

using websplit::RdfTriple;
using websplit::Text;
using websplit::TripleSet;
using websplit::WebNlgEntry;
using websplit::WebSplitItem;

std::vector<std::vector<std::vector<int>>> partitions_of(int n) {
  std::vector<std::vector<std::vector<int>>> out;
  if (n <= 0) {
    out.push_back({});
    return out;
  }
  std::vector<std::vector<int>> current;
  std::function<void(int)> place = [&](int i) {
    if (i == n) {
      out.push_back(current);
      return;
    }
    for (std::size_t b = 0; b < current.size(); ++b) {
      current[b].push_back(i);
      place(i + 1);
      current[b].pop_back();
    }
    current.push_back({i});
    place(i + 1);
    current.pop_back();
  };
  place(0);
  return out;
}

double bleu_reference(const std::vector<std::string>& hyp,
                      const std::vector<std::vector<std::string>>& refs) {
  if (hyp.empty()) return 0.0;
  double product = 1.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    if (hyp.size() < n) return 0.0;
    std::map<std::vector<std::string>, long> hyp_counts;
    for (std::size_t i = 0; i + n <= hyp.size(); ++i) {
      ++hyp_counts[std::vector<std::string>(hyp.begin() + i,
                                            hyp.begin() + i + n)];
    }
    std::map<std::vector<std::string>, long> ref_max;
    for (const auto& ref : refs) {
      std::map<std::vector<std::string>, long> counts;
      for (std::size_t i = 0; i + n <= ref.size(); ++i) {
        ++counts[std::vector<std::string>(ref.begin() + i,
                                          ref.begin() + i + n)];
      }
      for (const auto& [gram, count] : counts) {
        long& cur = ref_max[gram];
        cur = std::max(cur, count);
      }
    }
    long matches = 0;
    long total = 0;
    for (const auto& [gram, count] : hyp_counts) {
      total += count;
      auto it = ref_max.find(gram);
      if (it != ref_max.end()) matches += std::min(count, it->second);
    }
    if (matches == 0) return 0.0;
    product *= static_cast<double>(matches) / static_cast<double>(total);
  }

  auto distance = [&](std::size_t len) {
    return len > hyp.size() ? len - hyp.size() : hyp.size() - len;
  };
  std::size_t closest = refs.front().size();
  for (const auto& ref : refs) {
    if (distance(ref.size()) < distance(closest) ||
        (distance(ref.size()) == distance(closest) && ref.size() < closest)) {
      closest = ref.size();
    }
  }
  double brevity = hyp.size() >= closest
                       ? 1.0
                       : std::exp(1.0 - static_cast<double>(closest) /
                                            static_cast<double>(hyp.size()));
  return 100.0 * brevity * std::pow(product, 0.25);
}

namespace {

// Depth-first order over input indices: roots are subjects that never
// appear as an object, expanded in input order; anything unreachable is
// appended in input order.
std::vector<std::size_t> reference_traversal(const std::vector<RdfTriple>& ts) {
  std::vector<bool> used(ts.size(), false);
  std::vector<std::size_t> order;
  auto appears_as_object = [&](const std::string& node) {
    for (const auto& t : ts) {
      if (t.object == node) return true;
    }
    return false;
  };
  std::function<void(const std::string&)> expand = [&](const std::string& node) {
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (!used[i] && ts[i].subject == node) {
        used[i] = true;
        order.push_back(i);
        expand(ts[i].object);
      }
    }
  };
  for (const auto& t : ts) {
    if (!appears_as_object(t.subject)) expand(t.subject);
  }
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!used[i]) order.push_back(i);
  }
  return order;
}

std::string reference_item_key(const WebSplitItem& item) {
  std::string key = item.complex_text.raw;
  key += '\x1f';
  for (const auto& [mr, text] : item.parts) {
    for (const auto& t : mr.triples()) {
      key += t.str();
      key += '\x1e';
    }
    key += '\x1d';
    key += text.raw;
    key += '\x1f';
  }
  return key;
}

}  // namespace

std::vector<WebSplitItem> construct_reference(
    const std::vector<WebNlgEntry>& entries) {
  std::map<std::string, std::size_t> entry_by_key;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    entry_by_key.emplace(entries[i].mr.canonical_key(), i);
  }

  std::map<std::string, WebSplitItem> found;
  for (const WebNlgEntry& entry : entries) {
    const std::vector<RdfTriple>& triples = entry.mr.triples();
    std::vector<std::size_t> rank(triples.size());
    {
      std::vector<std::size_t> order = reference_traversal(triples);
      for (std::size_t pos = 0; pos < order.size(); ++pos) rank[order[pos]] = pos;
    }

    for (const Text& complex : entry.verbalisations) {
      if (complex.sentence_count() != 1) continue;
      for (const auto& partition : partitions_of(static_cast<int>(triples.size()))) {
        struct Block {
          std::size_t entry_index;
          std::size_t min_rank;
        };
        std::vector<Block> blocks;
        bool all_matched = true;
        for (const auto& members : partition) {
          std::vector<RdfTriple> block_triples;
          std::size_t min_rank = triples.size();
          for (int idx : members) {
            block_triples.push_back(triples[static_cast<std::size_t>(idx)]);
            min_rank = std::min(min_rank, rank[static_cast<std::size_t>(idx)]);
          }
          auto it = entry_by_key.find(TripleSet(block_triples).canonical_key());
          if (it == entry_by_key.end()) {
            all_matched = false;
            break;
          }
          blocks.push_back({it->second, min_rank});
        }
        if (!all_matched) continue;
        std::sort(blocks.begin(), blocks.end(),
                  [](const Block& a, const Block& b) {
                    return a.min_rank < b.min_rank;
                  });

        std::vector<std::vector<const Text*>> candidates;
        bool viable = true;
        for (const Block& block : blocks) {
          std::vector<const Text*> texts;
          for (const Text& t : entries[block.entry_index].verbalisations) {
            if (partition.size() == 1 && t.sentence_count() < 2) continue;
            texts.push_back(&t);
          }
          if (texts.empty()) {
            viable = false;
            break;
          }
          candidates.push_back(std::move(texts));
        }
        if (!viable) continue;

        std::vector<std::size_t> pick(blocks.size(), 0);
        std::function<void(std::size_t)> emit = [&](std::size_t depth) {
          if (depth == blocks.size()) {
            WebSplitItem item;
            item.complex_mr = entry.mr;
            item.complex_text = complex;
            std::size_t total_sentences = 0;
            for (std::size_t b = 0; b < blocks.size(); ++b) {
              const Text& text = *candidates[b][pick[b]];
              total_sentences += text.sentence_count();
              item.parts.emplace_back(entries[blocks[b].entry_index].mr, text);
            }
            if (total_sentences < 2) return;
            found.emplace(reference_item_key(item), std::move(item));
            return;
          }
          for (std::size_t c = 0; c < candidates[depth].size(); ++c) {
            pick[depth] = c;
            emit(depth + 1);
          }
        };
        emit(0);
      }
    }
  }

  std::vector<WebSplitItem> items;
  items.reserve(found.size());
  for (auto& [key, item] : found) items.push_back(std::move(item));
  return items;
}

std::vector<WebNlgEntry> synthetic_entries(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const std::vector<RdfTriple> universe = {
      RdfTriple("Amber_Hall", "locatedIn", "Cedar_City"),
      RdfTriple("Amber_Hall", "builtBy", "Basil_Smith"),
      RdfTriple("Basil_Smith", "bornIn", "Cedar_City"),
      RdfTriple("Cedar_City", "ledBy", "Dana_Reed"),
  };
  const std::vector<std::string> openers = {"Alpha", "Bravo", "Carol",
                                            "Delta", "Echo",  "Foxtrot"};
  std::vector<WebNlgEntry> entries;
  int serial = 0;
  for (unsigned mask = 1; mask < (1u << universe.size()); ++mask) {
    if (gen() % 4 == 0) continue;
    WebNlgEntry entry;
    std::vector<RdfTriple> triples;
    for (std::size_t i = 0; i < universe.size(); ++i) {
      if (mask & (1u << i)) triples.push_back(universe[i]);
    }
    entry.mr = TripleSet(std::move(triples));
    std::size_t n_texts = 1 + gen() % 3;
    for (std::size_t t = 0; t < n_texts; ++t) {
      std::size_t n_sentences = 1 + gen() % 3;
      Text text;
      for (std::size_t s = 0; s < n_sentences; ++s) {
        std::string sentence = openers[gen() % openers.size()] + " item " +
                               std::to_string(++serial) + ".";
        if (!text.raw.empty()) text.raw += " ";
        text.raw += sentence;
        text.sentences.push_back(std::move(sentence));
      }
      entry.verbalisations.push_back(std::move(text));
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<WebNlgEntry> landmark_entries() {
  auto one_sentence = [](std::string raw) {
    Text t;
    t.sentences = {raw};
    t.raw = std::move(raw);
    return t;
  };
  auto joined = [](std::vector<std::string> sentences) {
    Text t;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      if (i > 0) t.raw += " ";
      t.raw += sentences[i];
    }
    t.sentences = std::move(sentences);
    return t;
  };

  const RdfTriple leader("Birmingham", "leaderName",
                         "John_Clancy_(Labour_politician)");
  const RdfTriple birth("John_Madin", "birthPlace", "Birmingham");
  const RdfTriple architect("103_Colmore_Row", "architect", "John_Madin");

  WebNlgEntry full;
  full.mr = TripleSet({leader, birth, architect});
  full.verbalisations = {
      one_sentence(
          "John Clancy is a labour politican who leads Birmingham, where "
          "architect John Madin, who designed 103 Colmore Row, was born."),
      joined({"Labour politician, John Clancy is the leader of Birmingham.",
              "John Madin was born in this city.",
              "He was the architect of 103 Colmore Row."}),
  };

  WebNlgEntry leadership;
  leadership.mr = TripleSet({leader});
  leadership.verbalisations = {one_sentence(
      "Labour politician, John Clancy is the leader of Birmingham.")};

  WebNlgEntry madin;
  madin.mr = TripleSet({birth, architect});
  madin.verbalisations = {
      joined({"John Madin was born in Birmingham.",
              "He was the architect of 103 Colmore Row."})};

  return {full, leadership, madin};
}

}  // namespace testsupport
