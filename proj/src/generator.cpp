#include "websplit/generator.hpp"

#include <algorithm>
#include <cctype>

#include "websplit/io.hpp"
#include "websplit/log.hpp"

namespace websplit {

namespace {

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

// needle occurrence bounded by non-word characters on both sides
bool contains_word(const std::string& text, const std::string& needle) {
  if (needle.empty()) return false;
  std::size_t pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    bool left_ok = pos == 0 || !is_word_char(text[pos - 1]);
    std::size_t end = pos + needle.size();
    bool right_ok = end == text.size() || !is_word_char(text[end]);
    if (left_ok && right_ok) return true;
    ++pos;
  }
  return false;
}

Text segmented(const std::string& raw) { return segment_sentences(raw); }

}  // namespace

std::string realize_entity(const std::string& entity) {
  std::string spaced = entity;
  std::replace(spaced.begin(), spaced.end(), '_', ' ');
  std::string full = normalize_whitespace(spaced);
  if (!full.empty() && full.back() == ')') {
    std::size_t open = full.rfind('(');
    if (open != std::string::npos) {
      std::string stripped = normalize_whitespace(full.substr(0, open));
      if (!stripped.empty()) return stripped;
    }
  }
  return full;
}

std::string decamelize_property(const std::string& property) {
  std::string spaced = property;
  std::replace(spaced.begin(), spaced.end(), '_', ' ');
  std::string out;
  out.reserve(spaced.size() + 4);
  for (std::size_t i = 0; i < spaced.size(); ++i) {
    char c = spaced[i];
    if (c >= 'A' && c <= 'Z') {
      if (i > 0) {
        char prev = spaced[i - 1];
        if ((prev >= 'a' && prev <= 'z') || (prev >= '0' && prev <= '9')) {
          out.push_back(' ');
        }
      }
      out.push_back(static_cast<char>(c - 'A' + 'a'));
    } else {
      out.push_back(c);
    }
  }
  return normalize_whitespace(out);
}

void RetrievalIndex::add(const TripleSet& mr, const std::string& text) {
  const std::string& key = mr.canonical_key();
  ++exact_[key][text];
  ++trained_on;
  if (members_.emplace(key, mr.triples()).second) {
    skeletons_[skeleton(mr).encoding].push_back(key);
  }
}

std::optional<std::string> RetrievalIndex::exact(const TripleSet& mr) const {
  auto it = exact_.find(mr.canonical_key());
  if (it == exact_.end()) return std::nullopt;
  const std::string* best = nullptr;
  std::uint64_t best_count = 0;
  for (const auto& [text, count] : it->second) {
    if (best == nullptr || count > best_count) {
      best = &text;
      best_count = count;
    }
  }
  return best == nullptr ? std::nullopt : std::optional<std::string>(*best);
}

std::vector<RetrievalExemplar> RetrievalIndex::by_skeleton(
    const TreeSkeleton& skeleton) const {
  auto it = skeletons_.find(skeleton.encoding);
  if (it == skeletons_.end()) return {};

  struct Row {
    std::uint64_t count;
    const std::string* text;
    const std::string* key;
  };
  std::vector<Row> rows;
  for (const std::string& key : it->second) {
    for (const auto& [text, count] : exact_.at(key)) {
      rows.push_back({count, &text, &key});
    }
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.count != b.count) return a.count > b.count;
    if (*a.text != *b.text) return *a.text < *b.text;
    return *a.key < *b.key;
  });

  std::vector<RetrievalExemplar> exemplars;
  exemplars.reserve(rows.size());
  for (const Row& row : rows) {
    exemplars.push_back(
        RetrievalExemplar{TripleSet(members_.at(*row.key)), *row.text});
  }
  return exemplars;
}

std::size_t RetrievalIndex::exact_size() const { return exact_.size(); }

std::size_t RetrievalIndex::skeleton_size() const { return skeletons_.size(); }

nlohmann::json RetrievalIndex::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [key, texts] : exact_) {
    nlohmann::json entry;
    nlohmann::json mr = nlohmann::json::array();
    for (const RdfTriple& t : members_.at(key)) mr.push_back(t.str());
    entry["mr"] = std::move(mr);
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [text, count] : texts) counts[text] = count;
    entry["texts"] = std::move(counts);
    entries.push_back(std::move(entry));
  }
  nlohmann::json j;
  j["format_version"] = 1;
  j["trained_on"] = trained_on;
  j["entries"] = std::move(entries);
  return j;
}

RetrievalIndex RetrievalIndex::from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("format_version", 0) != 1) {
    throw WebsplitError("unsupported retrieval index format");
  }
  RetrievalIndex index;
  for (const auto& entry : j.value("entries", nlohmann::json::array())) {
    std::vector<RdfTriple> triples;
    for (const auto& t : entry["mr"]) {
      triples.push_back(parse_triple(t.get<std::string>()));
    }
    TripleSet mr(std::move(triples));
    const std::string& key = mr.canonical_key();
    for (const auto& [text, count] : entry["texts"].items()) {
      index.exact_[key][text] = count.get<std::uint64_t>();
    }
    if (index.members_.emplace(key, mr.triples()).second) {
      index.skeletons_[skeleton(mr).encoding].push_back(key);
    }
  }
  index.trained_on = j.value("trained_on", std::uint64_t{0});
  return index;
}

void RetrievalIndex::save(const std::filesystem::path& path) const {
  write_file(path, to_json().dump(2) + "\n");
}

RetrievalIndex RetrievalIndex::load(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw WebsplitError("cannot parse retrieval index " + path.string() + ": " +
                        e.what());
  }
  return from_json(j);
}

RetrievalIndex train_retrieval(const std::vector<WebSplitItem>& items) {
  RetrievalIndex index;
  for (const WebSplitItem& item : items) {
    for (const auto& [mr, text] : item.parts) {
      std::string raw = normalize_whitespace(text.raw);
      if (raw.empty()) continue;
      index.add(mr, raw);
    }
  }
  return index;
}

std::string template_text(const TripleSet& mr) {
  std::string out;
  for (const RdfTriple& t : traversal_order(mr)) {
    if (!out.empty()) out += " ";
    out += realize_entity(t.subject) + " " + decamelize_property(t.property) +
           " " + realize_entity(t.object) + " .";
  }
  return out;
}

Text TemplateGenerator::generate(const TripleSet& mr,
                                 const std::optional<std::string>&) const {
  Text text;
  for (const RdfTriple& t : traversal_order(mr)) {
    text.sentences.push_back(realize_entity(t.subject) + " " +
                             decamelize_property(t.property) + " " +
                             realize_entity(t.object) + " .");
    if (!text.raw.empty()) text.raw += " ";
    text.raw += text.sentences.back();
  }
  return text;
}

namespace {

// Rewrites the exemplar text with the query's entity surface forms, pairing
// entities by traversal position. Empty optional when the exemplar cannot be
// aligned cleanly.
std::optional<std::string> substitute_entities(const RetrievalExemplar& exemplar,
                                               const TripleSet& mr) {
  std::vector<RdfTriple> exemplar_order = traversal_order(exemplar.mr);
  std::vector<RdfTriple> query_order = traversal_order(mr);
  if (exemplar_order.size() != query_order.size()) return std::nullopt;

  std::map<std::string, std::string> mapping;
  auto pair_up = [&](const std::string& from_entity,
                     const std::string& to_entity) {
    std::string from = realize_entity(from_entity);
    std::string to = realize_entity(to_entity);
    auto [it, fresh] = mapping.emplace(from, to);
    return fresh || it->second == to;
  };
  for (std::size_t i = 0; i < exemplar_order.size(); ++i) {
    if (!pair_up(exemplar_order[i].subject, query_order[i].subject) ||
        !pair_up(exemplar_order[i].object, query_order[i].object)) {
      return std::nullopt;
    }
  }

  const std::string& text = exemplar.text;
  for (const auto& [from, to] : mapping) {
    if (from != to && !contains_word(text, from)) return std::nullopt;
  }

  // single left-to-right pass, longest match first, so replacements never
  // see each other's output
  std::string result;
  result.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const std::string* match_from = nullptr;
    const std::string* match_to = nullptr;
    for (const auto& [from, to] : mapping) {
      if (from.empty() || from.size() < (match_from ? match_from->size() : 1)) {
        continue;
      }
      if (text.compare(i, from.size(), from) != 0) continue;
      bool left_ok = i == 0 || !is_word_char(text[i - 1]);
      std::size_t end = i + from.size();
      bool right_ok = end == text.size() || !is_word_char(text[end]);
      if (!left_ok || !right_ok) continue;
      if (match_from == nullptr || from.size() > match_from->size()) {
        match_from = &from;
        match_to = &to;
      }
    }
    if (match_from != nullptr) {
      result += *match_to;
      i += match_from->size();
    } else {
      result.push_back(text[i]);
      ++i;
    }
  }

  for (const auto& [from, to] : mapping) {
    if (from != to && contains_word(result, from)) return std::nullopt;
  }
  return result;
}

}  // namespace

Text RetrievalGenerator::generate(const TripleSet& mr,
                                  const std::optional<std::string>&) const {
  if (std::optional<std::string> hit = index_->exact(mr)) {
    return segmented(*hit);
  }
  for (const RetrievalExemplar& exemplar : index_->by_skeleton(skeleton(mr))) {
    if (exemplar.mr == mr) continue;
    if (std::optional<std::string> text = substitute_entities(exemplar, mr)) {
      log_note("rephrased via skeleton exemplar substitution");
      return segmented(*text);
    }
  }
  log_note("rephrased via template fallback");
  return TemplateGenerator().generate(mr);
}

Text generate(const RetrievalIndex& index, const TripleSet& mr,
              const std::optional<std::string>& context) {
  return RetrievalGenerator(index).generate(mr, context);
}

}  // namespace websplit
