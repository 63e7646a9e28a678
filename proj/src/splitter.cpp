#include "websplit/splitter.hpp"

#include <algorithm>

#include "websplit/io.hpp"
#include "websplit/log.hpp"

namespace websplit {

std::string SplitPattern::assignment_str() const {
  std::string out;
  for (std::size_t i = 0; i < block_assignment.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(block_assignment[i]);
  }
  return out;
}

int SplitPattern::block_count() const {
  int max = -1;
  for (int a : block_assignment) max = std::max(max, a);
  return max + 1;
}

std::vector<int> parse_assignment(const std::string& str) {
  std::vector<int> out;
  if (str.empty()) {
    throw WebsplitError("invalid block assignment \"\"");
  }
  std::size_t start = 0;
  while (start <= str.size()) {
    std::size_t end = str.find(',', start);
    if (end == std::string::npos) end = str.size();
    std::string field = str.substr(start, end - start);
    try {
      std::size_t used = 0;
      int value = std::stoi(field, &used);
      if (used != field.size()) throw std::invalid_argument(field);
      out.push_back(value);
    } catch (const std::exception&) {
      throw WebsplitError("invalid block assignment \"" + str + "\"");
    }
    if (end == str.size()) break;
    start = end + 1;
  }
  return out;
}

SplitPattern pattern_of(const TripleSet& mr, const Partition& partition) {
  std::vector<RdfTriple> order = traversal_order(mr);
  std::map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < order.size(); ++i) {
    position.emplace(order[i].str(), i);
  }

  std::vector<int> assignment(mr.size(), -1);
  std::size_t assigned = 0;
  for (std::size_t b = 0; b < partition.blocks.size(); ++b) {
    if (partition.blocks[b].empty()) {
      throw InvalidPartition("partition block is empty");
    }
    for (const RdfTriple& t : partition.blocks[b].triples()) {
      auto it = position.find(t.str());
      if (it == position.end()) {
        throw InvalidPartition("block triple not in the meaning representation: " +
                               t.str());
      }
      if (assignment[it->second] != -1) {
        throw InvalidPartition("triple assigned to two blocks: " + t.str());
      }
      assignment[it->second] = static_cast<int>(b);
      ++assigned;
    }
  }
  if (assigned != mr.size()) {
    throw InvalidPartition("blocks do not cover the meaning representation");
  }

  // relabel blocks in first-use order over traversal positions
  std::map<int, int> relabel;
  int next = 0;
  for (int& a : assignment) {
    auto [it, fresh] = relabel.emplace(a, next);
    if (fresh) ++next;
    a = it->second;
  }
  return SplitPattern{skeleton(mr), std::move(assignment)};
}

Partition apply_pattern(const TripleSet& mr, const std::vector<int>& assignment) {
  if (assignment.size() != mr.size()) {
    throw InvalidPartition("assignment length " +
                           std::to_string(assignment.size()) +
                           " does not match meaning representation size " +
                           std::to_string(mr.size()));
  }
  int max = -1;
  for (int a : assignment) {
    if (a < 0 || a > max + 1) {
      throw InvalidPartition("assignment is not a restricted-growth string");
    }
    max = std::max(max, a);
  }
  Partition p;
  if (assignment.empty()) return p;
  std::vector<RdfTriple> order = traversal_order(mr);
  std::vector<std::vector<RdfTriple>> groups(static_cast<std::size_t>(max + 1));
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    groups[static_cast<std::size_t>(assignment[i])].push_back(order[i]);
  }
  for (std::vector<RdfTriple>& g : groups) p.blocks.emplace_back(std::move(g));
  return p;
}

void SplitModel::add_observation(const TreeSkeleton& skeleton,
                                 const std::string& assignment) {
  ++counts_[skeleton.encoding][assignment];
  ++totals_[skeleton.encoding];
}

std::uint64_t SplitModel::count(const TreeSkeleton& skeleton,
                                const std::string& assignment) const {
  auto it = counts_.find(skeleton.encoding);
  if (it == counts_.end()) return 0;
  auto jt = it->second.find(assignment);
  return jt == it->second.end() ? 0 : jt->second;
}

std::uint64_t SplitModel::total(const TreeSkeleton& skeleton) const {
  auto it = totals_.find(skeleton.encoding);
  return it == totals_.end() ? 0 : it->second;
}

double SplitModel::probability(const TreeSkeleton& skeleton,
                               const std::string& assignment) const {
  std::uint64_t t = total(skeleton);
  if (t == 0) return 0.0;
  return static_cast<double>(count(skeleton, assignment)) /
         static_cast<double>(t);
}

const std::map<std::string, std::uint64_t>& SplitModel::patterns(
    const TreeSkeleton& skeleton) const {
  static const std::map<std::string, std::uint64_t> empty;
  auto it = counts_.find(skeleton.encoding);
  return it == counts_.end() ? empty : it->second;
}

std::size_t SplitModel::skeleton_count() const { return counts_.size(); }

std::size_t SplitModel::pattern_count() const {
  std::size_t total = 0;
  for (const auto& [skeleton, patterns] : counts_) total += patterns.size();
  return total;
}

double SplitModel::mean_patterns_per_skeleton() const {
  if (counts_.empty()) return 0.0;
  return static_cast<double>(pattern_count()) /
         static_cast<double>(counts_.size());
}

nlohmann::json SplitModel::to_json() const {
  nlohmann::json skeletons = nlohmann::json::object();
  for (const auto& [encoding, patterns] : counts_) {
    nlohmann::json entry;
    entry["total"] = totals_.at(encoding);
    nlohmann::json pattern_counts = nlohmann::json::object();
    for (const auto& [assignment, count] : patterns) {
      pattern_counts[assignment] = count;
    }
    entry["patterns"] = std::move(pattern_counts);
    skeletons[encoding] = std::move(entry);
  }
  nlohmann::json j;
  j["format_version"] = 1;
  j["trained_on"] = trained_on;
  j["skeletons"] = std::move(skeletons);
  return j;
}

SplitModel SplitModel::from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("format_version", 0) != 1) {
    throw WebsplitError("unsupported split model format");
  }
  SplitModel model;
  model.trained_on = j.value("trained_on", std::uint64_t{0});
  if (j.contains("skeletons")) {
    for (const auto& [encoding, entry] : j["skeletons"].items()) {
      std::uint64_t sum = 0;
      for (const auto& [assignment, count] : entry["patterns"].items()) {
        parse_assignment(assignment);  // validates the key shape
        std::uint64_t c = count.get<std::uint64_t>();
        model.counts_[encoding][assignment] = c;
        sum += c;
      }
      if (entry.contains("total") &&
          entry["total"].get<std::uint64_t>() != sum) {
        throw WebsplitError("split model pattern counts do not sum to total for " +
                            encoding);
      }
      model.totals_[encoding] = sum;
    }
  }
  return model;
}

void SplitModel::save(const std::filesystem::path& path) const {
  write_file(path, to_json().dump(2) + "\n");
}

SplitModel SplitModel::load(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw WebsplitError("cannot parse split model " + path.string() + ": " +
                        e.what());
  }
  return from_json(j);
}

SplitModel train_split_model(const std::vector<WebSplitItem>& items) {
  SplitModel model;
  for (const WebSplitItem& item : items) {
    Partition partition;
    for (const auto& [mr, text] : item.parts) partition.blocks.push_back(mr);
    SplitPattern pattern = pattern_of(item.complex_mr, partition);
    model.add_observation(pattern.skeleton, pattern.assignment_str());
    ++model.trained_on;
  }
  return model;
}

Partition predict_partition(const SplitModel& model, const TripleSet& mr) {
  TreeSkeleton skel = skeleton(mr);
  const auto& patterns = model.patterns(skel);

  if (patterns.empty()) {
    log_note("skeleton \"" + skel.encoding +
             "\" not in split model; splitting into singletons");
    std::vector<int> singletons(mr.size());
    for (std::size_t i = 0; i < singletons.size(); ++i) {
      singletons[i] = static_cast<int>(i);
    }
    return apply_pattern(mr, singletons);
  }

  const std::vector<int>* best = nullptr;
  std::vector<std::vector<int>> parsed;
  parsed.reserve(patterns.size());
  std::uint64_t best_count = 0;
  int best_blocks = -1;
  for (const auto& [assignment, count] : patterns) {
    parsed.push_back(parse_assignment(assignment));
    const std::vector<int>& a = parsed.back();
    int blocks = a.empty() ? 0 : *std::max_element(a.begin(), a.end()) + 1;
    bool better;
    if (best == nullptr || count > best_count) {
      better = true;
    } else if (count < best_count) {
      better = false;
    } else if (blocks != best_blocks) {
      better = blocks > best_blocks;
    } else {
      better = std::lexicographical_compare(a.begin(), a.end(), best->begin(),
                                            best->end());
    }
    if (better) {
      best = &a;
      best_count = count;
      best_blocks = blocks;
    }
  }
  return apply_pattern(mr, *best);
}

}  // namespace websplit
