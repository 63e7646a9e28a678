#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "websplit/corpus.hpp"
#include "websplit/rdf.hpp"

namespace websplit {

// A partition of the triples of a meaning representation, expressed over
// traversal positions as a restricted-growth string.  block_assignment[i] is
// the block index of the i-th triple in traversal order; block indices appear
// in first-use order, so the string is canonical for the partition.
struct SplitPattern {
  TreeSkeleton skeleton;
  std::vector<int> block_assignment;

  std::string assignment_str() const;  // e.g. "0,0,1"
  int block_count() const;

  bool operator==(const SplitPattern&) const = default;
};

std::vector<int> parse_assignment(const std::string& str);

// Canonical pattern for a partition of `mr`.  Every block must be a subset
// of `mr` and the blocks must partition it exactly, else InvalidPartition.
SplitPattern pattern_of(const TripleSet& mr, const Partition& partition);

// Expands a pattern back into concrete blocks of `mr`, in block-index order.
Partition apply_pattern(const TripleSet& mr, const std::vector<int>& assignment);

// P(partition pattern | tree skeleton), estimated by maximum likelihood from
// corpus counts.  Counts are per item occurrence: a pattern seen in k items
// contributes k.
class SplitModel {
 public:
  void add_observation(const TreeSkeleton& skeleton, const std::string& assignment);

  std::uint64_t count(const TreeSkeleton& skeleton, const std::string& assignment) const;
  std::uint64_t total(const TreeSkeleton& skeleton) const;
  double probability(const TreeSkeleton& skeleton, const std::string& assignment) const;

  // assignment -> count for one skeleton; empty map when unseen
  const std::map<std::string, std::uint64_t>& patterns(
      const TreeSkeleton& skeleton) const;

  std::size_t skeleton_count() const;
  std::size_t pattern_count() const;  // distinct (skeleton, assignment) pairs
  double mean_patterns_per_skeleton() const;

  std::uint64_t trained_on = 0;  // items observed

  nlohmann::json to_json() const;
  static SplitModel from_json(const nlohmann::json& j);
  void save(const std::filesystem::path& path) const;
  static SplitModel load(const std::filesystem::path& path);

 private:
  // skeleton encoding -> assignment string -> count; ordered for stable output
  std::map<std::string, std::map<std::string, std::uint64_t>> counts_;
  std::map<std::string, std::uint64_t> totals_;
};

// One observation per item: the pattern of the item's parts within its
// complex meaning representation.
SplitModel train_split_model(const std::vector<WebSplitItem>& items);

// Most probable partition for `mr` under the model.  Ties break toward more
// blocks, then toward the lexicographically smallest assignment (compared as
// integer sequences).  Unseen skeletons fall back to all singletons.
Partition predict_partition(const SplitModel& model, const TripleSet& mr);

}  // namespace websplit
