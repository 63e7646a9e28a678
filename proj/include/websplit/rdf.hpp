#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "websplit/errors.hpp"

namespace websplit {

/// One subject|property|object assertion. Fields are stored unescaped and
/// whitespace-trimmed; all three are non-empty.
struct RdfTriple {
  std::string subject;
  std::string property;
  std::string object;

  RdfTriple(std::string subject, std::string property, std::string object);

  /// Wire form: fields with `\` and `|` backslash-escaped, joined by " | ".
  /// parse_triple(str()) round-trips.
  std::string str() const;

  auto operator<=>(const RdfTriple&) const = default;
};

/// Parses "subject | property | object". `\|` escapes a literal pipe and
/// `\\` a literal backslash. Throws MalformedTriple when the separator
/// count is not 2 or a field is empty after trimming.
RdfTriple parse_triple(const std::string& line);

/// An ordered set of triples: input order is preserved, duplicates are
/// dropped (first occurrence wins). Equality is structural via
/// canonical_key(), independent of input order.
class TripleSet {
 public:
  TripleSet() = default;
  explicit TripleSet(std::vector<RdfTriple> triples);

  const std::vector<RdfTriple>& triples() const { return triples_; }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  bool contains(const RdfTriple& t) const;

  /// Triples sorted by (subject, property, object), newline-joined in a
  /// form that escapes the join characters. Opaque, injective per set.
  const std::string& canonical_key() const { return key_; }

  bool operator==(const TripleSet& other) const { return key_ == other.key_; }
  bool operator<(const TripleSet& other) const { return key_ < other.key_; }

 private:
  std::vector<RdfTriple> triples_;
  std::string key_;
};

/// Graph shape of a TripleSet with entity and property names stripped:
/// nodes relabeled by depth-first discovery index, sorted "i→j" edge list
/// joined with ";".
struct TreeSkeleton {
  std::string encoding;
  auto operator<=>(const TreeSkeleton&) const = default;
};

/// A decomposition of some TripleSet into pairwise-disjoint non-empty
/// blocks. Blocks produced by this library are ordered by the minimum
/// traversal index of their triples.
struct Partition {
  std::vector<TripleSet> blocks;
};

/// All triples exactly once, in left-to-right depth-first order from each
/// root (a node appearing as subject but never as object). Roots and
/// sibling edges follow input order. A cyclic MR (no root, or a cycle
/// unreachable from any root) falls back to input order for the remaining
/// triples; the fallback is reported through log_note.
std::vector<RdfTriple> traversal_order(const TripleSet& mr);

TreeSkeleton skeleton(const TripleSet& mr);

inline constexpr std::size_t kMaxPartitionElements = 12;

/// Calls fn for every set partition of mr's triples, each exactly once, in
/// lexicographic order of the restricted-growth string over traversal
/// positions. Throws TooLarge when |mr| > kMaxPartitionElements.
void for_each_partition(const TripleSet& mr,
                        const std::function<void(const Partition&)>& fn);

/// Materialized for_each_partition; Bell(|mr|) partitions.
std::vector<Partition> enumerate_partitions(const TripleSet& mr);

/// Token between triples in a linearized MR.
inline constexpr const char* kTripleBoundaryToken = "<sep>";

/// Triples in traversal order rendered as `subject property object`, each
/// field underscore-split and tokenized, with kTripleBoundaryToken between
/// consecutive triples.
std::vector<std::string> linearize(const TripleSet& mr);

/// Union of the blocks; throws OverlapError naming the first triple that
/// appears twice.
TripleSet disjoint_union(const std::vector<TripleSet>& blocks);

}  // namespace websplit
