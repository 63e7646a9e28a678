#include "websplit/rdf.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "websplit/log.hpp"
#include "websplit/text.hpp"

namespace websplit {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t\r\n\f\v");
  if (begin == std::string::npos) return "";
  std::size_t end = s.find_last_not_of(" \t\r\n\f\v");
  return s.substr(begin, end - begin + 1);
}

std::string escape_field(const std::string& field) {
  std::string out;
  out.reserve(field.size());
  for (char c : field) {
    if (c == '\\' || c == '|') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

// Key-specific escape: also encodes newlines so that joining triples with
// '\n' stays injective.
std::string escape_key_field(const std::string& field) {
  std::string out;
  out.reserve(field.size());
  for (char c : field) {
    if (c == '\\' || c == '|') {
      out.push_back('\\');
      out.push_back(c);
    } else if (c == '\n') {
      out.push_back('\\');
      out.push_back('n');
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string key_form(const RdfTriple& t) {
  return escape_key_field(t.subject) + " | " + escape_key_field(t.property) +
         " | " + escape_key_field(t.object);
}

std::string compute_key(std::vector<RdfTriple> triples) {
  std::sort(triples.begin(), triples.end());
  std::string key;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    if (i > 0) key.push_back('\n');
    key += key_form(triples[i]);
  }
  return key;
}

}  // namespace

RdfTriple::RdfTriple(std::string subject, std::string property,
                     std::string object)
    : subject(trim(subject)), property(trim(property)), object(trim(object)) {
  if (this->subject.empty() || this->property.empty() || this->object.empty()) {
    throw MalformedTriple(subject + " | " + property + " | " + object,
                          "empty field");
  }
}

std::string RdfTriple::str() const {
  return escape_field(subject) + " | " + escape_field(property) + " | " +
         escape_field(object);
}

RdfTriple parse_triple(const std::string& line) {
  std::vector<std::string> fields(1);
  bool escaped = false;
  for (char c : line) {
    if (escaped) {
      if (c != '\\' && c != '|') fields.back().push_back('\\');
      fields.back().push_back(c);
      escaped = false;
    } else if (c == '\\') {
      escaped = true;
    } else if (c == '|') {
      fields.emplace_back();
    } else {
      fields.back().push_back(c);
    }
  }
  if (escaped) fields.back().push_back('\\');
  if (fields.size() != 3) {
    throw MalformedTriple(line, "expected 3 fields separated by '|', got " +
                                    std::to_string(fields.size()));
  }
  for (std::string& field : fields) {
    field = trim(field);
    if (field.empty()) throw MalformedTriple(line, "empty field");
  }
  return RdfTriple(fields[0], fields[1], fields[2]);
}

TripleSet::TripleSet(std::vector<RdfTriple> triples) {
  std::set<RdfTriple> seen;
  for (RdfTriple& t : triples) {
    if (seen.insert(t).second) triples_.push_back(std::move(t));
  }
  key_ = compute_key(triples_);
}

bool TripleSet::contains(const RdfTriple& t) const {
  return std::find(triples_.begin(), triples_.end(), t) != triples_.end();
}

std::vector<RdfTriple> traversal_order(const TripleSet& mr) {
  const std::vector<RdfTriple>& triples = mr.triples();
  std::set<std::string> objects;
  for (const RdfTriple& t : triples) objects.insert(t.object);

  // roots: subjects that never occur as an object, in first-mention order
  std::vector<std::string> roots;
  std::set<std::string> root_seen;
  for (const RdfTriple& t : triples) {
    if (objects.count(t.subject) == 0 && root_seen.insert(t.subject).second) {
      roots.push_back(t.subject);
    }
  }

  std::vector<RdfTriple> order;
  order.reserve(triples.size());
  std::vector<bool> used(triples.size(), false);

  auto expand = [&](const std::string& node, auto&& self) -> void {
    for (std::size_t i = 0; i < triples.size(); ++i) {
      if (used[i] || triples[i].subject != node) continue;
      used[i] = true;
      order.push_back(triples[i]);
      self(triples[i].object, self);
    }
  };
  for (const std::string& root : roots) expand(root, expand);

  if (order.size() < triples.size()) {
    std::size_t remaining = triples.size() - order.size();
    log_note("meaning representation is not a forest; " +
             std::to_string(remaining) +
             " triple(s) kept in input order");
    for (std::size_t i = 0; i < triples.size(); ++i) {
      if (!used[i]) order.push_back(triples[i]);
    }
  }
  return order;
}

TreeSkeleton skeleton(const TripleSet& mr) {
  std::vector<RdfTriple> order = traversal_order(mr);
  std::map<std::string, int> label;
  int next = 0;
  auto label_of = [&](const std::string& node) {
    auto [it, fresh] = label.emplace(node, next);
    if (fresh) ++next;
    return it->second;
  };
  std::vector<std::pair<int, int>> edges;
  edges.reserve(order.size());
  for (const RdfTriple& t : order) {
    int s = label_of(t.subject);
    int o = label_of(t.object);
    edges.emplace_back(s, o);
  }
  std::sort(edges.begin(), edges.end());
  std::string encoding;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i > 0) encoding += ";";
    encoding += std::to_string(edges[i].first);
    encoding += "→";
    encoding += std::to_string(edges[i].second);
  }
  return TreeSkeleton{encoding};
}

void for_each_partition(const TripleSet& mr,
                        const std::function<void(const Partition&)>& fn) {
  std::size_t n = mr.size();
  if (n > kMaxPartitionElements) throw TooLarge(n, kMaxPartitionElements);
  if (n == 0) {
    fn(Partition{});
    return;
  }
  std::vector<RdfTriple> order = traversal_order(mr);
  std::vector<int> a(n, 0);  // restricted-growth string over positions
  while (true) {
    int blocks = *std::max_element(a.begin(), a.end()) + 1;
    Partition p;
    std::vector<std::vector<RdfTriple>> groups(
        static_cast<std::size_t>(blocks));
    for (std::size_t i = 0; i < n; ++i) {
      groups[static_cast<std::size_t>(a[i])].push_back(order[i]);
    }
    for (std::vector<RdfTriple>& g : groups) {
      p.blocks.emplace_back(std::move(g));
    }
    fn(p);

    // lexicographic successor: bump the rightmost position that can grow
    std::size_t i = n;
    while (i > 1) {
      --i;
      int max_prefix = *std::max_element(a.begin(), a.begin() + static_cast<long>(i));
      if (a[i] <= max_prefix) {
        ++a[i];
        std::fill(a.begin() + static_cast<long>(i) + 1, a.end(), 0);
        break;
      }
      a[i] = 0;  // reset while searching left
      if (i == 1) return;
    }
    if (n == 1) return;
  }
}

std::vector<Partition> enumerate_partitions(const TripleSet& mr) {
  std::vector<Partition> out;
  for_each_partition(mr, [&](const Partition& p) { out.push_back(p); });
  return out;
}

std::vector<std::string> linearize(const TripleSet& mr) {
  std::vector<std::string> tokens;
  std::vector<RdfTriple> order = traversal_order(mr);
  auto emit_field = [&](const std::string& field) {
    std::string spaced = field;
    std::replace(spaced.begin(), spaced.end(), '_', ' ');
    for (std::string& tok : tokenize(spaced)) tokens.push_back(std::move(tok));
  };
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0) tokens.push_back(kTripleBoundaryToken);
    emit_field(order[i].subject);
    emit_field(order[i].property);
    emit_field(order[i].object);
  }
  return tokens;
}

TripleSet disjoint_union(const std::vector<TripleSet>& blocks) {
  std::vector<RdfTriple> all;
  std::set<RdfTriple> seen;
  for (const TripleSet& block : blocks) {
    for (const RdfTriple& t : block.triples()) {
      if (!seen.insert(t).second) throw OverlapError(t.str());
      all.push_back(t);
    }
  }
  return TripleSet(std::move(all));
}

}  // namespace websplit
