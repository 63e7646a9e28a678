#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "websplit/corpus.hpp"
#include "websplit/rdf.hpp"
#include "websplit/text.hpp"

namespace websplit {

// Turns one meaning representation into text.  `context` carries previously
// generated text when the caller threads discourse context; the backends
// shipped here accept it but do not use it.
class GeneratorBackend {
 public:
  virtual ~GeneratorBackend() = default;
  virtual Text generate(const TripleSet& mr,
                        const std::optional<std::string>& context = {}) const = 0;
  virtual std::string name() const = 0;
};

// "John_Clancy_(Labour_politician)" -> "John Clancy"
std::string realize_entity(const std::string& entity);

// "leaderName" -> "leader name"
std::string decamelize_property(const std::string& property);

struct RetrievalExemplar {
  TripleSet mr;
  std::string text;

  bool operator==(const RetrievalExemplar&) const = default;
};

// Training pairs indexed two ways: exact lookup by canonical key, and
// skeleton lookup for entity-substitution backoff.
class RetrievalIndex {
 public:
  void add(const TripleSet& mr, const std::string& text);

  // Modal training text for this exact triple set, ties toward the
  // lexicographically smallest raw text.  Empty optional when unseen.
  std::optional<std::string> exact(const TripleSet& mr) const;

  // Exemplars whose skeleton matches, in deterministic order: descending
  // count of their text, then ascending text.
  std::vector<RetrievalExemplar> by_skeleton(const TreeSkeleton& skeleton) const;

  std::uint64_t trained_on = 0;  // pairs observed
  std::size_t exact_size() const;
  std::size_t skeleton_size() const;

  nlohmann::json to_json() const;
  static RetrievalIndex from_json(const nlohmann::json& j);
  void save(const std::filesystem::path& path) const;
  static RetrievalIndex load(const std::filesystem::path& path);

 private:
  // canonical key -> text -> count
  std::map<std::string, std::map<std::string, std::uint64_t>> exact_;
  // skeleton encoding -> canonical key (insertion deduped via map)
  std::map<std::string, std::vector<std::string>> skeletons_;
  // canonical key -> the triples themselves, for substitution alignment
  std::map<std::string, std::vector<RdfTriple>> members_;
};

// One pair per part of every item: (part mr, part text raw).
RetrievalIndex train_retrieval(const std::vector<WebSplitItem>& items);

// Deterministic rule-based fallback: one sentence per triple,
// "<subject realized> <property decamelized> <object realized> ."
std::string template_text(const TripleSet& mr);

class TemplateGenerator : public GeneratorBackend {
 public:
  Text generate(const TripleSet& mr,
                const std::optional<std::string>& context = {}) const override;
  std::string name() const override { return "template"; }
};

// Tier 1: exact match.  Tier 2: same-skeleton exemplar with entity
// substitution.  Tier 3: template fallback.
class RetrievalGenerator : public GeneratorBackend {
 public:
  explicit RetrievalGenerator(const RetrievalIndex& index) : index_(&index) {}
  Text generate(const TripleSet& mr,
                const std::optional<std::string>& context = {}) const override;
  std::string name() const override { return "retrieval"; }

 private:
  const RetrievalIndex* index_;
};

// Convenience over a throwaway RetrievalGenerator.
Text generate(const RetrievalIndex& index, const TripleSet& mr,
              const std::optional<std::string>& context = {});

}  // namespace websplit
