#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "websplit/corpus.hpp"
#include "websplit/generator.hpp"
#include "websplit/splitter.hpp"

namespace websplit {

struct PipelineConfig {
  const SplitModel* split_model = nullptr;
  const GeneratorBackend* backend = nullptr;
  bool use_context = false;  // thread generated text into later calls
};

// Partition `mr` with the split model, realize each block in traversal order
// of its first triple, and join the texts with single spaces. `complex` is
// the sentence being split; it reaches the generator as context only when
// config.use_context is set.
Text split_and_rephrase(const PipelineConfig& config, const Text& complex,
                        const TripleSet& mr);

// As above but with the partition fixed by the caller. The blocks must
// reconstruct `mr` exactly.
Text rephrase_partition(const PipelineConfig& config, const Text& complex,
                        const TripleSet& mr, const Partition& partition);

struct SystemOutput {
  std::string id;       // stable per-item identifier
  std::string complex;  // the complex sentence, normalized raw
  std::string output;   // the produced simple-sentence sequence

  bool operator==(const SystemOutput&) const = default;
};

// One output per item, id-ed by zero-padded position in `items`.
std::vector<SystemOutput> run_system(const PipelineConfig& config,
                                     const std::vector<WebSplitItem>& items);

void write_outputs_jsonl(const std::filesystem::path& path,
                         const std::vector<SystemOutput>& outputs);
std::vector<SystemOutput> read_outputs_jsonl(const std::filesystem::path& path);

}  // namespace websplit
