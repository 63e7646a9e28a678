#include "websplit/pipeline.hpp"

#include <set>

#include "json.hpp"
#include "websplit/errors.hpp"
#include "websplit/io.hpp"

namespace websplit {

Text rephrase_partition(const PipelineConfig& config, const Text& complex,
                        const TripleSet& mr, const Partition& partition) {
  if (config.backend == nullptr) {
    throw WebsplitError("pipeline requires a generator backend");
  }
  if (!(disjoint_union(partition.blocks) == mr)) {
    throw InvalidPartition(
        "partition blocks do not reconstruct the meaning representation");
  }
  std::optional<std::string> context;
  if (config.use_context) context = normalize_whitespace(complex.raw);

  Text out;
  for (const TripleSet& block : partition.blocks) {
    Text part = config.backend->generate(block, context);
    if (!out.raw.empty()) out.raw += " ";
    out.raw += part.raw;
    for (std::string& sentence : part.sentences) {
      out.sentences.push_back(std::move(sentence));
    }
  }
  return out;
}

Text split_and_rephrase(const PipelineConfig& config, const Text& complex,
                        const TripleSet& mr) {
  if (config.split_model == nullptr) {
    throw WebsplitError("pipeline requires a split model");
  }
  Partition partition = predict_partition(*config.split_model, mr);
  return rephrase_partition(config, complex, mr, partition);
}

std::vector<SystemOutput> run_system(const PipelineConfig& config,
                                     const std::vector<WebSplitItem>& items) {
  std::vector<SystemOutput> outputs;
  std::set<std::string> seen;
  for (const WebSplitItem& item : items) {
    std::string complex = normalize_whitespace(item.complex_text.raw);
    if (!seen.insert(complex).second) continue;
    Text produced = split_and_rephrase(config, item.complex_text, item.complex_mr);
    std::string id = std::to_string(outputs.size());
    id.insert(0, id.size() < 6 ? 6 - id.size() : 0, '0');
    outputs.push_back(SystemOutput{std::move(id), std::move(complex),
                                   normalize_whitespace(produced.raw)});
  }
  return outputs;
}

void write_outputs_jsonl(const std::filesystem::path& path,
                         const std::vector<SystemOutput>& outputs) {
  std::string out;
  for (const SystemOutput& o : outputs) {
    nlohmann::json j;
    j["id"] = o.id;
    j["complex"] = o.complex;
    j["output"] = o.output;
    out += j.dump();
    out += '\n';
  }
  write_file(path, out);
}

std::vector<SystemOutput> read_outputs_jsonl(const std::filesystem::path& path) {
  std::vector<SystemOutput> outputs;
  std::vector<std::string> lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (normalize_whitespace(lines[i]).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(lines[i]);
    } catch (const nlohmann::json::exception& e) {
      throw WebsplitError("outputs line " + std::to_string(i + 1) +
                          ": invalid JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("complex") || !j["complex"].is_string() ||
        !j.contains("output") || !j["output"].is_string()) {
      throw WebsplitError("outputs line " + std::to_string(i + 1) +
                          ": expected fields \"complex\" and \"output\"");
    }
    outputs.push_back(SystemOutput{j.value("id", std::string()),
                                   j["complex"].get<std::string>(),
                                   j["output"].get<std::string>()});
  }
  return outputs;
}

}  // namespace websplit
