#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "websplit/corpus.hpp"
#include "websplit/eval.hpp"
#include "websplit/generator.hpp"
#include "websplit/io.hpp"
#include "websplit/pipeline.hpp"
#include "websplit/splitter.hpp"
#include "websplit/version.hpp"

namespace {

using namespace websplit;

AbbreviationLexicon abbrev_or_empty(const std::string& path) {
  return path.empty() ? AbbreviationLexicon{} : load_abbreviations(path);
}

SegmentationOverrides overrides_or_empty(const std::string& path) {
  return path.empty() ? SegmentationOverrides{} : load_overrides(path);
}

SplitRatios parse_ratios(const std::string& spec) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t end = spec.find(',', start);
    if (end == std::string::npos) end = spec.size();
    try {
      values.push_back(std::stod(spec.substr(start, end - start)));
    } catch (const std::exception&) {
      throw WebsplitError("cannot parse --ratios \"" + spec +
                          "\"; expected train,val,test");
    }
    if (end == spec.size()) break;
    start = end + 1;
  }
  if (values.size() != 3) {
    throw WebsplitError("--ratios needs exactly three comma-separated values");
  }
  return SplitRatios{values[0], values[1], values[2]};
}

struct BuildArgs {
  std::string entries;
  std::string out;
  std::string abbrev;
  std::string overrides;
  bool lenient = false;
  bool stats_only = false;
};

int cmd_build(const BuildArgs& args) {
  IngestResult ingested = ingest(args.entries, IngestOptions{args.lenient});
  if (ingested.entries.empty()) {
    throw WebsplitError("no entries in " + args.entries);
  }
  if (!ingested.errors.empty()) {
    std::cerr << "skipped " << ingested.errors.size() << " malformed line(s)\n";
  }

  segment_entries(ingested.entries, abbrev_or_empty(args.abbrev),
                  overrides_or_empty(args.overrides));
  BuildResult built = build_corpus(ingested.entries);
  nlohmann::json stats = stats_to_json(corpus_stats(built.items));
  std::cout << stats.dump(2) << "\n";

  if (!args.stats_only) {
    if (args.out.empty()) {
      throw WebsplitError("--out is required unless --stats-only is given");
    }
    write_items_jsonl(args.out, built.items);
    write_file(args.out + ".stats.json", stats.dump(2) + "\n");
    std::vector<std::filesystem::path> inputs = {args.entries};
    if (!args.abbrev.empty()) inputs.push_back(args.abbrev);
    if (!args.overrides.empty()) inputs.push_back(args.overrides);
    write_metadata(args.out, "build", 0, inputs);
  }
  return 0;
}

struct SplitDataArgs {
  std::string items;
  std::string out_dir;
  std::string ratios = "0.8,0.1,0.1";
  std::uint64_t seed = 1;
};

int cmd_split_data(const SplitDataArgs& args) {
  std::vector<WebSplitItem> items = read_items_jsonl(args.items);
  DataSplit split = split_train_val_test(items, parse_ratios(args.ratios),
                                         args.seed);
  std::filesystem::create_directories(args.out_dir);
  std::filesystem::path dir(args.out_dir);
  write_items_jsonl(dir / "train.jsonl", split.train);
  write_items_jsonl(dir / "val.jsonl", split.val);
  write_items_jsonl(dir / "test.jsonl", split.test);
  for (const char* name : {"train.jsonl", "val.jsonl", "test.jsonl"}) {
    write_metadata(dir / name, "split-data", args.seed, {args.items});
  }
  nlohmann::json summary;
  summary["train"] = split.train.size();
  summary["val"] = split.val.size();
  summary["test"] = split.test.size();
  std::cout << summary.dump(2) << "\n";
  return 0;
}

struct TrainSplitArgs {
  std::string items;
  std::string model;
};

int cmd_train_split(const TrainSplitArgs& args) {
  std::vector<WebSplitItem> items = read_items_jsonl(args.items);
  SplitModel model = train_split_model(items);
  model.save(args.model);
  write_metadata(args.model, "train-split", 0, {args.items});
  nlohmann::json summary;
  summary["trained_on"] = model.trained_on;
  summary["skeletons"] = model.skeleton_count();
  summary["patterns"] = model.pattern_count();
  summary["mean_patterns_per_skeleton"] = model.mean_patterns_per_skeleton();
  std::cout << summary.dump(2) << "\n";
  return 0;
}

struct TrainGenArgs {
  std::string items;
  std::string index;
};

int cmd_train_gen(const TrainGenArgs& args) {
  std::vector<WebSplitItem> items = read_items_jsonl(args.items);
  RetrievalIndex index = train_retrieval(items);
  index.save(args.index);
  write_metadata(args.index, "train-gen", 0, {args.items});
  nlohmann::json summary;
  summary["trained_on"] = index.trained_on;
  summary["meaning_representations"] = index.exact_size();
  summary["skeletons"] = index.skeleton_size();
  std::cout << summary.dump(2) << "\n";
  return 0;
}

struct RunArgs {
  std::string items;
  std::string model;
  std::string index;
  std::string out;
  bool use_context = false;
};

int cmd_run(const RunArgs& args) {
  std::vector<WebSplitItem> items = read_items_jsonl(args.items);
  SplitModel model = SplitModel::load(args.model);

  RetrievalIndex index;
  TemplateGenerator template_backend;
  RetrievalGenerator retrieval_backend(index);
  PipelineConfig config;
  config.split_model = &model;
  config.use_context = args.use_context;
  std::vector<std::filesystem::path> inputs = {args.items, args.model};
  if (args.index.empty()) {
    config.backend = &template_backend;
  } else {
    index = RetrievalIndex::load(args.index);
    config.backend = &retrieval_backend;
    inputs.push_back(args.index);
  }

  std::vector<SystemOutput> outputs = run_system(config, items);
  write_outputs_jsonl(args.out, outputs);
  write_metadata(args.out, "run", 0, inputs);
  nlohmann::json summary;
  summary["outputs"] = outputs.size();
  std::cout << summary.dump(2) << "\n";
  return 0;
}

struct EvalArgs {
  std::string outputs;
  std::string refs;
  std::string name = "system";
  std::string out;
  std::string abbrev;
  std::string overrides;
  bool lowercase = false;
  bool pretokenized = false;
};

int cmd_eval(const EvalArgs& args) {
  std::vector<SystemOutput> outputs = read_outputs_jsonl(args.outputs);
  std::vector<WebSplitItem> refs = read_items_jsonl(args.refs);
  EvalOptions options;
  options.lowercase = args.lowercase;
  options.pretokenized = args.pretokenized;
  options.abbreviations = abbrev_or_empty(args.abbrev);
  options.overrides = overrides_or_empty(args.overrides);
  EvalReport report = evaluate_system(args.name, outputs, refs, options);
  std::cout << report_table({report});
  if (!args.out.empty()) {
    write_file(args.out, report.to_json().dump(2) + "\n");
    write_metadata(args.out, "eval", 0, {args.outputs, args.refs});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Split-and-Rephrase corpus construction, training, and "
               "evaluation toolkit"};
  app.set_version_flag("--version", std::string(websplit::kToolVersion));
  app.set_config("--config");
  app.require_subcommand(1);

  std::function<int()> action;

  auto* build = app.add_subcommand(
      "build", "Construct corpus items from a JSON-lines entries file");
  auto build_args = std::make_shared<BuildArgs>();
  build->add_option("--entries", build_args->entries, "entries JSON-lines file")
      ->required();
  build->add_option("--out", build_args->out, "output items JSON-lines file");
  build->add_option("--abbrev", build_args->abbrev, "abbreviation lexicon");
  build->add_option("--overrides", build_args->overrides,
                    "sentence segmentation overrides (JSON)");
  build->add_flag("--lenient", build_args->lenient,
                  "skip malformed entry lines instead of failing");
  build->add_flag("--stats-only", build_args->stats_only,
                  "print corpus statistics without writing items");
  build->callback([&action, build_args] {
    action = [build_args] { return cmd_build(*build_args); };
  });

  auto* split_data = app.add_subcommand(
      "split-data", "Partition items into train/val/test by complex sentence");
  auto split_args = std::make_shared<SplitDataArgs>();
  split_data->add_option("items", split_args->items, "items JSON-lines file")
      ->required();
  split_data->add_option("--out", split_args->out_dir, "output directory")
      ->required();
  split_data->add_option("--ratios", split_args->ratios,
                         "train,val,test fractions (default 0.8,0.1,0.1)");
  split_data->add_option("--seed", split_args->seed, "shuffle seed");
  split_data->callback([&action, split_args] {
    action = [split_args] { return cmd_split_data(*split_args); };
  });

  auto* train_split = app.add_subcommand(
      "train-split", "Estimate the partition model from training items");
  auto ts_args = std::make_shared<TrainSplitArgs>();
  train_split->add_option("items", ts_args->items, "training items file")
      ->required();
  train_split->add_option("--model", ts_args->model, "output model JSON file")
      ->required();
  train_split->callback([&action, ts_args] {
    action = [ts_args] { return cmd_train_split(*ts_args); };
  });

  auto* train_gen = app.add_subcommand(
      "train-gen", "Build the retrieval index from training items");
  auto tg_args = std::make_shared<TrainGenArgs>();
  train_gen->add_option("items", tg_args->items, "training items file")
      ->required();
  train_gen->add_option("--index", tg_args->index, "output index JSON file")
      ->required();
  train_gen->callback([&action, tg_args] {
    action = [tg_args] { return cmd_train_gen(*tg_args); };
  });

  auto* run = app.add_subcommand(
      "run", "Split and rephrase every complex sentence in an items file");
  auto run_args = std::make_shared<RunArgs>();
  run->add_option("items", run_args->items, "items file with complex sentences")
      ->required();
  run->add_option("--model", run_args->model, "split model JSON file")
      ->required();
  run->add_option("--index", run_args->index,
                  "retrieval index (omit to use the template generator)");
  run->add_option("--out", run_args->out, "output JSON-lines file")->required();
  run->add_flag("--use-context", run_args->use_context,
                "pass the complex sentence to the generator");
  run->callback([&action, run_args] {
    action = [run_args] { return cmd_run(*run_args); };
  });

  auto* eval = app.add_subcommand(
      "eval", "Score system outputs against reference items");
  auto eval_args = std::make_shared<EvalArgs>();
  eval->add_option("outputs", eval_args->outputs, "system outputs JSON-lines")
      ->required();
  eval->add_option("refs", eval_args->refs, "reference items JSON-lines")
      ->required();
  eval->add_option("--name", eval_args->name, "system name for the report");
  eval->add_option("--out", eval_args->out, "write the JSON report here");
  eval->add_option("--abbrev", eval_args->abbrev, "abbreviation lexicon");
  eval->add_option("--overrides", eval_args->overrides,
                   "sentence segmentation overrides (JSON)");
  eval->add_flag("--lowercase", eval_args->lowercase,
                 "lowercase before scoring");
  eval->add_flag("--pretokenized", eval_args->pretokenized,
                 "split tokens on whitespace only");
  eval->callback([&action, eval_args] {
    action = [eval_args] { return cmd_eval(*eval_args); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return action ? action() : 2;
  } catch (const websplit::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const websplit::WebsplitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
