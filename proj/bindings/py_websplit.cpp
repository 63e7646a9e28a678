// Python bindings over the core library. The surface mirrors the main
// operations: RDF parsing, traversal and partitions, text utilities, the
// split model, retrieval generation, the pipeline, and BLEU.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "websplit/corpus.hpp"
#include "websplit/errors.hpp"
#include "websplit/eval.hpp"
#include "websplit/generator.hpp"
#include "websplit/pipeline.hpp"
#include "websplit/rdf.hpp"
#include "websplit/splitter.hpp"
#include "websplit/text.hpp"

namespace py = pybind11;

using namespace websplit;

PYBIND11_MODULE(_websplit, m) {
  m.doc() = "Split-and-Rephrase benchmark construction and evaluation core";

  py::register_exception<WebsplitError>(m, "WebsplitError");

  py::class_<RdfTriple>(m, "RdfTriple")
      .def(py::init<std::string, std::string, std::string>(),
           py::arg("subject"), py::arg("property"), py::arg("object"))
      .def_readonly("subject", &RdfTriple::subject)
      .def_readonly("property", &RdfTriple::property)
      .def_readonly("object", &RdfTriple::object)
      .def("__str__", &RdfTriple::str)
      .def("__repr__",
           [](const RdfTriple& t) { return "RdfTriple(" + t.str() + ")"; })
      .def(py::self == py::self);

  py::class_<TripleSet>(m, "TripleSet")
      .def(py::init<>())
      .def(py::init<std::vector<RdfTriple>>(), py::arg("triples"))
      .def_property_readonly("triples", &TripleSet::triples)
      .def("__len__", &TripleSet::size)
      .def("contains", &TripleSet::contains, py::arg("triple"))
      .def_property_readonly(
          "canonical_key",
          [](const TripleSet& ts) { return ts.canonical_key(); })
      .def("__repr__",
           [](const TripleSet& ts) {
             return "TripleSet(" + std::to_string(ts.size()) + " triples)";
           })
      .def(py::self == py::self);

  m.def("parse_triple", &parse_triple, py::arg("line"));
  m.def("traversal_order", &traversal_order, py::arg("mr"));
  m.def(
      "skeleton", [](const TripleSet& mr) { return skeleton(mr).encoding; },
      py::arg("mr"));
  m.def(
      "enumerate_partitions",
      [](const TripleSet& mr) {
        std::vector<std::vector<TripleSet>> out;
        for (Partition& p : enumerate_partitions(mr)) {
          out.push_back(std::move(p.blocks));
        }
        return out;
      },
      py::arg("mr"));
  m.def("linearize", &linearize, py::arg("mr"));
  m.def("disjoint_union", &disjoint_union, py::arg("blocks"));

  m.def("normalize_whitespace", &normalize_whitespace, py::arg("text"));
  m.def(
      "segment_sentences",
      [](const std::string& raw, const std::vector<std::string>& abbreviations) {
        AbbreviationLexicon lexicon(abbreviations.begin(), abbreviations.end());
        return segment_sentences(raw, lexicon).sentences;
      },
      py::arg("raw"), py::arg("abbreviations") = std::vector<std::string>{});
  m.def("tokenize", &tokenize, py::arg("text"));

  m.def("realize_entity", &realize_entity, py::arg("entity"));
  m.def("decamelize_property", &decamelize_property, py::arg("property"));
  m.def("template_text", &template_text, py::arg("mr"));
  m.def("bleu4_multi_ref", &bleu4_multi_ref, py::arg("hypothesis"),
        py::arg("references"));

  py::class_<SplitModel>(m, "SplitModel")
      .def(py::init<>())
      .def(
          "add_observation",
          [](SplitModel& model, const std::string& skeleton_encoding,
             const std::string& assignment) {
            model.add_observation(TreeSkeleton{skeleton_encoding}, assignment);
          },
          py::arg("skeleton"), py::arg("assignment"))
      .def(
          "probability",
          [](const SplitModel& model, const std::string& skeleton_encoding,
             const std::string& assignment) {
            return model.probability(TreeSkeleton{skeleton_encoding},
                                     assignment);
          },
          py::arg("skeleton"), py::arg("assignment"))
      .def(
          "predict",
          [](const SplitModel& model, const TripleSet& mr) {
            return predict_partition(model, mr).blocks;
          },
          py::arg("mr"))
      .def_readonly("trained_on", &SplitModel::trained_on)
      .def("skeleton_count", &SplitModel::skeleton_count)
      .def("pattern_count", &SplitModel::pattern_count)
      .def(
          "save",
          [](const SplitModel& model, const std::string& path) {
            model.save(path);
          },
          py::arg("path"))
      .def_static(
          "load",
          [](const std::string& path) { return SplitModel::load(path); },
          py::arg("path"))
      .def_static(
          "train_from_file",
          [](const std::string& path) {
            return train_split_model(read_items_jsonl(path));
          },
          py::arg("path"));

  py::class_<RetrievalIndex>(m, "RetrievalIndex")
      .def(py::init<>())
      .def(
          "add",
          [](RetrievalIndex& index, const TripleSet& mr,
             const std::string& text) { index.add(mr, text); },
          py::arg("mr"), py::arg("text"))
      .def(
          "exact",
          [](const RetrievalIndex& index, const TripleSet& mr) {
            return index.exact(mr);
          },
          py::arg("mr"))
      .def(
          "generate",
          [](const RetrievalIndex& index, const TripleSet& mr) {
            return generate(index, mr).raw;
          },
          py::arg("mr"))
      .def_readonly("trained_on", &RetrievalIndex::trained_on)
      .def(
          "save",
          [](const RetrievalIndex& index, const std::string& path) {
            index.save(path);
          },
          py::arg("path"))
      .def_static(
          "load",
          [](const std::string& path) { return RetrievalIndex::load(path); },
          py::arg("path"))
      .def_static(
          "train_from_file",
          [](const std::string& path) {
            return train_retrieval(read_items_jsonl(path));
          },
          py::arg("path"));

  m.def(
      "rephrase",
      [](const SplitModel& model, const RetrievalIndex& index,
         const TripleSet& mr, const std::string& complex) {
        RetrievalGenerator backend(index);
        PipelineConfig config;
        config.split_model = &model;
        config.backend = &backend;
        Text text = segment_sentences(complex);
        return split_and_rephrase(config, text, mr).raw;
      },
      py::arg("model"), py::arg("index"), py::arg("mr"),
      py::arg("complex") = std::string());
}
