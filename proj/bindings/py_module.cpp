#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "textprof/cli.hpp"
#include "textprof/corpus.hpp"
#include "textprof/errors.hpp"
#include "textprof/eval.hpp"
#include "textprof/features.hpp"
#include "textprof/hierarchy.hpp"
#include "textprof/rocchio.hpp"
#include "textprof/synth.hpp"

namespace py = pybind11;
using namespace textprof;

PYBIND11_MODULE(_core, m) {
  m.doc() = "profile-learning toolkit for text filtering (C++ core)";

  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<ValidationError>(m, "ValidationError");
  py::register_exception<LookupError>(m, "LookupError");
  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<DataError>(m, "DataError");
  py::register_exception<NoiseError>(m, "NoiseError");

  py::class_<Corpus>(m, "Corpus")
      .def_static("load", &parse_corpus_file, py::arg("path"))
      .def("save", &write_corpus_file, py::arg("path"))
      .def("__len__", &Corpus::size)
      .def_property_readonly("n_positive", &Corpus::n_positive)
      .def_property_readonly("n_negative", &Corpus::n_negative)
      .def_property_readonly("n_unlabeled", &Corpus::n_unlabeled)
      .def("document_ids", [](const Corpus& c) {
        std::vector<std::string> ids;
        ids.reserve(c.documents.size());
        for (const auto& d : c.documents) ids.push_back(d.id);
        return ids;
      });

  py::class_<GeneralizationHierarchy>(m, "Hierarchy")
      .def_static("load", &GeneralizationHierarchy::load_file, py::arg("path"))
      .def_property_readonly("root", &GeneralizationHierarchy::root)
      .def("__contains__", &GeneralizationHierarchy::contains)
      .def("level", &GeneralizationHierarchy::level)
      .def("leaves", &GeneralizationHierarchy::leaves)
      .def("ancestor_at", &GeneralizationHierarchy::ancestor_at, py::arg("node"),
           py::arg("levels_up"))
      .def("covers", &GeneralizationHierarchy::covers, py::arg("general"), py::arg("specific"))
      .def("minimal_common_generalization",
           [](const GeneralizationHierarchy& h, const std::vector<std::string>& values) {
             return h.minimal_common_generalization(
                 std::set<std::string>(values.begin(), values.end()));
           });

  m.def("tokenize",
        [](const std::string& text) { return tokenize(text); },
        py::arg("text"), "lowercase tokens with the default stopwords removed");
  m.def("tfidf_weight", &tfidf_weight, py::arg("tf"), py::arg("df"), py::arg("n"));
  m.def("cosine_similarity",
        [](const TermVector& a, const TermVector& b) { return cosine_similarity(a, b); },
        py::arg("a"), py::arg("b"));

  m.def("metrics",
        [](std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn) {
          const Metrics x = metrics(Confusion{tp, fp, fn, tn});
          py::dict d;
          d["accuracy"] = x.accuracy;
          d["precision"] = x.precision;
          d["recall"] = x.recall;
          d["precision_flagged"] = x.precision_flagged;
          d["recall_flagged"] = x.recall_flagged;
          return d;
        },
        py::arg("tp"), py::arg("fp"), py::arg("fn"), py::arg("tn"));

  m.def("t_test",
        [](const std::vector<double>& a, const std::vector<double>& b, double level) {
          const TTestResult r = t_test(a, b, level);
          py::dict d;
          d["significant"] = r.significant;
          d["t"] = r.t;
          d["critical"] = r.critical;
          d["df"] = r.df;
          return d;
        },
        py::arg("a"), py::arg("b"), py::arg("level") = 0.90);

  m.def("generate_synthetic",
        [](const std::string& spec_json, const std::string& hierarchy_path,
           const std::string& lexicon_path) {
          const auto h = GeneralizationHierarchy::load_file(hierarchy_path);
          const auto lex = Lexicon::load_file(lexicon_path, h);
          return generate(gen_spec_from_json(nlohmann::json::parse(spec_json)), h, lex);
        },
        py::arg("spec_json"), py::arg("hierarchy_path"), py::arg("lexicon_path"));

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = cli::run(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "run a CLI command in-process; returns (exit_code, stdout, stderr)");
}
