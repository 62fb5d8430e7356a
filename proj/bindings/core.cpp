// Python bindings: a thin veneer over the C++ core exposing the pipeline's
// main operations (datasets, training, evaluation, extraction, model I/O).
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "phishml/common.hpp"
#include "phishml/dataset.hpp"
#include "phishml/evaluation.hpp"
#include "phishml/extractor.hpp"
#include "phishml/hybrid.hpp"
#include "phishml/lookup.hpp"
#include "phishml/mcar.hpp"
#include "phishml/model_io.hpp"
#include "phishml/svm.hpp"
#include "phishml/synthetic.hpp"
#include "phishml/tree.hpp"

namespace py = pybind11;
using namespace phishml;

namespace {

FeatureVector make_vector(const std::vector<int>& values,
                          const std::optional<std::string>& label) {
    FeatureVector v;
    v.values = values;
    if (label) v.label = label_from_name(*label);
    return v;
}

std::optional<std::string> label_str(const std::optional<Label>& l) {
    if (!l) return std::nullopt;
    return std::string(label_name(*l));
}

AnyModel train_any(const std::string& kind_name, const Dataset& train, double minsupp,
                   double minconf, int max_rule_size, double reg_lambda, int epochs,
                   double tolerance, int max_depth, int min_leaf, std::uint32_t seed,
                   const std::string& rank_mode_name) {
    ModelKind kind = model_kind_from_name(kind_name);
    RankMode mode;
    if (rank_mode_name == "seeded_shuffle")
        mode = RankMode::SeededShuffle;
    else if (rank_mode_name == "lexicographic")
        mode = RankMode::Lexicographic;
    else
        throw ConfigError("rank_mode must be seeded_shuffle or lexicographic");

    switch (kind) {
        case ModelKind::Mcar:
            return AnyModel{kind,
                            train_mcar(train, McarConfig{minsupp, minconf, max_rule_size,
                                                         seed, mode})};
        case ModelKind::Svm: {
            std::vector<int> all(train.schema.arity());
            for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
            return AnyModel{kind, train_svm(train, all,
                                            SvmTrainConfig{reg_lambda, epochs, seed,
                                                           tolerance})};
        }
        case ModelKind::Tree:
            return AnyModel{kind, train_tree(train, max_depth, min_leaf)};
        case ModelKind::Hybrid: {
            HybridConfig cfg;
            cfg.minsupp = minsupp;
            cfg.minconf = minconf;
            cfg.max_rule_size = max_rule_size;
            cfg.rank_seed = seed;
            cfg.rank_mode = mode;
            cfg.svm = SvmTrainConfig{reg_lambda, epochs, seed, tolerance};
            return AnyModel{kind, train_hybrid(train, cfg)};
        }
    }
    throw std::logic_error("unknown model kind");
}

py::dict evaluation_dict(const ModelEvaluation& ev) {
    py::dict d;
    d["model_kind"] = ev.model_kind;
    py::dict cm;
    cm["tp"] = ev.cm.tp;
    cm["fp"] = ev.cm.fp;
    cm["tn"] = ev.cm.tn;
    cm["fn"] = ev.cm.fn;
    d["confusion"] = cm;
    d["accuracy"] = ev.metrics.accuracy;
    d["tp_rate"] = ev.metrics.tp_rate;
    d["fp_rate"] = ev.metrics.fp_rate;
    d["precision"] = ev.metrics.precision;
    d["recall"] = ev.metrics.recall;
    d["error_rate"] = ev.metrics.error_rate;
    d["auc"] = ev.roc_defined ? py::object(py::float_(ev.roc.auc)) : py::object(py::none());
    d["pseudo_r2"] =
        ev.r2.defined ? py::object(py::float_(ev.r2.value)) : py::object(py::none());
    d["eval_seconds"] = ev.eval_seconds;
    d["model_size_bytes"] = ev.model_size_bytes;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hybrid associative-rule + linear-SVM phishing website classifier";
    m.attr("__version__") = kVersion;

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

    py::class_<Dataset>(m, "Dataset")
        .def("__len__", [](const Dataset& d) { return d.size(); })
        .def_property_readonly(
            "feature_names",
            [](const Dataset& d) { return d.schema.feature_names; })
        .def("row_values", [](const Dataset& d, std::size_t i) {
            if (i >= d.size()) throw py::index_error();
            return d.rows[i].values;
        })
        .def("row_label", [](const Dataset& d, std::size_t i) {
            if (i >= d.size()) throw py::index_error();
            return label_str(d.rows[i].label);
        })
        .def("save", [](const Dataset& d, const std::string& path) { save_csv(d, path); },
             py::arg("path"))
        .def("fingerprint", [](const Dataset& d) { return to_hex(d.fingerprint()); })
        .def("__repr__", [](const Dataset& d) {
            return "<phishml.Dataset with " + std::to_string(d.size()) + " rows, " +
                   std::to_string(d.schema.arity()) + " features>";
        });

    py::class_<AnyModel>(m, "Model")
        .def_property_readonly(
            "kind", [](const AnyModel& m_) { return model_kind_name(m_.kind); })
        .def_property_readonly(
            "feature_names",
            [](const AnyModel& m_) { return m_.schema_feature_names(); })
        .def(
            "predict",
            [](const AnyModel& m_, const std::vector<int>& values) {
                return std::string(label_name(m_.predict(make_vector(values, std::nullopt))));
            },
            py::arg("values"))
        .def(
            "score",
            [](const AnyModel& m_, const std::vector<int>& values) {
                return m_.score(make_vector(values, std::nullopt));
            },
            py::arg("values"), "Native score; positive means legitimate")
        .def(
            "explanation",
            [](const AnyModel& m_, const std::vector<int>& values) {
                return m_.explanation(make_vector(values, std::nullopt));
            },
            py::arg("values"))
        .def("save",
             [](const AnyModel& m_, const std::string& path) { save_model(m_, path); },
             py::arg("path"))
        .def("to_json", [](const AnyModel& m_) { return serialize_model(m_); })
        .def("__repr__", [](const AnyModel& m_) {
            return "<phishml.Model kind=" + model_kind_name(m_.kind) + ">";
        });

    m.def(
        "load_csv",
        [](const std::string& path, const std::string& label_column, int phishing_value,
           int legitimate_value) {
            return load_csv(path, label_column,
                            LabelEncoding{phishing_value, legitimate_value});
        },
        py::arg("path"), py::arg("label_column") = "Result", py::arg("phishing_value") = -1,
        py::arg("legitimate_value") = 1);

    m.def(
        "synthetic_corpus",
        [](std::size_t rows, std::uint32_t seed, double phishing_fraction,
           double label_noise) {
            SyntheticSpec spec;
            spec.n_rows = rows;
            spec.seed = seed;
            spec.phishing_fraction = phishing_fraction;
            spec.label_noise = label_noise;
            return synthetic_corpus(spec);
        },
        py::arg("rows") = 11055, py::arg("seed") = 7, py::arg("phishing_fraction") = 0.557,
        py::arg("label_noise") = 0.02);

    m.def(
        "split",
        [](const Dataset& d, double train, double validate, double test,
           std::uint32_t seed) {
            Split s = split(d, SplitSpec{train, validate, test, seed});
            return py::make_tuple(std::move(s.train), std::move(s.validate),
                                  std::move(s.test));
        },
        py::arg("dataset"), py::arg("train") = 0.70, py::arg("validate") = 0.15,
        py::arg("test") = 0.15, py::arg("seed") = 42);

    m.def(
        "kfold",
        [](const Dataset& d, int k, std::uint32_t seed) {
            py::list out;
            for (auto& [tr, te] : kfold(d, k, seed))
                out.append(py::make_tuple(std::move(tr), std::move(te)));
            return out;
        },
        py::arg("dataset"), py::arg("k"), py::arg("seed") = 42);

    m.def("train", &train_any, py::arg("kind"), py::arg("dataset"),
          py::arg("minsupp") = 0.02, py::arg("minconf") = 0.5,
          py::arg("max_rule_size") = 3, py::arg("reg_lambda") = 0.01,
          py::arg("epochs") = 200, py::arg("tolerance") = 1e-6, py::arg("max_depth") = 10,
          py::arg("min_leaf") = 5, py::arg("seed") = 42,
          py::arg("rank_mode") = "seeded_shuffle",
          "Train one of: mcar, svm, tree, hybrid");

    m.def("load_model", &load_model, py::arg("path"));

    m.def(
        "evaluate",
        [](const AnyModel& m_, const Dataset& test) {
            check_schema_compatible(m_, test.schema);
            ModelEvaluation ev = evaluate_model(
                [&m_](const FeatureVector& x) { return m_.predict(x); },
                [&m_](const FeatureVector& x) { return m_.score(x); }, test, 0.0,
                model_kind_name(m_.kind));
            ev.model_size_bytes = serialize_model(m_).size();
            return evaluation_dict(ev);
        },
        py::arg("model"), py::arg("test"));

    m.def("feature_names", [] { return canonical_schema().feature_names; },
          "The canonical 30 extractor feature names");

    m.def(
        "extract_url",
        [](const std::string& url, const std::optional<std::string>& html,
           const std::optional<std::string>& fixture) {
            std::unique_ptr<LookupClient> client;
            if (fixture)
                client = std::make_unique<FixtureLookupClient>(*fixture);
            else
                client = std::make_unique<StubLookupClient>();
            ExtractionResult r = extract(url, html, *client);
            py::dict d;
            d["values"] = r.vector.values;
            py::list prov;
            for (Provenance p : r.provenance) {
                const char* name = p == Provenance::Computed ? "computed"
                                   : p == Provenance::Lookup ? "lookup"
                                                             : "unavailable_default";
                prov.append(std::string(name));
            }
            d["provenance"] = prov;
            d["feature_names"] = canonical_schema().feature_names;
            return d;
        },
        py::arg("url"), py::arg("html") = py::none(), py::arg("fixture") = py::none());

    m.def(
        "auc",
        [](const std::vector<double>& scores, const std::vector<std::string>& labels) {
            std::vector<Label> ls;
            ls.reserve(labels.size());
            for (const auto& s : labels) ls.push_back(label_from_name(s));
            return roc(scores, ls).auc;
        },
        py::arg("scores"), py::arg("labels"),
        "Trapezoidal AUC; scores oriented so higher = more likely phishing");
}
