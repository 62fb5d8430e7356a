// phishml command-line tool: extract features, train/evaluate/compare the
// rule-mining, SVM, tree and hybrid classifiers, and predict single sites.
//
// Exit codes: 0 success, 1 usage/config error, 2 data error, 3 internal error.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "phishml/common.hpp"
#include "phishml/dataset.hpp"
#include "phishml/evaluation.hpp"
#include "phishml/extractor.hpp"
#include "phishml/hybrid.hpp"
#include "phishml/lookup.hpp"
#include "phishml/mcar.hpp"
#include "phishml/model_io.hpp"
#include "phishml/svm.hpp"
#include "phishml/tree.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace phishml;

double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

struct GlobalOpts {
    std::string out_dir;
    std::uint32_t seed = 42;
};

struct DataOpts {
    std::string path;
    std::string label_column = "Result";
    int phishing_value = -1;
    int legitimate_value = 1;

    LabelEncoding encoding() const {
        if (phishing_value == legitimate_value)
            throw ConfigError("phishing and legitimate label values must differ");
        return LabelEncoding{phishing_value, legitimate_value};
    }
};

struct HyperOpts {
    double minsupp = 0.02;
    double minconf = 0.5;
    int max_rule_size = 3;
    std::string rank_mode = "seeded_shuffle";
    double lambda = 0.01;
    int epochs = 200;
    double tolerance = 1e-6;
    int max_depth = 10;
    int min_leaf = 5;

    RankMode mode() const {
        if (rank_mode == "seeded_shuffle") return RankMode::SeededShuffle;
        if (rank_mode == "lexicographic") return RankMode::Lexicographic;
        throw ConfigError("rank mode must be seeded_shuffle or lexicographic");
    }
};

struct LookupOpts {
    std::string fixture_path;
    bool live_dns = false;
    std::string thresholds_path;

    std::unique_ptr<LookupClient> make_client() const {
        if (!fixture_path.empty()) return std::make_unique<FixtureLookupClient>(fixture_path);
        if (live_dns) return std::make_unique<LiveDnsLookupClient>();
        return std::make_unique<StubLookupClient>();
    }
    ExtractionThresholds thresholds() const {
        if (thresholds_path.empty()) return ExtractionThresholds{};
        return ExtractionThresholds::load(thresholds_path);
    }
};

void add_data_options(CLI::App* sub, DataOpts& d, bool required = true) {
    auto* opt = sub->add_option("--data", d.path, "Dataset CSV path");
    if (required) opt->required();
    sub->add_option("--label-column", d.label_column, "Name of the label column")
        ->capture_default_str();
    sub->add_option("--phishing-value", d.phishing_value,
                    "Label cell value meaning phishing")
        ->capture_default_str();
    sub->add_option("--legitimate-value", d.legitimate_value,
                    "Label cell value meaning legitimate")
        ->capture_default_str();
}

void add_lookup_options(CLI::App* sub, LookupOpts& l) {
    sub->add_option("--fixture", l.fixture_path,
                    "JSON fixture with per-host lookup answers (offline default)");
    sub->add_flag("--live-dns", l.live_dns,
                  "Resolve DNS-record presence live instead of via fixture");
    sub->add_option("--thresholds", l.thresholds_path,
                    "JSON file overriding the feature threshold table");
}

std::filesystem::path resolve_out(const GlobalOpts& g, const std::string& name) {
    std::filesystem::path p(name);
    if (p.is_absolute()) return p;
    return std::filesystem::path(g.out_dir) / p;
}

void ensure_out_dir(const GlobalOpts& g) {
    std::error_code ec;
    std::filesystem::create_directories(g.out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + g.out_dir + ": " + ec.message());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << text;
    if (!out) throw DataError("failed while writing " + path.string());
}

// ---------------------------------------------------------------------------
// Shared report plumbing
// ---------------------------------------------------------------------------

json evaluation_to_json(const ModelEvaluation& ev) {
    json j;
    j["model_kind"] = ev.model_kind;
    j["confusion"] = json{{"tp", ev.cm.tp}, {"fp", ev.cm.fp}, {"tn", ev.cm.tn},
                          {"fn", ev.cm.fn}, {"total", ev.cm.total()}};
    j["metrics"] = json{{"accuracy", ev.metrics.accuracy},
                        {"tp_rate", ev.metrics.tp_rate},
                        {"fp_rate", ev.metrics.fp_rate},
                        {"precision", ev.metrics.precision},
                        {"recall", ev.metrics.recall},
                        {"error_rate", ev.metrics.error_rate},
                        {"tp_rate_defined", ev.metrics.tp_rate_defined},
                        {"fp_rate_defined", ev.metrics.fp_rate_defined},
                        {"precision_defined", ev.metrics.precision_defined}};
    j["roc_defined"] = ev.roc_defined;
    if (ev.roc_defined) j["auc"] = ev.roc.auc;
    j["pseudo_r2"] = json{{"value", ev.r2.value},
                          {"converged", ev.r2.converged},
                          {"iterations", ev.r2.iterations},
                          {"defined", ev.r2.defined}};
    j["timing"] = json{{"train_seconds", round3(ev.train_seconds)},
                       {"eval_seconds", round3(ev.eval_seconds)}};
    j["model_size_bytes"] = ev.model_size_bytes;
    return j;
}

ModelEvaluation evaluate_any(const AnyModel& m, const Dataset& test, double train_seconds) {
    ModelEvaluation ev = evaluate_model(
        [&m](const FeatureVector& x) { return m.predict(x); },
        [&m](const FeatureVector& x) { return m.score(x); }, test, train_seconds,
        model_kind_name(m.kind));
    ev.model_size_bytes = serialize_model(m).size();
    return ev;
}

void check_schema_or_explain(const AnyModel& m, const FeatureSchema& schema) {
    if (schema.feature_names == m.schema_feature_names()) return;
    std::ostringstream msg;
    msg << "dataset schema does not match the model's training schema\n  model schema:";
    for (const auto& n : m.schema_feature_names()) msg << ' ' << n;
    msg << "\n  data schema:";
    for (const auto& n : schema.feature_names) msg << ' ' << n;
    throw DataError(msg.str());
}

// ---------------------------------------------------------------------------
// extract
// ---------------------------------------------------------------------------

struct ExtractOpts {
    std::string url;
    std::string urls_file;
    std::string html_file;
    std::string out_csv = "features.csv";
    LookupOpts lookup;
};

int run_extract(const GlobalOpts& g, const ExtractOpts& o) {
    if (o.url.empty() && o.urls_file.empty())
        throw ConfigError("extract needs --url or --urls");
    ensure_out_dir(g);

    std::vector<std::pair<long, std::string>> inputs;  // (line number, url)
    if (!o.url.empty()) {
        inputs.emplace_back(0, o.url);
    } else {
        std::ifstream in(o.urls_file);
        if (!in) throw DataError("cannot open URL list: " + o.urls_file);
        std::string line;
        long line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            std::string t = line;
            t.erase(0, t.find_first_not_of(" \t"));
            if (t.empty() || t[0] == '#') continue;
            inputs.emplace_back(line_no, t);
        }
    }

    std::optional<std::string> html;
    if (!o.html_file.empty()) {
        std::ifstream in(o.html_file, std::ios::binary);
        if (!in) throw DataError("cannot open HTML file: " + o.html_file);
        std::ostringstream buf;
        buf << in.rdbuf();
        html = buf.str();
    }

    auto client = o.lookup.make_client();
    ExtractionThresholds thresholds = o.lookup.thresholds();

    Dataset out;
    out.schema = canonical_schema();
    long failures = 0;
    for (const auto& [line_no, url] : inputs) {
        try {
            ExtractionResult r = extract(url, html, *client, thresholds);
            out.rows.push_back(std::move(r.vector));
        } catch (const DataError& e) {
            ++failures;
            if (line_no > 0)
                std::cerr << "line " << line_no << ": " << e.what() << "\n";
            else
                std::cerr << "error: " << e.what() << "\n";
        }
    }

    if (inputs.empty())
        std::cerr << "warning: no URLs in input; writing a header-only CSV\n";

    const auto path = resolve_out(g, o.out_csv);
    save_csv(out, path.string());
    std::cout << "wrote " << out.rows.size() << " feature row(s) to " << path.string() << "\n";
    if (!inputs.empty() && out.rows.empty()) {
        std::cerr << "error: every URL failed to extract\n";
        return 2;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

struct TrainOpts {
    DataOpts data;
    std::string model_kind = "hybrid";
    double train_fraction = 0.70;
    double validate_fraction = 0.15;
    double test_fraction = 0.15;
    int kfold_k = 0;  // 0 = plain split
    bool dump_splits = false;
    std::string model_out;  // default derived from kind
    HyperOpts hyper;
};

struct TrainedModel {
    AnyModel model;
    double train_seconds = 0.0;
    std::vector<StageRecord> stages;      // hybrid only
    McarStageCounts mcar_counts;          // mcar only
    bool has_mcar_counts = false;
};

TrainedModel train_one(ModelKind kind, const Dataset& train, const GlobalOpts& g,
                       const HyperOpts& h) {
    TrainedModel out;
    const auto t0 = std::chrono::steady_clock::now();
    switch (kind) {
        case ModelKind::Mcar: {
            McarConfig cfg{h.minsupp, h.minconf, h.max_rule_size, g.seed, h.mode()};
            out.model = AnyModel{kind, train_mcar(train, cfg, &out.mcar_counts)};
            out.has_mcar_counts = true;
            break;
        }
        case ModelKind::Svm: {
            SvmTrainConfig cfg{h.lambda, h.epochs, g.seed, h.tolerance};
            std::vector<int> all(train.schema.arity());
            for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
            out.model = AnyModel{kind, train_svm(train, all, cfg)};
            break;
        }
        case ModelKind::Tree: {
            out.model = AnyModel{kind, train_tree(train, h.max_depth, h.min_leaf)};
            break;
        }
        case ModelKind::Hybrid: {
            HybridConfig cfg;
            cfg.minsupp = h.minsupp;
            cfg.minconf = h.minconf;
            cfg.max_rule_size = h.max_rule_size;
            cfg.rank_seed = g.seed;
            cfg.rank_mode = h.mode();
            cfg.svm = SvmTrainConfig{h.lambda, h.epochs, g.seed, h.tolerance};
            HybridModel hm = train_hybrid(train, cfg);
            out.stages = hm.stages;
            out.model = AnyModel{kind, std::move(hm)};
            break;
        }
    }
    out.train_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

double accuracy_on(const AnyModel& m, const Dataset& data) {
    if (data.size() == 0) return 0.0;
    long correct = 0;
    for (const auto& row : data.rows)
        if (m.predict(row) == *row.label) ++correct;
    return static_cast<double>(correct) / static_cast<double>(data.size());
}

json hyper_to_json(const HyperOpts& h, ModelKind kind) {
    json j;
    if (kind == ModelKind::Mcar || kind == ModelKind::Hybrid) {
        j["minsupp"] = h.minsupp;
        j["minconf"] = h.minconf;
        j["max_rule_size"] = h.max_rule_size;
        j["rank_mode"] = h.rank_mode;
    }
    if (kind == ModelKind::Svm || kind == ModelKind::Hybrid) {
        j["lambda"] = h.lambda;
        j["epochs"] = h.epochs;
        j["tolerance"] = h.tolerance;
    }
    if (kind == ModelKind::Tree) {
        j["max_depth"] = h.max_depth;
        j["min_leaf"] = h.min_leaf;
    }
    return j;
}

int run_train(const GlobalOpts& g, const TrainOpts& o) {
    const ModelKind kind = model_kind_from_name(o.model_kind);
    ensure_out_dir(g);

    Dataset data = load_csv(o.data.path, o.data.label_column, o.data.encoding());

    json report;
    report["format_version"] = kModelFormatVersion;
    report["library_version"] = kVersion;
    report["command"] = "train";
    report["model_kind"] = model_kind_name(kind);
    report["seed"] = g.seed;
    report["dataset"] = json{{"path", o.data.path},
                             {"rows", data.size()},
                             {"fingerprint", to_hex(data.fingerprint())},
                             {"label_column", o.data.label_column}};
    report["hyperparameters"] = hyper_to_json(o.hyper, kind);

    std::ostringstream text;
    text << "command: train\nmodel kind: " << model_kind_name(kind) << "\n";
    text << "dataset: " << o.data.path << " (" << data.size() << " rows, fingerprint 0x"
         << to_hex(data.fingerprint()) << ")\n";

    TrainedModel trained;
    if (o.kfold_k > 0) {
        auto folds = kfold(data, o.kfold_k, g.seed);
        json fold_rows = json::array();
        double sum = 0.0;
        text << "k-fold: k=" << o.kfold_k << " (seed " << g.seed << ")\n";
        for (std::size_t i = 0; i < folds.size(); ++i) {
            TrainedModel fm = train_one(kind, folds[i].first, g, o.hyper);
            double acc = accuracy_on(fm.model, folds[i].second);
            sum += acc;
            fold_rows.push_back(json{{"fold", i},
                                     {"train_rows", folds[i].first.size()},
                                     {"test_rows", folds[i].second.size()},
                                     {"accuracy", acc}});
            text << "  fold " << i << ": train " << folds[i].first.size() << " / test "
                 << folds[i].second.size() << ", accuracy " << acc << "\n";
        }
        const double mean = sum / static_cast<double>(folds.size());
        report["kfold"] = json{{"k", o.kfold_k},
                               {"folds", fold_rows},
                               {"mean_accuracy", mean}};
        text << "  mean fold accuracy: " << mean << "\n";
        if (o.dump_splits)
            std::cerr << "warning: --dump-splits is ignored in k-fold mode\n";
        // Final model uses every labeled row.
        trained = train_one(kind, data, g, o.hyper);
        text << "final model trained on all " << data.size() << " rows\n";
    } else {
        SplitSpec spec{o.train_fraction, o.validate_fraction, o.test_fraction, g.seed};
        Split sp = split(data, spec);
        report["split"] = json{{"seed", g.seed},
                               {"train_rows", sp.train.size()},
                               {"validate_rows", sp.validate.size()},
                               {"test_rows", sp.test.size()}};
        text << "split: train " << sp.train.size() << " / validate " << sp.validate.size()
             << " / test " << sp.test.size() << " (seed " << g.seed << ")\n";
        if (o.dump_splits) {
            save_csv(sp.train, resolve_out(g, "split_train.csv").string(),
                     o.data.encoding());
            save_csv(sp.validate, resolve_out(g, "split_validate.csv").string(),
                     o.data.encoding());
            save_csv(sp.test, resolve_out(g, "split_test.csv").string(), o.data.encoding());
            text << "splits dumped to split_train.csv / split_validate.csv / split_test.csv\n";
        }
        trained = train_one(kind, sp.train, g, o.hyper);
        if (sp.validate.size() > 0) {
            double vacc = accuracy_on(trained.model, sp.validate);
            report["validate_accuracy"] = vacc;
            text << "validate accuracy: " << vacc << "\n";
        }
    }

    report["timing"] = json{{"train_seconds", round3(trained.train_seconds)}};
    text << "train time: " << round3(trained.train_seconds) << " s\n";

    if (!trained.stages.empty()) {
        json stages = json::array();
        text << "stages:\n";
        for (const auto& s : trained.stages) {
            stages.push_back(json{{"name", s.name},
                                  {"seconds", round3(s.seconds)},
                                  {"output_count", s.output_count},
                                  {"output_hash", to_hex(s.output_hash)}});
            text << "  " << s.name << ": " << s.output_count << " outputs, "
                 << round3(s.seconds) << " s, hash 0x" << to_hex(s.output_hash) << "\n";
        }
        report["timing"]["stages"] = stages;
    }
    if (trained.has_mcar_counts) {
        report["rule_counts"] = json{{"ruleitems", trained.mcar_counts.ruleitems},
                                     {"generated_rules", trained.mcar_counts.generated_rules},
                                     {"kept_rules", trained.mcar_counts.kept_rules}};
        text << "rule counts: " << trained.mcar_counts.ruleitems << " ruleitems -> "
             << trained.mcar_counts.generated_rules << " rules -> "
             << trained.mcar_counts.kept_rules << " kept\n";
    }

    // Model-specific summary lines.
    const AnyModel& m = trained.model;
    if (m.kind == ModelKind::Mcar) {
        const auto& c = std::get<RuleClassifier>(m.model);
        report["rules"] = json{{"kept", c.rules.size()},
                               {"default_class", label_name(c.default_class)}};
        text << "kept rules: " << c.rules.size() << " (default "
             << label_name(c.default_class) << ")\n";
    }
    if (m.kind == ModelKind::Hybrid) {
        const auto& h = std::get<HybridModel>(m.model);
        json subset = json::array();
        text << "feature subset (" << h.feature_subset.size() << "):";
        for (int a : h.feature_subset) {
            subset.push_back(data.schema.feature_names[static_cast<std::size_t>(a)]);
            text << ' ' << data.schema.feature_names[static_cast<std::size_t>(a)];
        }
        text << "\n";
        report["rules"] = json{{"kept", h.rules.rules.size()},
                               {"default_class", label_name(h.rules.default_class)}};
        report["feature_subset"] = subset;
        text << "kept rules: " << h.rules.rules.size() << " (default "
             << label_name(h.rules.default_class) << ")\n";
    }
    if (m.kind == ModelKind::Tree) {
        const auto& tmodel = std::get<TreeModel>(m.model);
        report["tree"] = json{{"nodes", tmodel.nodes.size()}, {"depth", tree_depth(tmodel)}};
        text << "tree: " << tmodel.nodes.size() << " nodes, depth " << tree_depth(tmodel)
             << "\n";
    }

    const std::string model_name =
        o.model_out.empty() ? model_kind_name(kind) + "_model.json" : o.model_out;
    const auto model_path = resolve_out(g, model_name);
    save_model(m, model_path.string());
    const auto size = std::filesystem::file_size(model_path);
    report["model_file"] = model_path.string();
    report["model_size_bytes"] = size;
    text << "model file: " << model_path.string() << " (" << size << " bytes)\n";

    const auto report_base = model_kind_name(kind) + "_train_report";
    write_text_file(resolve_out(g, report_base + ".json"), report.dump(2) + "\n");
    write_text_file(resolve_out(g, report_base + ".txt"), text.str());
    std::cout << text.str();
    return 0;
}

// ---------------------------------------------------------------------------
// evaluate
// ---------------------------------------------------------------------------

struct EvaluateOpts {
    std::string model_path;
    DataOpts data;
    std::string roc_csv;  // empty = skip
    double train_seconds = 0.0;
};

int run_evaluate(const GlobalOpts& g, const EvaluateOpts& o) {
    ensure_out_dir(g);
    AnyModel m = load_model(o.model_path);
    Dataset test = load_csv(o.data.path, o.data.label_column, o.data.encoding());
    check_schema_or_explain(m, test.schema);
    if (test.size() == 0) throw DataError("test dataset is empty");

    ModelEvaluation ev = evaluate_any(m, test, o.train_seconds);

    json report;
    report["format_version"] = kModelFormatVersion;
    report["library_version"] = kVersion;
    report["command"] = "evaluate";
    report["model_file"] = o.model_path;
    report["dataset"] = json{{"path", o.data.path},
                             {"rows", test.size()},
                             {"fingerprint", to_hex(test.fingerprint())}};
    report["evaluation"] = evaluation_to_json(ev);

    const std::string base = ev.model_kind + "_eval_report";
    write_text_file(resolve_out(g, base + ".json"), report.dump(2) + "\n");
    const std::string text = comparison_text({ev});
    write_text_file(resolve_out(g, base + ".txt"), text);
    std::cout << text;

    if (!o.roc_csv.empty()) {
        if (!ev.roc_defined)
            std::cerr << "warning: ROC undefined (single-class test set); skipping "
                      << o.roc_csv << "\n";
        else
            write_roc_csv(ev.roc, resolve_out(g, o.roc_csv).string());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

struct CompareOpts {
    std::vector<std::string> model_paths;
    DataOpts data;
};

int run_compare(const GlobalOpts& g, const CompareOpts& o) {
    if (o.model_paths.empty()) throw ConfigError("compare needs at least one --models entry");
    ensure_out_dir(g);
    Dataset test = load_csv(o.data.path, o.data.label_column, o.data.encoding());
    if (test.size() == 0) throw DataError("test dataset is empty");

    std::vector<ModelEvaluation> evals;
    for (const auto& path : o.model_paths) {
        AnyModel m = load_model(path);
        check_schema_or_explain(m, test.schema);
        evals.push_back(evaluate_any(m, test, 0.0));
    }
    std::sort(evals.begin(), evals.end(),
              [](const ModelEvaluation& a, const ModelEvaluation& b) {
                  return a.metrics.accuracy > b.metrics.accuracy;
              });

    json report;
    report["format_version"] = kModelFormatVersion;
    report["library_version"] = kVersion;
    report["command"] = "compare";
    report["dataset"] = json{{"path", o.data.path},
                             {"rows", test.size()},
                             {"fingerprint", to_hex(test.fingerprint())}};
    json rows = json::array();
    for (const auto& ev : evals) rows.push_back(evaluation_to_json(ev));
    report["models"] = rows;

    write_text_file(resolve_out(g, "comparison.json"), report.dump(2) + "\n");
    const std::string text = comparison_text(evals);
    write_text_file(resolve_out(g, "comparison.txt"), text);
    std::cout << text;
    return 0;
}

// ---------------------------------------------------------------------------
// predict
// ---------------------------------------------------------------------------

struct PredictOpts {
    std::string model_path;
    std::string url;
    std::string html_file;
    std::string data_csv;
    DataOpts data;  // label options for CSV input
    LookupOpts lookup;
};

void print_prediction(const AnyModel& m, const FeatureVector& x) {
    Label verdict = m.predict(x);
    double score = m.score(x);
    std::ostringstream line;
    line << label_name(verdict) << " score=";
    line.precision(3);
    line << std::fixed << score;
    if (auto rule = m.rule_text(x)) line << " rule=" << *rule;
    std::cout << line.str() << "\n";
}

int run_predict(const GlobalOpts& g, const PredictOpts& o) {
    (void)g;
    if (o.url.empty() && o.data_csv.empty())
        throw ConfigError("predict needs --url or --data");
    AnyModel m = load_model(o.model_path);

    if (!o.url.empty()) {
        if (m.schema_feature_names() != canonical_schema().feature_names)
            throw DataError(
                "model was not trained on the canonical extractor schema; URL prediction "
                "needs a model trained on extracted features");
        std::optional<std::string> html;
        if (!o.html_file.empty()) {
            std::ifstream in(o.html_file, std::ios::binary);
            if (!in) throw DataError("cannot open HTML file: " + o.html_file);
            std::ostringstream buf;
            buf << in.rdbuf();
            html = buf.str();
        }
        auto client = o.lookup.make_client();
        ExtractionResult r = extract(o.url, html, *client, o.lookup.thresholds());
        print_prediction(m, r.vector);
        return 0;
    }

    Dataset batch = load_feature_csv(o.data_csv, o.data.label_column, o.data.encoding());
    check_schema_or_explain(m, batch.schema);
    for (const auto& row : batch.rows) print_prediction(m, row);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"phishml: associative-rule + linear-SVM phishing website classifier"};
    app.require_subcommand(1);
    app.set_version_flag("--version", phishml::kVersion);
    app.set_config("--config", "", "Read options from a TOML-style config file");
    app.allow_config_extras(false);

    GlobalOpts g;
    const char* env_out = std::getenv("PHISHML_OUT_DIR");
    g.out_dir = env_out && *env_out ? env_out : ".";
    app.add_option("--out-dir", g.out_dir,
                   "Directory for all outputs (default $PHISHML_OUT_DIR or .)")
        ->capture_default_str();
    app.add_option("--seed", g.seed, "Seed governing splits and rule ranking")
        ->capture_default_str();

    auto add_hyper_options = [](CLI::App* sub, HyperOpts& h) {
        sub->add_option("--minsupp", h.minsupp, "Minimum rule support")->capture_default_str();
        sub->add_option("--minconf", h.minconf, "Minimum rule confidence")
            ->capture_default_str();
        sub->add_option("--max-rule-size", h.max_rule_size,
                        "Antecedent size cap for mining (0 = unbounded)")
            ->capture_default_str();
        sub->add_option("--rank-mode", h.rank_mode, "Rule tie-break mode")
            ->check(CLI::IsMember({"seeded_shuffle", "lexicographic"}))
            ->capture_default_str();
        sub->add_option("--lambda", h.lambda, "SVM regularization strength")
            ->capture_default_str();
        sub->add_option("--epochs", h.epochs, "SVM subgradient iterations")
            ->capture_default_str();
        sub->add_option("--tolerance", h.tolerance, "SVM gradient-norm stop threshold")
            ->capture_default_str();
        sub->add_option("--max-depth", h.max_depth, "Decision tree depth limit")
            ->capture_default_str();
        sub->add_option("--min-leaf", h.min_leaf, "Decision tree minimum rows per leaf")
            ->capture_default_str();
    };

    // extract
    ExtractOpts xo;
    CLI::App* sc_extract =
        app.add_subcommand("extract", "Extract feature vectors from URLs into a CSV");
    auto* opt_url = sc_extract->add_option("--url", xo.url, "Single URL to extract");
    auto* opt_urls =
        sc_extract->add_option("--urls", xo.urls_file, "File with one URL per line");
    opt_url->excludes(opt_urls);
    sc_extract->add_option("--html", xo.html_file,
                           "Local HTML file for the page-content checks (single-URL mode)");
    sc_extract->add_option("-o,--out", xo.out_csv, "Output CSV name")->capture_default_str();
    add_lookup_options(sc_extract, xo.lookup);

    // train
    TrainOpts to;
    CLI::App* sc_train = app.add_subcommand("train", "Train a model on a labeled CSV");
    add_data_options(sc_train, to.data);
    sc_train->add_option("--model", to.model_kind, "Model kind")
        ->check(CLI::IsMember({"mcar", "svm", "tree", "hybrid"}))
        ->capture_default_str();
    sc_train->add_option("--train-fraction", to.train_fraction, "Training split fraction")
        ->capture_default_str();
    sc_train
        ->add_option("--validate-fraction", to.validate_fraction, "Validation split fraction")
        ->capture_default_str();
    sc_train->add_option("--test-fraction", to.test_fraction, "Test split fraction")
        ->capture_default_str();
    sc_train->add_option("--kfold", to.kfold_k,
                         "Cross-validate with k folds instead of a fractional split");
    sc_train->add_flag("--dump-splits", to.dump_splits,
                       "Also write the train/validate/test splits as CSV");
    sc_train->add_option("--model-out", to.model_out,
                         "Model file name (default <kind>_model.json)");
    add_hyper_options(sc_train, to.hyper);

    // evaluate
    EvaluateOpts eo;
    CLI::App* sc_eval =
        app.add_subcommand("evaluate", "Evaluate a trained model on a labeled CSV");
    sc_eval->add_option("--model", eo.model_path, "Trained model file")->required();
    add_data_options(sc_eval, eo.data);
    sc_eval->add_option("--roc-csv", eo.roc_csv, "Also write ROC points (fpr,tpr,threshold)");
    sc_eval->add_option("--train-seconds", eo.train_seconds,
                        "Training time to carry into the report");

    // compare
    CompareOpts co;
    CLI::App* sc_compare =
        app.add_subcommand("compare", "Evaluate several trained models side by side");
    sc_compare->add_option("--models", co.model_paths, "Trained model files")->required();
    add_data_options(sc_compare, co.data);

    // predict
    PredictOpts po;
    CLI::App* sc_predict =
        app.add_subcommand("predict", "Predict a single URL or a CSV batch");
    sc_predict->add_option("--model", po.model_path, "Trained model file")->required();
    auto* p_url = sc_predict->add_option("--url", po.url, "URL to classify");
    auto* p_data =
        sc_predict->add_option("--data", po.data_csv, "Feature CSV (label column optional)");
    p_url->excludes(p_data);
    sc_predict->add_option("--html", po.html_file, "Local HTML file for page-content checks");
    sc_predict->add_option("--label-column", po.data.label_column,
                           "Label column name in --data, if present")
        ->capture_default_str();
    sc_predict->add_option("--phishing-value", po.data.phishing_value,
                           "Label cell value meaning phishing")
        ->capture_default_str();
    sc_predict->add_option("--legitimate-value", po.data.legitimate_value,
                           "Label cell value meaning legitimate")
        ->capture_default_str();
    add_lookup_options(sc_predict, po.lookup);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // usage errors are exit code 1, whatever CLI11 prefers
    }

    try {
        if (sc_extract->parsed()) return run_extract(g, xo);
        if (sc_train->parsed()) return run_train(g, to);
        if (sc_eval->parsed()) return run_evaluate(g, eo);
        if (sc_compare->parsed()) return run_compare(g, co);
        if (sc_predict->parsed()) return run_predict(g, po);
        throw ConfigError("no subcommand given");
    } catch (const phishml::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const phishml::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
