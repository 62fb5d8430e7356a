#include "phishml/model_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "phishml/common.hpp"

namespace phishml {

namespace {

using json = nlohmann::ordered_json;

const char* rank_mode_name(RankMode mode) {
    return mode == RankMode::SeededShuffle ? "seeded_shuffle" : "lexicographic";
}

RankMode rank_mode_from_name(const std::string& name) {
    if (name == "seeded_shuffle") return RankMode::SeededShuffle;
    if (name == "lexicographic") return RankMode::Lexicographic;
    throw DataError("unknown rank mode: " + name);
}

json names_to_json(const std::vector<std::string>& names) { return json(names); }

std::vector<std::string> names_from_json(const json& j) {
    return j.get<std::vector<std::string>>();
}

json rules_to_json(const std::vector<Rule>& rules) {
    json arr = json::array();
    for (const Rule& r : rules) {
        json items = json::array();
        for (const Item& it : r.antecedent)
            items.push_back(json{{"attribute", it.attribute}, {"value", it.value}});
        arr.push_back(json{{"antecedent", std::move(items)},
                           {"consequent", label_name(r.consequent)},
                           {"support", r.support},
                           {"confidence", r.confidence},
                           {"size", r.size}});
    }
    return arr;
}

std::vector<Rule> rules_from_json(const json& arr) {
    std::vector<Rule> rules;
    for (const json& jr : arr) {
        Rule r;
        for (const json& ji : jr.at("antecedent"))
            r.antecedent.push_back(Item{ji.at("attribute").get<int>(), ji.at("value").get<int>()});
        r.consequent = label_from_name(jr.at("consequent").get<std::string>());
        r.support = jr.at("support").get<double>();
        r.confidence = jr.at("confidence").get<double>();
        r.size = jr.at("size").get<int>();
        rules.push_back(std::move(r));
    }
    return rules;
}

json classifier_to_json(const RuleClassifier& c) {
    return json{{"rules", rules_to_json(c.rules)},
                {"default_class", label_name(c.default_class)},
                {"default_class_fraction", c.default_class_fraction},
                {"schema_feature_names", names_to_json(c.schema_feature_names)},
                {"minsupp", c.minsupp},
                {"minconf", c.minconf},
                {"max_rule_size", c.max_rule_size},
                {"rank_seed", c.rank_seed},
                {"rank_mode", rank_mode_name(c.rank_mode)}};
}

RuleClassifier classifier_from_json(const json& j) {
    RuleClassifier c;
    c.rules = rules_from_json(j.at("rules"));
    c.default_class = label_from_name(j.at("default_class").get<std::string>());
    c.default_class_fraction = j.at("default_class_fraction").get<double>();
    c.schema_feature_names = names_from_json(j.at("schema_feature_names"));
    c.minsupp = j.at("minsupp").get<double>();
    c.minconf = j.at("minconf").get<double>();
    c.max_rule_size = j.at("max_rule_size").get<int>();
    c.rank_seed = j.at("rank_seed").get<std::uint32_t>();
    c.rank_mode = rank_mode_from_name(j.at("rank_mode").get<std::string>());
    return c;
}

json svm_to_json(const SvmModel& m) {
    return json{{"weights", m.weights},
                {"threshold", m.threshold},
                {"feature_subset", m.feature_subset},
                {"schema_feature_names", names_to_json(m.schema_feature_names)},
                {"config",
                 json{{"lambda", m.config.lambda},
                      {"epochs", m.config.epochs},
                      {"seed", m.config.seed},
                      {"tolerance", m.config.tolerance}}},
                {"objective_trace_length", m.objective_trace_length},
                {"final_objective", m.final_objective}};
}

SvmModel svm_from_json(const json& j) {
    SvmModel m;
    m.weights = j.at("weights").get<std::vector<double>>();
    m.threshold = j.at("threshold").get<double>();
    m.feature_subset = j.at("feature_subset").get<std::vector<int>>();
    m.schema_feature_names = names_from_json(j.at("schema_feature_names"));
    const json& c = j.at("config");
    m.config.lambda = c.at("lambda").get<double>();
    m.config.epochs = c.at("epochs").get<int>();
    m.config.seed = c.at("seed").get<std::uint32_t>();
    m.config.tolerance = c.at("tolerance").get<double>();
    m.objective_trace_length = j.at("objective_trace_length").get<int>();
    m.final_objective = j.at("final_objective").get<double>();
    return m;
}

json domain_to_json(const ValueDomain& d) {
    json arr = json::array();
    for (int v = -1; v <= 1; ++v)
        if (domain_contains(d, v)) arr.push_back(v);
    return arr;
}

ValueDomain domain_from_json(const json& arr) {
    ValueDomain d{false, false, false};
    for (const json& jv : arr) {
        int v = jv.get<int>();
        if (v < -1 || v > 1) throw DataError("model file: domain value out of range");
        d[static_cast<std::size_t>(v + 1)] = true;
    }
    return d;
}

json tree_to_json(const TreeModel& m) {
    json nodes = json::array();
    for (const TreeNode& n : m.nodes) {
        nodes.push_back(json{{"attribute", n.attribute},
                             {"children", n.children},
                             {"class_counts", n.class_counts},
                             {"leaf_class", label_name(n.leaf_class)},
                             {"p_legitimate", n.p_legitimate}});
    }
    json domains = json::array();
    for (const ValueDomain& d : m.domains) domains.push_back(domain_to_json(d));
    return json{{"nodes", std::move(nodes)},
                {"schema_feature_names", names_to_json(m.schema_feature_names)},
                {"domains", std::move(domains)},
                {"max_depth", m.max_depth},
                {"min_leaf", m.min_leaf}};
}

TreeModel tree_from_json(const json& j) {
    TreeModel m;
    for (const json& jn : j.at("nodes")) {
        TreeNode n;
        n.attribute = jn.at("attribute").get<int>();
        auto children = jn.at("children").get<std::vector<int>>();
        auto counts = jn.at("class_counts").get<std::vector<int>>();
        if (children.size() != 3 || counts.size() != 2)
            throw DataError("model file: malformed tree node");
        std::copy(children.begin(), children.end(), n.children.begin());
        std::copy(counts.begin(), counts.end(), n.class_counts.begin());
        n.leaf_class = label_from_name(jn.at("leaf_class").get<std::string>());
        n.p_legitimate = jn.at("p_legitimate").get<double>();
        m.nodes.push_back(n);
    }
    m.schema_feature_names = names_from_json(j.at("schema_feature_names"));
    for (const json& jd : j.at("domains")) m.domains.push_back(domain_from_json(jd));
    m.max_depth = j.at("max_depth").get<int>();
    m.min_leaf = j.at("min_leaf").get<int>();
    if (m.nodes.empty()) throw DataError("model file: tree has no nodes");
    return m;
}

// Stage timings are run metadata, not model parameters: they stay out of the
// model file (which must be byte-identical across retrains) and live in the
// training report instead.
json hybrid_to_json(const HybridModel& m) {
    return json{{"rules", classifier_to_json(m.rules)},
                {"feature_subset", m.feature_subset},
                {"svm", svm_to_json(m.svm)},
                {"config",
                 json{{"minsupp", m.config.minsupp},
                      {"minconf", m.config.minconf},
                      {"max_rule_size", m.config.max_rule_size},
                      {"rank_seed", m.config.rank_seed},
                      {"rank_mode", rank_mode_name(m.config.rank_mode)},
                      {"svm",
                       json{{"lambda", m.config.svm.lambda},
                            {"epochs", m.config.svm.epochs},
                            {"seed", m.config.svm.seed},
                            {"tolerance", m.config.svm.tolerance}}}}}};
}

HybridModel hybrid_from_json(const json& j) {
    HybridModel m;
    m.rules = classifier_from_json(j.at("rules"));
    m.feature_subset = j.at("feature_subset").get<std::vector<int>>();
    m.svm = svm_from_json(j.at("svm"));
    const json& c = j.at("config");
    m.config.minsupp = c.at("minsupp").get<double>();
    m.config.minconf = c.at("minconf").get<double>();
    m.config.max_rule_size = c.at("max_rule_size").get<int>();
    m.config.rank_seed = c.at("rank_seed").get<std::uint32_t>();
    m.config.rank_mode = rank_mode_from_name(c.at("rank_mode").get<std::string>());
    const json& s = c.at("svm");
    m.config.svm.lambda = s.at("lambda").get<double>();
    m.config.svm.epochs = s.at("epochs").get<int>();
    m.config.svm.seed = s.at("seed").get<std::uint32_t>();
    m.config.svm.tolerance = s.at("tolerance").get<double>();
    return m;
}

}  // namespace

std::string model_kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::Mcar: return "mcar";
        case ModelKind::Svm: return "svm";
        case ModelKind::Tree: return "tree";
        case ModelKind::Hybrid: return "hybrid";
    }
    throw std::logic_error("unknown model kind");
}

ModelKind model_kind_from_name(const std::string& name) {
    if (name == "mcar") return ModelKind::Mcar;
    if (name == "svm") return ModelKind::Svm;
    if (name == "tree") return ModelKind::Tree;
    if (name == "hybrid") return ModelKind::Hybrid;
    throw ConfigError("unknown model kind: " + name + " (expected mcar, svm, tree or hybrid)");
}

const std::vector<std::string>& AnyModel::schema_feature_names() const {
    switch (kind) {
        case ModelKind::Mcar: return std::get<RuleClassifier>(model).schema_feature_names;
        case ModelKind::Svm: return std::get<SvmModel>(model).schema_feature_names;
        case ModelKind::Tree: return std::get<TreeModel>(model).schema_feature_names;
        case ModelKind::Hybrid: return std::get<HybridModel>(model).svm.schema_feature_names;
    }
    throw std::logic_error("unknown model kind");
}

Label AnyModel::predict(const FeatureVector& x) const {
    switch (kind) {
        case ModelKind::Mcar: return classify_rule(std::get<RuleClassifier>(model), x).cls;
        case ModelKind::Svm: return predict_svm(std::get<SvmModel>(model), x);
        case ModelKind::Tree: return predict_tree(std::get<TreeModel>(model), x);
        case ModelKind::Hybrid: return predict_hybrid(std::get<HybridModel>(model), x).cls;
    }
    throw std::logic_error("unknown model kind");
}

double AnyModel::score(const FeatureVector& x) const {
    switch (kind) {
        case ModelKind::Mcar: return rule_score(std::get<RuleClassifier>(model), x);
        case ModelKind::Svm: return decision_value(std::get<SvmModel>(model), x);
        case ModelKind::Tree: return score_tree(std::get<TreeModel>(model), x);
        case ModelKind::Hybrid: return score_hybrid(std::get<HybridModel>(model), x);
    }
    throw std::logic_error("unknown model kind");
}

std::string describe_rule(const Rule& rule, const std::vector<std::string>& feature_names) {
    std::ostringstream out;
    out << "IF ";
    for (std::size_t i = 0; i < rule.antecedent.size(); ++i) {
        if (i) out << " AND ";
        const Item& it = rule.antecedent[i];
        if (it.attribute >= 0 && static_cast<std::size_t>(it.attribute) < feature_names.size())
            out << feature_names[static_cast<std::size_t>(it.attribute)];
        else
            out << "attr" << it.attribute;
        out << "=" << it.value;
    }
    out << " THEN " << label_name(rule.consequent);
    out << " (conf " << rule.confidence << ", supp " << rule.support << ")";
    return out.str();
}

namespace {

std::string rule_explanation(const RuleClassifier& c, const RuleDecision& d) {
    if (d.is_default()) {
        std::ostringstream out;
        out << "DEFAULT " << label_name(c.default_class) << " (no rule fired, majority share "
            << c.default_class_fraction << ")";
        return out.str();
    }
    return describe_rule(c.rules[static_cast<std::size_t>(d.rule_index)],
                         c.schema_feature_names);
}

}  // namespace

std::optional<std::string> AnyModel::rule_text(const FeatureVector& x) const {
    switch (kind) {
        case ModelKind::Mcar: {
            const auto& c = std::get<RuleClassifier>(model);
            return rule_explanation(c, classify_rule(c, x));
        }
        case ModelKind::Hybrid: {
            const auto& h = std::get<HybridModel>(model);
            return rule_explanation(h.rules, classify_rule(h.rules, x));
        }
        case ModelKind::Svm:
        case ModelKind::Tree:
            return std::nullopt;
    }
    throw std::logic_error("unknown model kind");
}

std::string AnyModel::explanation(const FeatureVector& x) const {
    std::ostringstream out;
    switch (kind) {
        case ModelKind::Mcar: {
            const auto& c = std::get<RuleClassifier>(model);
            return rule_explanation(c, classify_rule(c, x));
        }
        case ModelKind::Svm: {
            out << "decision value " << decision_value(std::get<SvmModel>(model), x);
            return out.str();
        }
        case ModelKind::Tree: {
            out << "leaf P(legitimate) = "
                << (score_tree(std::get<TreeModel>(model), x) + 1.0) / 2.0;
            return out.str();
        }
        case ModelKind::Hybrid: {
            const auto& h = std::get<HybridModel>(model);
            HybridPrediction p = predict_hybrid(h, x);
            out << "decision value " << p.score << "; rule: "
                << rule_explanation(h.rules, p.explanation);
            return out.str();
        }
    }
    throw std::logic_error("unknown model kind");
}

std::string serialize_model(const AnyModel& m) {
    json doc;
    doc["format_version"] = kModelFormatVersion;
    doc["kind"] = model_kind_name(m.kind);
    switch (m.kind) {
        case ModelKind::Mcar: doc["model"] = classifier_to_json(std::get<RuleClassifier>(m.model)); break;
        case ModelKind::Svm: doc["model"] = svm_to_json(std::get<SvmModel>(m.model)); break;
        case ModelKind::Tree: doc["model"] = tree_to_json(std::get<TreeModel>(m.model)); break;
        case ModelKind::Hybrid: doc["model"] = hybrid_to_json(std::get<HybridModel>(m.model)); break;
    }
    return doc.dump(2) + "\n";
}

AnyModel deserialize_model(const std::string& bytes) {
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const nlohmann::json::exception& e) {
        throw DataError("model file is not valid JSON: " + std::string(e.what()));
    }
    try {
        int version = doc.at("format_version").get<int>();
        if (version != kModelFormatVersion)
            throw DataError("unsupported model format version " + std::to_string(version));
        AnyModel m;
        m.kind = model_kind_from_name(doc.at("kind").get<std::string>());
        const json& body = doc.at("model");
        switch (m.kind) {
            case ModelKind::Mcar: m.model = classifier_from_json(body); break;
            case ModelKind::Svm: m.model = svm_from_json(body); break;
            case ModelKind::Tree: m.model = tree_from_json(body); break;
            case ModelKind::Hybrid: m.model = hybrid_from_json(body); break;
        }
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("model file is malformed: " + std::string(e.what()));
    }
}

void save_model(const AnyModel& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write model file: " + path);
    out << serialize_model(m);
    if (!out) throw DataError("failed while writing model file: " + path);
}

AnyModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return deserialize_model(buf.str());
}

void check_schema_compatible(const AnyModel& m, const FeatureVector& x) {
    if (x.values.size() != m.schema_feature_names().size())
        throw DataError("feature vector arity " + std::to_string(x.values.size()) +
                        " does not match model schema arity " +
                        std::to_string(m.schema_feature_names().size()));
}

void check_schema_compatible(const AnyModel& m, const FeatureSchema& schema) {
    const auto& names = m.schema_feature_names();
    if (schema.feature_names != names)
        throw DataError("dataset schema does not match the model's training schema");
}

}  // namespace phishml
