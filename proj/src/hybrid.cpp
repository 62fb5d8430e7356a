#include "phishml/hybrid.hpp"

#include <algorithm>
#include <chrono>
#include <set>

namespace phishml {

std::vector<int> select_features(const RuleClassifier& classifier, const FeatureSchema& schema) {
    std::set<int> attrs;
    for (const auto& rule : classifier.rules)
        for (const auto& item : rule.antecedent) attrs.insert(item.attribute);
    if (attrs.empty()) {
        std::vector<int> all(schema.arity());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
        return all;
    }
    return {attrs.begin(), attrs.end()};
}

namespace {

std::uint64_t hash_ruleitems(const std::vector<RuleItem>& items) {
    Fnv1a h;
    for (const auto& ri : items) {
        for (const auto& item : ri.antecedent) {
            h.update(static_cast<std::int64_t>(item.attribute));
            h.update(static_cast<std::int64_t>(item.value));
        }
        h.update(static_cast<std::int64_t>(ri.class_counts[0]));
        h.update(static_cast<std::int64_t>(ri.class_counts[1]));
        h.update(static_cast<std::int64_t>(ri.tid_list.size()));
    }
    return h.digest();
}

std::uint64_t hash_rules(const std::vector<Rule>& rules) {
    Fnv1a h;
    for (const auto& r : rules) {
        for (const auto& item : r.antecedent) {
            h.update(static_cast<std::int64_t>(item.attribute));
            h.update(static_cast<std::int64_t>(item.value));
        }
        h.update(static_cast<std::int64_t>(class_index(r.consequent)));
        h.update(r.support);
        h.update(r.confidence);
    }
    return h.digest();
}

std::uint64_t hash_classifier(const RuleClassifier& clf) {
    Fnv1a h;
    h.state = hash_rules(clf.rules);
    h.update(static_cast<std::int64_t>(class_index(clf.default_class)));
    h.update(clf.default_class_fraction);
    return h.digest();
}

std::uint64_t hash_svm(const SvmModel& model) {
    Fnv1a h;
    for (double w : model.weights) h.update(w);
    h.update(model.threshold);
    for (int a : model.feature_subset) h.update(static_cast<std::int64_t>(a));
    return h.digest();
}

struct StageTimer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    StageRecord finish(const std::string& name, std::uint64_t hash,
                       std::uint64_t count) const {
        const auto end = std::chrono::steady_clock::now();
        StageRecord rec;
        rec.name = name;
        rec.seconds = std::chrono::duration<double>(end - start).count();
        rec.end_ns = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(end.time_since_epoch())
                .count());
        rec.output_hash = hash;
        rec.output_count = count;
        return rec;
    }
};

}  // namespace

HybridModel train_hybrid(const Dataset& train, const HybridConfig& config) {
    if (train.size() == 0) throw DataError("cannot train hybrid model on an empty dataset");

    HybridModel model;
    model.config = config;

    StageTimer t1;
    const auto ruleitems =
        find_frequent_ruleitems(train, config.minsupp, config.max_rule_size);
    model.stages.push_back(
        t1.finish("frequent_ruleitems", hash_ruleitems(ruleitems), ruleitems.size()));

    StageTimer t2;
    auto rules = generate_rules(ruleitems, config.minconf, train.size());
    model.stages.push_back(t2.finish("generate_rules", hash_rules(rules), rules.size()));

    StageTimer t3;
    rank_rules(rules, config.rank_seed, config.rank_mode);
    model.rules = database_coverage_prune(rules, train);
    model.rules.minsupp = config.minsupp;
    model.rules.minconf = config.minconf;
    model.rules.max_rule_size = config.max_rule_size;
    model.rules.rank_seed = config.rank_seed;
    model.rules.rank_mode = config.rank_mode;
    model.stages.push_back(
        t3.finish("rank_and_prune", hash_classifier(model.rules), model.rules.rules.size()));

    model.feature_subset = select_features(model.rules, train.schema);
    if (model.feature_subset.empty())
        throw std::logic_error("feature subset empty after fallback");

    StageTimer t4;
    model.svm = train_svm(train, model.feature_subset, config.svm);
    model.stages.push_back(
        t4.finish("train_svm", hash_svm(model.svm), model.feature_subset.size()));
    return model;
}

HybridPrediction predict_hybrid(const HybridModel& model, const FeatureVector& x) {
    HybridPrediction p;
    p.score = decision_value(model.svm, x);
    p.cls = p.score > 0.0 ? Label::Legitimate : Label::Phishing;
    p.explanation = classify_rule(model.rules, x);
    return p;
}

double score_hybrid(const HybridModel& model, const FeatureVector& x) {
    return decision_value(model.svm, x);
}

}  // namespace phishml
