#include "phishml/mcar.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace phishml {

bool antecedent_matches(const Antecedent& antecedent, const std::vector<int>& values) {
    for (const auto& item : antecedent) {
        if (values[static_cast<std::size_t>(item.attribute)] != item.value) return false;
    }
    return true;
}

namespace {

std::array<int, 2> count_classes(const std::vector<int>& tids, const Dataset& train) {
    std::array<int, 2> counts{0, 0};
    for (int tid : tids)
        ++counts[static_cast<std::size_t>(class_index(*train.rows[static_cast<std::size_t>(tid)].label))];
    return counts;
}

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    out.reserve(std::min(a.size(), b.size()));
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

std::vector<RuleItem> find_frequent_ruleitems(const Dataset& train, double minsupp,
                                              int max_size) {
    if (!(minsupp > 0.0 && minsupp <= 1.0))
        throw ConfigError("minsupp must be in (0,1], got " + std::to_string(minsupp));
    const std::size_t n = train.size();
    if (n == 0) throw DataError("cannot mine ruleitems from an empty dataset");
    if (!train.labeled()) throw DataError("training rows must be labeled");

    const auto arity = static_cast<int>(train.schema.arity());
    const int size_cap = max_size > 0 ? std::min(max_size, arity) : arity;

    auto is_frequent = [&](int count) {
        return static_cast<double>(count) / static_cast<double>(n) >= minsupp;
    };

    // Single data scan: TID lists for every observed single item.
    std::map<Item, std::vector<int>> single_tids;
    for (std::size_t tid = 0; tid < n; ++tid) {
        const auto& values = train.rows[tid].values;
        for (int a = 0; a < arity; ++a)
            single_tids[Item{a, values[static_cast<std::size_t>(a)]}].push_back(
                static_cast<int>(tid));
    }

    std::vector<RuleItem> result;
    std::vector<RuleItem> level;  // frequent ruleitems of the current size
    for (const auto& [item, tids] : single_tids) {
        RuleItem ri;
        ri.antecedent = {item};
        ri.tid_list = tids;
        ri.class_counts = count_classes(tids, train);
        ri.frequent = {is_frequent(ri.class_counts[0]), is_frequent(ri.class_counts[1])};
        if (ri.frequent[0] || ri.frequent[1]) level.push_back(std::move(ri));
    }
    result.insert(result.end(), level.begin(), level.end());

    for (int size = 2; size <= size_cap && !level.empty(); ++size) {
        // Join pairs frequent for the same class whose antecedents share the
        // first size-2 items; the two trailing items must name distinct
        // attributes. A std::map keyed by antecedent dedupes candidates that
        // arise from both classes.
        std::map<Antecedent, RuleItem> candidates;
        for (std::size_t i = 0; i < level.size(); ++i) {
            for (std::size_t j = i + 1; j < level.size(); ++j) {
                const auto& a = level[i];
                const auto& b = level[j];
                if (!((a.frequent[0] && b.frequent[0]) || (a.frequent[1] && b.frequent[1])))
                    continue;
                if (!std::equal(a.antecedent.begin(), a.antecedent.end() - 1,
                                b.antecedent.begin(), b.antecedent.end() - 1))
                    continue;
                const Item& last_a = a.antecedent.back();
                const Item& last_b = b.antecedent.back();
                if (last_a.attribute == last_b.attribute) continue;

                Antecedent merged = a.antecedent;
                merged.push_back(last_b);
                if (!(last_a < last_b)) std::swap(merged[merged.size() - 2], merged.back());
                if (candidates.count(merged)) continue;

                RuleItem ri;
                ri.antecedent = std::move(merged);
                ri.tid_list = intersect_sorted(a.tid_list, b.tid_list);
                if (ri.tid_list.empty()) continue;
                ri.class_counts = count_classes(ri.tid_list, train);
                ri.frequent = {is_frequent(ri.class_counts[0]), is_frequent(ri.class_counts[1])};
                if (ri.frequent[0] || ri.frequent[1])
                    candidates.emplace(ri.antecedent, std::move(ri));
            }
        }
        level.clear();
        for (auto& [ante, ri] : candidates) level.push_back(std::move(ri));
        result.insert(result.end(), level.begin(), level.end());
    }
    return result;
}

std::vector<Rule> generate_rules(const std::vector<RuleItem>& ruleitems, double minconf,
                                 std::size_t n_rows) {
    if (!(minconf > 0.0 && minconf <= 1.0))
        throw ConfigError("minconf must be in (0,1], got " + std::to_string(minconf));
    std::vector<Rule> rules;
    for (const auto& ri : ruleitems) {
        for (int c = 0; c < kNumClasses; ++c) {
            if (!ri.frequent[static_cast<std::size_t>(c)]) continue;
            const Label cls = class_from_index(c);
            const double conf = ri.confidence(cls);
            if (conf >= minconf) {
                rules.push_back(Rule{ri.antecedent, cls, ri.support(cls, n_rows), conf,
                                     static_cast<int>(ri.antecedent.size())});
            }
        }
    }
    return rules;
}

namespace {

// Strictly-better-rank relation without the tie breaker.
bool rank_precedes(const Rule& a, const Rule& b) {
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    if (a.support != b.support) return a.support > b.support;
    return a.size < b.size;
}

bool lexicographic_precedes(const Rule& a, const Rule& b) {
    if (a.antecedent != b.antecedent) return a.antecedent < b.antecedent;
    return class_index(a.consequent) < class_index(b.consequent);
}

}  // namespace

void rank_rules(std::vector<Rule>& rules, std::uint32_t seed, RankMode mode) {
    // Canonicalize first so the outcome depends only on the rule multiset.
    std::sort(rules.begin(), rules.end(), [](const Rule& a, const Rule& b) {
        if (rank_precedes(a, b)) return true;
        if (rank_precedes(b, a)) return false;
        return lexicographic_precedes(a, b);
    });
    if (mode == RankMode::Lexicographic) return;

    std::mt19937 rng(seed);
    deterministic_shuffle(rules, rng);
    std::stable_sort(rules.begin(), rules.end(), rank_precedes);
}

RuleClassifier database_coverage_prune(const std::vector<Rule>& ranked, const Dataset& train) {
    const std::size_t n = train.size();
    if (n == 0) throw DataError("database coverage pruning needs a nonempty training set");

    RuleClassifier clf;
    clf.schema_feature_names = train.schema.feature_names;
    std::vector<bool> covered(n, false);
    std::size_t n_covered = 0;

    for (const auto& rule : ranked) {
        if (n_covered == n) break;
        bool hits_uncovered = false;
        bool correct_on_uncovered = false;
        std::vector<std::size_t> matches;
        for (std::size_t tid = 0; tid < n; ++tid) {
            if (!antecedent_matches(rule.antecedent, train.rows[tid].values)) continue;
            matches.push_back(tid);
            if (!covered[tid]) {
                hits_uncovered = true;
                if (*train.rows[tid].label == rule.consequent) correct_on_uncovered = true;
            }
        }
        if (!hits_uncovered || !correct_on_uncovered) continue;
        clf.rules.push_back(rule);
        for (std::size_t tid : matches) {
            if (!covered[tid]) {
                covered[tid] = true;
                ++n_covered;
            }
        }
    }

    std::array<std::size_t, 2> counts{0, 0};
    std::size_t denom = 0;
    if (n_covered < n) {
        for (std::size_t tid = 0; tid < n; ++tid) {
            if (covered[tid]) continue;
            ++counts[static_cast<std::size_t>(class_index(*train.rows[tid].label))];
            ++denom;
        }
    } else {
        counts = train.class_totals();
        denom = n;
    }
    clf.default_class = counts[1] > counts[0] ? Label::Legitimate : Label::Phishing;
    clf.default_class_fraction =
        static_cast<double>(counts[static_cast<std::size_t>(class_index(clf.default_class))]) /
        static_cast<double>(denom);
    return clf;
}

RuleDecision classify_rule(const RuleClassifier& classifier, const FeatureVector& x) {
    if (!classifier.schema_feature_names.empty() &&
        x.values.size() != classifier.schema_feature_names.size())
        throw DataError("feature vector arity " + std::to_string(x.values.size()) +
                        " does not match classifier arity " +
                        std::to_string(classifier.schema_feature_names.size()));
    for (std::size_t i = 0; i < classifier.rules.size(); ++i) {
        if (antecedent_matches(classifier.rules[i].antecedent, x.values))
            return RuleDecision{classifier.rules[i].consequent, static_cast<int>(i)};
    }
    return RuleDecision{classifier.default_class, -1};
}

double rule_score(const RuleClassifier& classifier, const FeatureVector& x) {
    const RuleDecision d = classify_rule(classifier, x);
    const double magnitude =
        d.is_default() ? 0.5 * classifier.default_class_fraction
                       : classifier.rules[static_cast<std::size_t>(d.rule_index)].confidence;
    return d.cls == Label::Legitimate ? magnitude : -magnitude;
}

RuleClassifier train_mcar(const Dataset& train, const McarConfig& config,
                          McarStageCounts* counts) {
    const auto ruleitems = find_frequent_ruleitems(train, config.minsupp, config.max_rule_size);
    auto rules = generate_rules(ruleitems, config.minconf, train.size());
    rank_rules(rules, config.rank_seed, config.rank_mode);
    RuleClassifier clf = database_coverage_prune(rules, train);
    if (counts) {
        counts->ruleitems = ruleitems.size();
        counts->generated_rules = rules.size();
        counts->kept_rules = clf.rules.size();
    }
    clf.minsupp = config.minsupp;
    clf.minconf = config.minconf;
    clf.max_rule_size = config.max_rule_size;
    clf.rank_seed = config.rank_seed;
    clf.rank_mode = config.rank_mode;
    return clf;
}

}  // namespace phishml
