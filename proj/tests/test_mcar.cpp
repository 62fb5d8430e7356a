#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "phishml/mcar.hpp"

#include "test_util.hpp"

using namespace phishml;
using testutil::make_dataset;
using testutil::throws_containing;

namespace {

// Key identifying one (antecedent, class) pair with its exact statistics.
using MinedPair = std::tuple<Antecedent, int, double, double>;  // conf/supp as produced

/// Brute-force oracle: enumerate every antecedent (each attribute absent or
/// set to one of -1/0/1) x class, computing statistics by direct row scan.
/// Completely independent of the level-wise TID-intersection implementation.
std::set<MinedPair> enumerate_all_pairs(const Dataset& ds, double minsupp, double minconf,
                                        int max_size) {
    const int arity = static_cast<int>(ds.schema.arity());
    const auto n = static_cast<double>(ds.size());
    std::set<MinedPair> out;
    const long combos = static_cast<long>(std::pow(4.0, arity));
    for (long code = 1; code < combos; ++code) {
        Antecedent ante;
        long rest = code;
        for (int a = 0; a < arity; ++a, rest /= 4) {
            int digit = static_cast<int>(rest % 4);
            if (digit > 0) ante.push_back(Item{a, digit - 2});  // 1->-1, 2->0, 3->1
        }
        if (ante.empty() || (max_size > 0 && static_cast<int>(ante.size()) > max_size)) continue;
        int match = 0;
        std::array<int, 2> by_class{0, 0};
        for (const auto& row : ds.rows) {
            bool hit = true;
            for (const auto& it : ante)
                if (row.values[static_cast<std::size_t>(it.attribute)] != it.value) hit = false;
            if (!hit) continue;
            ++match;
            ++by_class[static_cast<std::size_t>(class_index(*row.label))];
        }
        if (match == 0) continue;
        for (int c = 0; c < 2; ++c) {
            double supp = by_class[static_cast<std::size_t>(c)] / n;
            if (supp < minsupp) continue;
            double conf = static_cast<double>(by_class[static_cast<std::size_t>(c)]) / match;
            if (conf >= minconf) out.insert({ante, c, supp, conf});
        }
    }
    return out;
}

std::set<MinedPair> mined_pairs(const std::vector<Rule>& rules) {
    std::set<MinedPair> out;
    for (const auto& r : rules)
        out.insert({r.antecedent, class_index(r.consequent), r.support, r.confidence});
    return out;
}

/// Straight-line replay of the coverage scan, written without the candidate
/// bookkeeping of the real implementation.
std::vector<Rule> prune_oracle(const std::vector<Rule>& ranked, const Dataset& ds) {
    std::vector<Rule> kept;
    std::set<std::size_t> uncovered;
    for (std::size_t i = 0; i < ds.size(); ++i) uncovered.insert(i);
    for (const auto& rule : ranked) {
        if (uncovered.empty()) break;
        bool any = false, correct = false;
        for (std::size_t tid : uncovered) {
            if (!antecedent_matches(rule.antecedent, ds.rows[tid].values)) continue;
            any = true;
            if (*ds.rows[tid].label == rule.consequent) correct = true;
        }
        if (!any || !correct) continue;
        kept.push_back(rule);
        for (auto it = uncovered.begin(); it != uncovered.end();) {
            if (antecedent_matches(rule.antecedent, ds.rows[*it].values))
                it = uncovered.erase(it);
            else
                ++it;
        }
    }
    return kept;
}

Dataset random_dataset(std::mt19937& rng, int max_rows = 8, int max_attrs = 4) {
    const int n = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_rows - 1));
    const int arity = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_attrs - 1));
    std::vector<std::string> names;
    for (int a = 0; a < arity; ++a) names.push_back("f" + std::to_string(a + 1));
    std::vector<std::vector<int>> rows;
    std::vector<Label> labels;
    for (int i = 0; i < n; ++i) {
        std::vector<int> row;
        for (int a = 0; a < arity; ++a) row.push_back(static_cast<int>(rng() % 3) - 1);
        rows.push_back(row);
        labels.push_back(rng() % 2 ? Label::Legitimate : Label::Phishing);
    }
    return make_dataset(names, rows, labels);
}

const Dataset kFourRows = make_dataset(
    {"f1", "f2"},
    {{1, 1}, {1, -1}, {1, 1}, {-1, -1}},
    {Label::Legitimate, Label::Phishing, Label::Legitimate, Label::Phishing});

Rule make_rule(double conf, double supp, int size, int attr = 0, int value = 1,
               Label cls = Label::Legitimate) {
    Antecedent a;
    for (int i = 0; i < size; ++i) a.push_back(Item{attr + i, value});
    return Rule{a, cls, supp, conf, size};
}

}  // namespace

TEST_SUITE_BEGIN("mcar");

TEST_CASE("frequent ruleitems carry exact TID lists and counts") {
    auto items = find_frequent_ruleitems(kFourRows, 0.5);

    auto find_item = [&](int attr, int value) -> const RuleItem* {
        for (const auto& ri : items)
            if (ri.antecedent == Antecedent{Item{attr, value}}) return &ri;
        return nullptr;
    };

    const RuleItem* f1_pos = find_item(0, 1);
    REQUIRE(f1_pos != nullptr);
    CHECK(f1_pos->tid_list == std::vector<int>{0, 1, 2});
    CHECK(f1_pos->class_counts[class_index(Label::Legitimate)] == 2);
    CHECK(f1_pos->class_counts[class_index(Label::Phishing)] == 1);
    CHECK(f1_pos->support(Label::Legitimate, 4) == doctest::Approx(0.5));
    CHECK(f1_pos->frequent[class_index(Label::Legitimate)]);
    CHECK_FALSE(f1_pos->frequent[class_index(Label::Phishing)]);  // 1/4 < 0.5

    // (f1=-1 -> P) has support 1/4 < 0.5: not frequent for either class, so
    // the item is dropped entirely.
    CHECK(find_item(0, -1) == nullptr);

    SUBCASE("bad thresholds and degenerate inputs are rejected") {
        CHECK_THROWS_AS(find_frequent_ruleitems(kFourRows, 0.0), ConfigError);
        CHECK_THROWS_AS(find_frequent_ruleitems(kFourRows, 1.5), ConfigError);
        Dataset empty = make_dataset({"f1"}, {}, {});
        CHECK_THROWS_AS(find_frequent_ruleitems(empty, 0.5), DataError);
        Dataset unlabeled = make_dataset({"f1"}, {{1}}, {});
        CHECK_THROWS_AS(find_frequent_ruleitems(unlabeled, 0.5), DataError);
    }
}

TEST_CASE("rule generation applies the confidence threshold") {
    auto items = find_frequent_ruleitems(kFourRows, 0.5);

    // (f1=1 -> L) has confidence 2/3: emitted at 0.6, suppressed at 0.7.
    auto has_f1_rule = [](const std::vector<Rule>& rules) {
        return std::any_of(rules.begin(), rules.end(), [](const Rule& r) {
            return r.antecedent == Antecedent{Item{0, 1}} && r.consequent == Label::Legitimate;
        });
    };
    auto at_point_six = generate_rules(items, 0.6, kFourRows.size());
    CHECK(has_f1_rule(at_point_six));
    for (const auto& r : at_point_six) {
        if (r.antecedent == Antecedent{Item{0, 1}}) {
            CHECK(r.confidence == doctest::Approx(2.0 / 3.0));
            CHECK(r.support == doctest::Approx(0.5));
            CHECK(r.size == 1);
        }
    }
    CHECK_FALSE(has_f1_rule(generate_rules(items, 0.7, kFourRows.size())));

    SUBCASE("minconf 1.0 keeps only class-pure antecedents") {
        for (const auto& r : generate_rules(items, 1.0, kFourRows.size()))
            CHECK(r.confidence == doctest::Approx(1.0));
    }
    SUBCASE("threshold validation") {
        CHECK_THROWS_AS(generate_rules(items, 0.0, 4), ConfigError);
        CHECK_THROWS_AS(generate_rules(items, 1.01, 4), ConfigError);
    }
}

TEST_CASE("mining equals brute-force enumeration on small random datasets") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 120; ++trial) {
        Dataset ds = random_dataset(rng);
        const double minsupp = trial % 3 == 0 ? 1e-9 : 0.02 + 0.3 * (trial % 5) / 4.0;
        const double minconf = 0.3 + 0.5 * (trial % 4) / 3.0;
        const int max_size = trial % 4 == 0 ? 2 : 0;

        auto items = find_frequent_ruleitems(ds, minsupp, max_size);
        auto rules = generate_rules(items, minconf, ds.size());
        auto expected = enumerate_all_pairs(ds, minsupp, minconf, max_size);

        INFO("trial ", trial, " rows=", ds.size(), " arity=", ds.schema.arity());
        CHECK(mined_pairs(rules) == expected);
    }
}

TEST_CASE("TID lists equal a direct row scan") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        Dataset ds = random_dataset(rng);
        for (const auto& ri : find_frequent_ruleitems(ds, 0.1)) {
            std::vector<int> rescanned;
            for (std::size_t tid = 0; tid < ds.size(); ++tid)
                if (antecedent_matches(ri.antecedent, ds.rows[tid].values))
                    rescanned.push_back(static_cast<int>(tid));
            CHECK(ri.tid_list == rescanned);
            CHECK(static_cast<std::size_t>(ri.class_counts[0] + ri.class_counts[1]) ==
                  ri.tid_list.size());
        }
    }
}

TEST_CASE("raising either threshold never adds a rule") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        Dataset ds = random_dataset(rng);
        auto loose = mined_pairs(
            generate_rules(find_frequent_ruleitems(ds, 0.05), 0.4, ds.size()));
        auto tighter_supp = mined_pairs(
            generate_rules(find_frequent_ruleitems(ds, 0.3), 0.4, ds.size()));
        auto tighter_conf = mined_pairs(
            generate_rules(find_frequent_ruleitems(ds, 0.05), 0.8, ds.size()));
        CHECK(std::includes(loose.begin(), loose.end(), tighter_supp.begin(), tighter_supp.end()));
        CHECK(std::includes(loose.begin(), loose.end(), tighter_conf.begin(), tighter_conf.end()));
    }
}

TEST_CASE("ranking: confidence, then support, then smaller size") {
    SUBCASE("confidence dominates") {
        std::vector<Rule> rules = {make_rule(0.90, 0.10, 1), make_rule(0.95, 0.05, 1, 1)};
        rank_rules(rules, 42);
        CHECK(rules[0].confidence == doctest::Approx(0.95));
    }
    SUBCASE("support breaks confidence ties") {
        std::vector<Rule> rules = {make_rule(0.90, 0.10, 1, 1), make_rule(0.90, 0.20, 1)};
        rank_rules(rules, 42);
        CHECK(rules[0].support == doctest::Approx(0.20));
    }
    SUBCASE("smaller antecedents win full metric ties") {
        std::vector<Rule> rules = {make_rule(0.9, 0.1, 2, 1), make_rule(0.9, 0.1, 1)};
        rank_rules(rules, 42);
        CHECK(rules[0].size == 1);
    }
    SUBCASE("ranking depends only on the rule multiset") {
        std::mt19937 rng(5);
        std::vector<Rule> rules;
        for (int i = 0; i < 12; ++i)
            rules.push_back(make_rule(0.5 + 0.1 * (i % 3), 0.1 * (i % 4 + 1), 1 + i % 2,
                                      i % 4, i % 3 - 1, i % 2 ? Label::Phishing : Label::Legitimate));
        std::vector<Rule> shuffled = rules;
        deterministic_shuffle(shuffled, rng);

        std::vector<Rule> a = rules, b = shuffled;
        rank_rules(a, 42);
        rank_rules(b, 42);
        CHECK(a == b);

        // Idempotence: ranking a ranked list changes nothing.
        std::vector<Rule> again = a;
        rank_rules(again, 42);
        CHECK(again == a);

        // The seed only permutes full ties; rank-relevant fields stay sorted.
        std::vector<Rule> other_seed = rules;
        rank_rules(other_seed, 7);
        for (std::size_t i = 1; i < other_seed.size(); ++i) {
            const auto& hi = other_seed[i - 1];
            const auto& lo = other_seed[i];
            bool nonincreasing =
                hi.confidence > lo.confidence ||
                (hi.confidence == lo.confidence &&
                 (hi.support > lo.support ||
                  (hi.support == lo.support && hi.size <= lo.size)));
            CHECK(nonincreasing);
        }
    }
    SUBCASE("lexicographic mode is seed-independent") {
        std::vector<Rule> a = {make_rule(0.9, 0.1, 1, 2), make_rule(0.9, 0.1, 1, 0)};
        std::vector<Rule> b = a;
        rank_rules(a, 1, RankMode::Lexicographic);
        rank_rules(b, 999, RankMode::Lexicographic);
        CHECK(a == b);
        CHECK(a[0].antecedent[0].attribute == 0);
    }
}

TEST_CASE("database coverage pruning") {
    SUBCASE("single rule covering everything correctly becomes the classifier") {
        Dataset ds = make_dataset({"f1"}, {{1}, {1}, {1}}, {Label::Legitimate, Label::Legitimate,
                                                            Label::Legitimate});
        std::vector<Rule> rules = {make_rule(1.0, 1.0, 1)};
        RuleClassifier clf = database_coverage_prune(rules, ds);
        CHECK(clf.rules.size() == 1);
        CHECK(clf.default_class == Label::Legitimate);
        CHECK(clf.default_class_fraction == doctest::Approx(1.0));
    }
    SUBCASE("rules matching no rows are pruned") {
        Dataset ds = make_dataset({"f1"}, {{1}, {-1}}, {Label::Legitimate, Label::Phishing});
        std::vector<Rule> rules = {make_rule(1.0, 0.5, 1, 0, 0)};  // f1=0 never occurs
        RuleClassifier clf = database_coverage_prune(rules, ds);
        CHECK(clf.rules.empty());
        CHECK(clf.default_class == Label::Phishing);  // tie resolves to phishing
    }
    SUBCASE("rules wrong on every uncovered row are pruned") {
        Dataset ds = make_dataset({"f1"}, {{1}, {1}}, {Label::Phishing, Label::Phishing});
        std::vector<Rule> rules = {make_rule(0.9, 0.5, 1, 0, 1, Label::Legitimate)};
        RuleClassifier clf = database_coverage_prune(rules, ds);
        CHECK(clf.rules.empty());
    }
    SUBCASE("covered rows stop later rules from qualifying") {
        Dataset ds = make_dataset({"f1", "f2"}, {{1, 1}, {1, -1}},
                                  {Label::Legitimate, Label::Legitimate});
        // First rule covers both rows; the second would match row 0 only.
        std::vector<Rule> rules = {make_rule(1.0, 1.0, 1),
                                   Rule{{Item{1, 1}}, Label::Legitimate, 0.5, 1.0, 1}};
        RuleClassifier clf = database_coverage_prune(rules, ds);
        CHECK(clf.rules.size() == 1);
        CHECK(clf.rules[0].antecedent == Antecedent{Item{0, 1}});
    }
    SUBCASE("empty training set is an error") {
        Dataset empty = make_dataset({"f1"}, {}, {});
        CHECK_THROWS_AS(database_coverage_prune({}, empty), DataError);
    }
    SUBCASE("kept rules match an oracle replay on random data") {
        std::mt19937 rng(314);
        for (int trial = 0; trial < 60; ++trial) {
            Dataset ds = random_dataset(rng);
            auto rules = generate_rules(find_frequent_ruleitems(ds, 0.1), 0.4, ds.size());
            rank_rules(rules, trial);
            RuleClassifier clf = database_coverage_prune(rules, ds);
            INFO("trial ", trial);
            CHECK(clf.rules == prune_oracle(rules, ds));
        }
    }
}

TEST_CASE("rule classification and scoring") {
    RuleClassifier clf;
    clf.rules = {make_rule(0.9, 0.4, 1)};  // f1=1 -> LEGITIMATE
    clf.default_class = Label::Phishing;
    clf.default_class_fraction = 0.6;
    clf.schema_feature_names = {"f1", "f2"};

    FeatureVector legit{{1, 0}, std::nullopt};
    FeatureVector other{{-1, 0}, std::nullopt};

    RuleDecision d1 = classify_rule(clf, legit);
    CHECK(d1.cls == Label::Legitimate);
    CHECK(d1.rule_index == 0);
    CHECK_FALSE(d1.is_default());

    RuleDecision d2 = classify_rule(clf, other);
    CHECK(d2.cls == Label::Phishing);
    CHECK(d2.is_default());

    CHECK(rule_score(clf, legit) == doctest::Approx(0.9));
    CHECK(rule_score(clf, other) == doctest::Approx(-0.3));  // -0.5 * 0.6

    SUBCASE("the higher-ranked of two firing rules decides") {
        clf.rules.push_back(Rule{{Item{1, 0}}, Label::Phishing, 0.3, 0.8, 1});
        RuleDecision d = classify_rule(clf, legit);  // both rules fire
        CHECK(d.rule_index == 0);
        CHECK(d.cls == Label::Legitimate);
        CHECK(rule_score(clf, FeatureVector{{-1, 0}, std::nullopt}) == doctest::Approx(-0.8));
    }
    SUBCASE("default scoring toward legitimate is positive") {
        clf.default_class = Label::Legitimate;
        CHECK(rule_score(clf, other) == doctest::Approx(0.3));
    }
    SUBCASE("arity mismatch is rejected") {
        CHECK_THROWS_AS(classify_rule(clf, FeatureVector{{1}, std::nullopt}), DataError);
    }
}

TEST_CASE("train_mcar wires the phases together deterministically") {
    std::mt19937 rng(808);
    Dataset ds = random_dataset(rng, 8, 4);
    McarConfig cfg;
    cfg.minsupp = 0.1;
    cfg.minconf = 0.5;
    cfg.rank_seed = 42;

    McarStageCounts counts;
    RuleClassifier clf = train_mcar(ds, cfg, &counts);
    CHECK(counts.ruleitems > 0);
    CHECK(counts.generated_rules >= counts.kept_rules);
    CHECK(counts.kept_rules == clf.rules.size());
    CHECK(clf.minsupp == doctest::Approx(0.1));
    CHECK(clf.minconf == doctest::Approx(0.5));
    CHECK(clf.rank_seed == 42);
    CHECK(clf.schema_feature_names == ds.schema.feature_names);

    RuleClassifier again = train_mcar(ds, cfg);
    CHECK(again.rules == clf.rules);
    CHECK(again.default_class == clf.default_class);

    // Every row classifies to something: default class guarantees totality.
    for (const auto& row : ds.rows) {
        RuleDecision d = classify_rule(clf, row);
        CHECK((d.cls == Label::Phishing || d.cls == Label::Legitimate));
    }
}

TEST_SUITE_END();
