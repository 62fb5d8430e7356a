#include <doctest.h>

#include <array>
#include <random>
#include <vector>

#include "phishml/tree.hpp"

#include "test_util.hpp"

using namespace phishml;
using testutil::make_dataset;

namespace {

double training_accuracy(const TreeModel& tree, const Dataset& ds) {
    int correct = 0;
    for (const auto& row : ds.rows)
        if (predict_tree(tree, row) == *row.label) ++correct;
    return static_cast<double>(correct) / static_cast<double>(ds.size());
}

/// Independent weighted-Gini computation for one candidate split.
double oracle_split_gini(const Dataset& ds, int attribute) {
    std::array<std::array<double, 2>, 3> buckets{};
    for (const auto& row : ds.rows) {
        int v = row.values[static_cast<std::size_t>(attribute)];
        buckets[static_cast<std::size_t>(v + 1)][static_cast<std::size_t>(
            class_index(*row.label))] += 1.0;
    }
    double weighted = 0.0;
    for (const auto& b : buckets) {
        double n = b[0] + b[1];
        if (n == 0.0) continue;
        double g = 1.0 - (b[0] / n) * (b[0] / n) - (b[1] / n) * (b[1] / n);
        weighted += n * g;
    }
    return weighted / static_cast<double>(ds.size());
}

Dataset random_dataset(std::mt19937& rng, int n, int arity) {
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

}  // namespace

TEST_SUITE_BEGIN("tree");

TEST_CASE("pure data collapses to a single leaf") {
    Dataset ds = make_dataset({"f1", "f2"}, {{1, -1}, {0, 1}, {-1, 0}},
                              {Label::Phishing, Label::Phishing, Label::Phishing});
    TreeModel tree = train_tree(ds, 10, 1);
    REQUIRE(tree.nodes.size() == 1);
    CHECK(tree.nodes[0].is_leaf());
    CHECK(tree.nodes[0].leaf_class == Label::Phishing);
    CHECK(tree_depth(tree) == 0);
    CHECK(predict_tree(tree, FeatureVector{{1, 1}, std::nullopt}) == Label::Phishing);
}

TEST_CASE("a single decisive attribute yields a depth-1 perfect tree") {
    Dataset ds = make_dataset({"f1", "f2"},
                              {{-1, 1}, {-1, -1}, {-1, 0}, {1, 0}, {1, 1}, {1, -1}},
                              {Label::Phishing, Label::Phishing, Label::Phishing,
                               Label::Legitimate, Label::Legitimate, Label::Legitimate});
    TreeModel tree = train_tree(ds, 10, 1);
    CHECK(tree_depth(tree) == 1);
    REQUIRE_FALSE(tree.nodes[0].is_leaf());
    CHECK(tree.nodes[0].attribute == 0);
    CHECK(training_accuracy(tree, ds) == doctest::Approx(1.0));

    // The f1=0 branch never occurred in training; it gets a leaf carrying the
    // parent's 3/3 distribution, which ties to the fail-safe class.
    FeatureVector unseen{{0, 1}, std::nullopt};
    CHECK(predict_tree(tree, unseen) == Label::Phishing);
    CHECK(score_tree(tree, unseen) == doctest::Approx(0.0));  // p = (3+1)/(6+2) = 0.5
}

TEST_CASE("leaf probabilities are Laplace-smoothed") {
    // All rows share identical features, so no split can improve Gini and the
    // root stays a leaf with counts L:3, P:1.
    Dataset ds = make_dataset({"f1", "f2"}, {{1, 0}, {1, 0}, {1, 0}, {1, 0}},
                              {Label::Legitimate, Label::Legitimate, Label::Legitimate,
                               Label::Phishing});
    TreeModel tree = train_tree(ds, 10, 1);
    REQUIRE(tree.nodes.size() == 1);
    CHECK(tree.nodes[0].p_legitimate == doctest::Approx((3.0 + 1.0) / (4.0 + 2.0)));
    CHECK(score_tree(tree, ds.rows[0]) == doctest::Approx(1.0 / 3.0));  // 2p - 1
    CHECK(predict_tree(tree, ds.rows[0]) == Label::Legitimate);
}

TEST_CASE("training accuracy never drops below the majority baseline") {
    std::mt19937 rng(555);
    for (int trial = 0; trial < 40; ++trial) {
        Dataset ds = random_dataset(rng, 8, 3);
        const auto totals = ds.class_totals();
        const double majority =
            static_cast<double>(std::max(totals[0], totals[1])) / static_cast<double>(ds.size());
        TreeModel tree = train_tree(ds, 10, 1);
        INFO("trial ", trial);
        CHECK(training_accuracy(tree, ds) >= majority - 1e-12);
    }
}

TEST_CASE("the root split matches exhaustive Gini search") {
    std::mt19937 rng(808);
    for (int trial = 0; trial < 60; ++trial) {
        Dataset ds = random_dataset(rng, 4 + static_cast<int>(rng() % 5),
                                    2 + static_cast<int>(rng() % 3));
        TreeModel tree = train_tree(ds, 10, 1);

        const auto totals = ds.class_totals();
        const double n = static_cast<double>(ds.size());
        const double p0 = static_cast<double>(totals[0]) / n;
        const double parent = 1.0 - p0 * p0 - (1.0 - p0) * (1.0 - p0);

        int best_attr = -1;
        double best = parent;
        for (std::size_t a = 0; a < ds.schema.arity(); ++a) {
            double g = oracle_split_gini(ds, static_cast<int>(a));
            if (g < best - 1e-12) {
                best = g;
                best_attr = static_cast<int>(a);
            }
        }
        INFO("trial ", trial);
        if (best_attr < 0) {
            CHECK(tree.nodes[0].is_leaf());
        } else {
            REQUIRE_FALSE(tree.nodes[0].is_leaf());
            CHECK(tree.nodes[0].attribute == best_attr);
        }
    }
}

TEST_CASE("depth and leaf-size limits are honored") {
    std::mt19937 rng(99);
    Dataset ds = random_dataset(rng, 60, 4);

    for (int depth_cap : {0, 1, 2, 3}) {
        TreeModel tree = train_tree(ds, depth_cap, 1);
        CHECK(tree_depth(tree) <= depth_cap);
    }
    // With min_leaf above N the root cannot split.
    TreeModel stump = train_tree(ds, 10, static_cast<int>(ds.size()) + 1);
    CHECK(stump.nodes.size() == 1);

    SUBCASE("every internal node has a child for each domain value") {
        TreeModel tree = train_tree(ds, 10, 5);
        for (const auto& node : tree.nodes) {
            if (node.is_leaf()) continue;
            for (int slot = 0; slot < 3; ++slot)
                if (tree.domains[static_cast<std::size_t>(node.attribute)]
                                [static_cast<std::size_t>(slot)])
                    CHECK(node.children[static_cast<std::size_t>(slot)] >= 0);
        }
    }
}

TEST_CASE("routing falls back to the suspicious branch for unseen values") {
    // Hand-built stump: split on f1 with children only for -1 and 0.
    TreeModel tree;
    tree.schema_feature_names = {"f1"};
    tree.domains = {ValueDomain{true, true, false}};
    TreeNode root;
    root.attribute = 0;
    root.class_counts = {4, 2};
    TreeNode left;  // f1 = -1
    left.class_counts = {4, 0};
    left.leaf_class = Label::Phishing;
    left.p_legitimate = (0.0 + 1.0) / (4.0 + 2.0);
    TreeNode mid;  // f1 = 0
    mid.class_counts = {0, 2};
    mid.leaf_class = Label::Legitimate;
    mid.p_legitimate = (2.0 + 1.0) / (2.0 + 2.0);
    tree.nodes = {root, left, mid};
    tree.nodes[0].children = {1, 2, -1};  // no child for f1 = 1

    CHECK(predict_tree(tree, FeatureVector{{-1}, std::nullopt}) == Label::Phishing);
    CHECK(predict_tree(tree, FeatureVector{{0}, std::nullopt}) == Label::Legitimate);
    // f1 = 1 was never trained: route through the 0 branch.
    CHECK(predict_tree(tree, FeatureVector{{1}, std::nullopt}) == Label::Legitimate);
    CHECK(score_tree(tree, FeatureVector{{1}, std::nullopt}) == doctest::Approx(0.5));

    SUBCASE("arity mismatch is rejected") {
        CHECK_THROWS_AS(predict_tree(tree, FeatureVector{{1, 1}, std::nullopt}), DataError);
    }
}

TEST_CASE("invalid training inputs are rejected") {
    Dataset ds = make_dataset({"f1"}, {{1}, {-1}}, {Label::Legitimate, Label::Phishing});
    CHECK_THROWS_AS(train_tree(make_dataset({"f1"}, {}, {}), 10, 1), DataError);
    CHECK_THROWS_AS(train_tree(ds, -1, 1), ConfigError);
    CHECK_THROWS_AS(train_tree(ds, 10, 0), ConfigError);
    Dataset unlabeled = make_dataset({"f1"}, {{1}}, {});
    CHECK_THROWS_AS(train_tree(unlabeled, 10, 1), DataError);
}

TEST_SUITE_END();
