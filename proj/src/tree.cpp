#include "phishml/tree.hpp"

#include <algorithm>
#include <cmath>

namespace phishml {

namespace {

double gini(const std::array<int, 2>& counts) {
    const double n = counts[0] + counts[1];
    if (n == 0.0) return 0.0;
    const double p0 = counts[0] / n;
    const double p1 = counts[1] / n;
    return 1.0 - p0 * p0 - p1 * p1;
}

struct Builder {
    const Dataset& data;
    TreeModel& tree;

    int make_leaf(const std::array<int, 2>& counts) {
        TreeNode node;
        node.class_counts = counts;
        const int n = counts[0] + counts[1];
        node.p_legitimate = (counts[1] + 1.0) / (n + 2.0);
        node.leaf_class = counts[1] > counts[0] ? Label::Legitimate : Label::Phishing;
        tree.nodes.push_back(node);
        return static_cast<int>(tree.nodes.size()) - 1;
    }

    // Weighted Gini of splitting `rows` on `attribute`.
    double split_impurity(const std::vector<std::size_t>& rows, int attribute) const {
        std::array<std::array<int, 2>, 3> counts{};
        for (std::size_t tid : rows) {
            const int v = data.rows[tid].values[static_cast<std::size_t>(attribute)];
            ++counts[static_cast<std::size_t>(v + 1)]
                    [static_cast<std::size_t>(class_index(*data.rows[tid].label))];
        }
        double weighted = 0.0;
        for (const auto& c : counts) {
            const int n = c[0] + c[1];
            if (n) weighted += n * gini(c);
        }
        return weighted / static_cast<double>(rows.size());
    }

    int build(const std::vector<std::size_t>& rows, const std::array<int, 2>& counts,
              int depth) {
        const int n = counts[0] + counts[1];
        const bool pure = counts[0] == 0 || counts[1] == 0;
        if (pure || depth >= tree.max_depth || n < tree.min_leaf) return make_leaf(counts);

        // Exhaustive search over attributes; ties go to the smallest index.
        const double parent_gini = gini(counts);
        int best_attr = -1;
        double best_impurity = parent_gini;
        for (std::size_t a = 0; a < tree.schema_feature_names.size(); ++a) {
            const double imp = split_impurity(rows, static_cast<int>(a));
            if (imp < best_impurity - 1e-12) {
                best_impurity = imp;
                best_attr = static_cast<int>(a);
            }
        }
        if (best_attr < 0) return make_leaf(counts);  // no attribute improves Gini

        std::array<std::vector<std::size_t>, 3> partition;
        std::array<std::array<int, 2>, 3> child_counts{};
        for (std::size_t tid : rows) {
            const int v = data.rows[tid].values[static_cast<std::size_t>(best_attr)];
            partition[static_cast<std::size_t>(v + 1)].push_back(tid);
            ++child_counts[static_cast<std::size_t>(v + 1)]
                          [static_cast<std::size_t>(class_index(*data.rows[tid].label))];
        }

        const int node_index = static_cast<int>(tree.nodes.size());
        {
            TreeNode node;
            node.attribute = best_attr;
            node.class_counts = counts;
            node.p_legitimate = (counts[1] + 1.0) / (n + 2.0);
            node.leaf_class = counts[1] > counts[0] ? Label::Legitimate : Label::Phishing;
            tree.nodes.push_back(node);
        }
        const auto& domain = tree.domains[static_cast<std::size_t>(best_attr)];
        for (int v = -1; v <= 1; ++v) {
            const auto slot = static_cast<std::size_t>(v + 1);
            if (!domain[slot]) continue;
            int child;
            if (partition[slot].empty()) {
                // Value never seen at this node: leaf carrying the parent distribution.
                child = make_leaf(counts);
            } else {
                child = build(partition[slot], child_counts[slot], depth + 1);
            }
            tree.nodes[static_cast<std::size_t>(node_index)].children[slot] = child;
        }
        return node_index;
    }
};

const TreeNode& route(const TreeModel& tree, const FeatureVector& x) {
    if (x.values.size() != tree.schema_feature_names.size())
        throw DataError("feature vector arity " + std::to_string(x.values.size()) +
                        " does not match tree arity " +
                        std::to_string(tree.schema_feature_names.size()));
    const TreeNode* node = &tree.nodes.at(0);
    while (!node->is_leaf()) {
        const int v = x.values[static_cast<std::size_t>(node->attribute)];
        int child = (v >= -1 && v <= 1) ? node->children[static_cast<std::size_t>(v + 1)] : -1;
        if (child < 0) child = node->children[1];  // unseen value: the 0 branch
        if (child < 0) {
            // Domain lacks 0 as well; fall back to the heaviest child.
            int best = -1, best_n = -1;
            for (int ci : node->children) {
                if (ci < 0) continue;
                const auto& cn = tree.nodes[static_cast<std::size_t>(ci)];
                const int cnt = cn.class_counts[0] + cn.class_counts[1];
                if (cnt > best_n) {
                    best_n = cnt;
                    best = ci;
                }
            }
            child = best;
        }
        node = &tree.nodes[static_cast<std::size_t>(child)];
    }
    return *node;
}

}  // namespace

TreeModel train_tree(const Dataset& train, int max_depth, int min_leaf) {
    if (train.size() == 0) throw DataError("cannot train a tree on an empty dataset");
    if (!train.labeled()) throw DataError("training rows must be labeled");
    if (max_depth < 0) throw ConfigError("max_depth must be nonnegative");
    if (min_leaf < 1) throw ConfigError("min_leaf must be at least 1");

    TreeModel tree;
    tree.schema_feature_names = train.schema.feature_names;
    tree.domains = train.schema.domains;
    tree.max_depth = max_depth;
    tree.min_leaf = min_leaf;

    std::vector<std::size_t> rows(train.size());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    std::array<int, 2> counts{};
    const auto totals = train.class_totals();
    counts[0] = static_cast<int>(totals[0]);
    counts[1] = static_cast<int>(totals[1]);

    Builder builder{train, tree};
    builder.build(rows, counts, 0);
    return tree;
}

Label predict_tree(const TreeModel& tree, const FeatureVector& x) {
    return route(tree, x).leaf_class;
}

double score_tree(const TreeModel& tree, const FeatureVector& x) {
    return 2.0 * route(tree, x).p_legitimate - 1.0;
}

int tree_depth(const TreeModel& tree) {
    // Iterative DFS over the arena.
    int deepest = 0;
    std::vector<std::pair<int, int>> stack{{0, 0}};
    while (!stack.empty()) {
        const auto [idx, depth] = stack.back();
        stack.pop_back();
        deepest = std::max(deepest, depth);
        const auto& node = tree.nodes[static_cast<std::size_t>(idx)];
        if (node.is_leaf()) continue;
        for (int child : node.children)
            if (child >= 0) stack.emplace_back(child, depth + 1);
    }
    return deepest;
}

}  // namespace phishml
