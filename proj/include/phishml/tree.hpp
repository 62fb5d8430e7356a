#ifndef PHISHML_TREE_HPP
#define PHISHML_TREE_HPP

#include <array>
#include <string>
#include <vector>

#include "phishml/dataset.hpp"

namespace phishml {

/// Node of the multiway decision tree, stored in an arena indexed by id.
/// Internal nodes carry one child per value in the split attribute's domain;
/// leaves carry a Laplace-smoothed class probability.
struct TreeNode {
    int attribute = -1;  // -1 marks a leaf
    std::array<int, 3> children{-1, -1, -1};  // child index per value -1/0/1
    std::array<int, 2> class_counts{0, 0};    // training rows seen here
    Label leaf_class = Label::Phishing;
    double p_legitimate = 0.5;  // smoothed (n_legit+1)/(n+2)

    bool is_leaf() const { return attribute < 0; }
};

struct TreeModel {
    std::vector<TreeNode> nodes;  // nodes[0] is the root
    std::vector<std::string> schema_feature_names;
    std::vector<ValueDomain> domains;
    int max_depth = 10;
    int min_leaf = 5;
};

/// Greedy recursive Gini splitting over ternary attributes; stops at
/// max_depth, below min_leaf rows, on purity, or when no split improves Gini.
TreeModel train_tree(const Dataset& train, int max_depth = 10, int min_leaf = 5);

Label predict_tree(const TreeModel& tree, const FeatureVector& x);

/// Signed leaf probability of legitimate: 2p - 1.
double score_tree(const TreeModel& tree, const FeatureVector& x);

/// Depth of the deepest leaf (root = depth 0).
int tree_depth(const TreeModel& tree);

}  // namespace phishml

#endif
