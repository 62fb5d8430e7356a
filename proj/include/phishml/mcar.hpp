#ifndef PHISHML_MCAR_HPP
#define PHISHML_MCAR_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <vector>

#include "phishml/dataset.hpp"

namespace phishml {

/// One attribute-value condition of a rule antecedent.
struct Item {
    int attribute = 0;
    int value = 0;
    auto operator<=>(const Item&) const = default;
};

/// Items sorted by attribute, all attributes distinct.
using Antecedent = std::vector<Item>;

bool antecedent_matches(const Antecedent& antecedent, const std::vector<int>& values);

/// A frequent antecedent with its occurrence statistics. tid_list is the
/// sorted set of row ids where the antecedent holds; it always equals the
/// intersection of the single-item TID lists. frequent[c] marks the classes
/// whose support count/N clears the mining threshold.
struct RuleItem {
    Antecedent antecedent;
    std::vector<int> tid_list;
    std::array<int, 2> class_counts{0, 0};
    std::array<bool, 2> frequent{false, false};

    double support(Label c, std::size_t n_rows) const {
        return static_cast<double>(class_counts[static_cast<std::size_t>(class_index(c))]) /
               static_cast<double>(n_rows);
    }
    double confidence(Label c) const {
        return static_cast<double>(class_counts[static_cast<std::size_t>(class_index(c))]) /
               static_cast<double>(tid_list.size());
    }
};

/// A class association rule.
struct Rule {
    Antecedent antecedent;
    Label consequent = Label::Phishing;
    double support = 0.0;     // rows matching antecedent AND class, over N
    double confidence = 0.0;  // rows matching antecedent AND class, over antecedent matches
    int size = 0;             // |antecedent|

    auto operator<=>(const Rule&) const = default;
};

/// How full ties (equal confidence, support and size) are broken.
enum class RankMode {
    SeededShuffle,  // deterministic "random": canonical order, seeded shuffle, stable sort
    Lexicographic,  // strict (attribute, value, class) order
};

/// Ranked, pruned rule list plus default class: the output of the rule phase.
struct RuleClassifier {
    std::vector<Rule> rules;
    Label default_class = Label::Phishing;
    double default_class_fraction = 0.0;  // majority share behind the default

    // Training metadata.
    std::vector<std::string> schema_feature_names;
    double minsupp = 0.0;
    double minconf = 0.0;
    int max_rule_size = 0;
    std::uint32_t rank_seed = 0;
    RankMode rank_mode = RankMode::SeededShuffle;
};

/// Decision of the rule classifier: the consequent of the highest-ranked
/// firing rule, or the default class when nothing fires (rule_index == -1).
struct RuleDecision {
    Label cls = Label::Phishing;
    int rule_index = -1;

    bool is_default() const { return rule_index < 0; }
};

/// Mine all (antecedent, class) pairs with support >= minsupp. One pass over
/// the data builds the single-item TID lists; size-k candidates come from
/// joining frequent size-(k-1) ruleitems of the same class that share k-2
/// items, with TID lists computed by sorted intersection. max_size caps the
/// antecedent length (0 = unbounded).
std::vector<RuleItem> find_frequent_ruleitems(const Dataset& train, double minsupp,
                                              int max_size = 0);

/// Emit one rule per frequent (antecedent, class) whose confidence >= minconf.
std::vector<Rule> generate_rules(const std::vector<RuleItem>& ruleitems, double minconf,
                                 std::size_t n_rows);

/// Sort best-first: higher confidence, then higher support, then smaller
/// size. Remaining ties break per `mode`; the result depends only on the rule
/// multiset, never on input order, so ranking is idempotent.
void rank_rules(std::vector<Rule>& rules, std::uint32_t seed,
                RankMode mode = RankMode::SeededShuffle);

/// Database coverage pruning: scan rules in rank order, keep a rule iff it
/// matches at least one not-yet-covered row and classifies one of those rows
/// correctly, then mark every row it matches as covered. The default class is
/// the majority of the uncovered rows (whole training set if none remain).
RuleClassifier database_coverage_prune(const std::vector<Rule>& ranked, const Dataset& train);

RuleDecision classify_rule(const RuleClassifier& classifier, const FeatureVector& x);

/// Signed score for ROC sweeps: +confidence when the firing rule says
/// legitimate, -confidence for phishing; default decisions score
/// +-0.5 * default_class_fraction.
double rule_score(const RuleClassifier& classifier, const FeatureVector& x);

struct McarConfig {
    double minsupp = 0.02;
    double minconf = 0.5;
    int max_rule_size = 0;  // 0 = unbounded
    std::uint32_t rank_seed = 0;
    RankMode rank_mode = RankMode::SeededShuffle;
};

/// Intermediate cardinalities of a training run, for reports.
struct McarStageCounts {
    std::size_t ruleitems = 0;
    std::size_t generated_rules = 0;
    std::size_t kept_rules = 0;
};

/// Both MCAR phases end to end: mine, generate, rank, prune.
RuleClassifier train_mcar(const Dataset& train, const McarConfig& config,
                          McarStageCounts* counts = nullptr);

}  // namespace phishml

#endif
