#ifndef PHISHML_HYBRID_HPP
#define PHISHML_HYBRID_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "phishml/mcar.hpp"
#include "phishml/svm.hpp"

namespace phishml {

struct HybridConfig {
    double minsupp = 0.02;
    double minconf = 0.5;
    int max_rule_size = 0;  // 0 = unbounded
    std::uint32_t rank_seed = 0;
    RankMode rank_mode = RankMode::SeededShuffle;
    SvmTrainConfig svm;
};

/// Audit record for one pipeline stage: wall-clock duration, a monotonic end
/// timestamp, a hash of the stage output and the output's cardinality
/// (ruleitems mined, rules generated, rules kept, subset features).
struct StageRecord {
    std::string name;
    double seconds = 0.0;
    std::uint64_t end_ns = 0;  // steady-clock nanoseconds
    std::uint64_t output_hash = 0;
    std::uint64_t output_count = 0;
};

/// Rule mining feeds the SVM: pruned rules pick the feature subset and stay
/// around as the explanation layer; the SVM on that subset makes the call.
struct HybridModel {
    RuleClassifier rules;
    std::vector<int> feature_subset;
    SvmModel svm;
    HybridConfig config;
    std::vector<StageRecord> stages;
};

/// Sorted distinct attribute indices used by any kept rule; an empty rule
/// list falls back to every schema attribute so training never starves.
std::vector<int> select_features(const RuleClassifier& classifier, const FeatureSchema& schema);

/// The four-stage pipeline: mine frequent ruleitems, generate rules, rank and
/// coverage-prune them into a classifier, then train the SVM on the selected
/// subset. Stage durations and output hashes are recorded.
HybridModel train_hybrid(const Dataset& train, const HybridConfig& config);

struct HybridPrediction {
    Label cls = Label::Phishing;   // the SVM decides
    double score = 0.0;            // SVM decision value on the subset
    RuleDecision explanation;      // firing rule (or DEFAULT), for human audit
};

HybridPrediction predict_hybrid(const HybridModel& model, const FeatureVector& x);

/// Continuous score for ROC sweeps: the SVM decision value.
double score_hybrid(const HybridModel& model, const FeatureVector& x);

}  // namespace phishml

#endif
