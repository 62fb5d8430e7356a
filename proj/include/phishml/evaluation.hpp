#ifndef PHISHML_EVALUATION_HPP
#define PHISHML_EVALUATION_HPP

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "phishml/dataset.hpp"

namespace phishml {

/// Counts with PHISHING as the positive class.
struct ConfusionMatrix {
    long tp = 0;
    long fp = 0;
    long tn = 0;
    long fn = 0;

    long total() const { return tp + fp + tn + fn; }
};

/// Table-style scalar metrics. Ratios with a zero denominator are reported as
/// 0 with the matching defined flag cleared, never as NaN.
struct ScalarMetrics {
    double accuracy = 0.0;
    double tp_rate = 0.0;
    double fp_rate = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double error_rate = 0.0;
    bool tp_rate_defined = true;
    bool fp_rate_defined = true;
    bool precision_defined = true;
};

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
    double threshold = 0.0;
};

/// Threshold sweep over the distinct scores (ties grouped). Points run from
/// (0,0) to (1,1) with nondecreasing fpr; auc is the trapezoidal area.
struct RocCurve {
    std::vector<RocPoint> points;
    double auc = 0.0;
};

struct PseudoR2 {
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
    bool defined = true;  // false for degenerate (single-class or constant-score) input
};

ConfusionMatrix confusion(std::span<const Label> predictions, std::span<const Label> labels);

ScalarMetrics scalar_metrics(const ConfusionMatrix& cm);

/// scores must be oriented so that HIGHER means more likely phishing.
RocCurve roc(std::span<const double> scores, std::span<const Label> labels);

/// O(n^2) pair-counting AUC: P(score_phishing > score_legit) + 0.5 P(equal).
double auc_by_pair_counting(std::span<const double> scores, std::span<const Label> labels);

/// McFadden pseudo-R^2 of a Platt-style logistic calibration sigma(a*s + b)
/// fitted to the scores by Newton iteration (slope capped at |a| <= 50 on the
/// standardized score scale). Invariant under score sign flips.
PseudoR2 pseudo_r2(std::span<const double> scores, std::span<const Label> labels);

/// Everything the report carries for one model on one test set.
struct ModelEvaluation {
    std::string model_kind;
    ConfusionMatrix cm;
    ScalarMetrics metrics;
    RocCurve roc;
    bool roc_defined = true;
    PseudoR2 r2;
    double train_seconds = 0.0;
    double eval_seconds = 0.0;
    std::size_t model_size_bytes = 0;  // serialized size, the portable space measure
};

using PredictFn = std::function<Label(const FeatureVector&)>;
using ScoreFn = std::function<double(const FeatureVector&)>;

/// Run a model over the test rows and assemble all metrics. `score` is the
/// model's native score (positive = legitimate); it is negated internally for
/// the ROC sweep where phishing is the positive class. Wall-clock evaluation
/// time is recorded; training time is passed through from the caller.
ModelEvaluation evaluate_model(const PredictFn& predict, const ScoreFn& score,
                               const Dataset& test, double train_seconds = 0.0,
                               const std::string& model_kind = "");

/// Rows sorted by accuracy descending, aligned like the published comparison.
std::string comparison_text(const std::vector<ModelEvaluation>& evaluations);

void write_roc_csv(const RocCurve& curve, const std::string& path);

}  // namespace phishml

#endif
