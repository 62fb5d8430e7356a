#ifndef PHISHML_SVM_HPP
#define PHISHML_SVM_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "phishml/dataset.hpp"

namespace phishml {

struct SvmTrainConfig {
    double lambda = 0.01;     // regularization strength
    int epochs = 200;
    std::uint32_t seed = 0;   // kept for config provenance; the batch solver is order-free
    double tolerance = 1e-6;  // gradient-norm early-stop threshold

    void validate() const;
};

/// Linear soft-margin model: the hyperplane W.x = C restricted to a feature
/// subset. Positive half-space means legitimate.
struct SvmModel {
    std::vector<double> weights;           // W, one per subset feature
    double threshold = 0.0;                // C
    std::vector<int> feature_subset;       // attribute indices into the schema
    std::vector<std::string> schema_feature_names;
    SvmTrainConfig config;
    int objective_trace_length = 0;
    double final_objective = 0.0;

    double weight_norm() const;
    std::vector<double> restrict(const FeatureVector& row) const;
};

/// Regularized hinge objective: lambda/2 ||W||^2 + mean_i max(0, 1 - y_i (W.x_i - C)).
double svm_objective(std::span<const double> weights, double threshold, const Dataset& data,
                     std::span<const int> subset, double lambda);

/// Analytic subgradient of svm_objective (zero contribution at the hinge kink).
void svm_objective_gradient(std::span<const double> weights, double threshold,
                            const Dataset& data, std::span<const int> subset, double lambda,
                            std::vector<double>& grad_weights, double& grad_threshold);

/// Deterministic full-batch subgradient descent with step 1/(lambda*t) and a
/// 1/sqrt(lambda) norm ball projection; returns the iterate with the lowest
/// recorded objective. Duplicating every row leaves the result unchanged
/// (the mean loss is invariant), and reruns are bit-identical.
SvmModel train_svm(const Dataset& train, const std::vector<int>& subset,
                   const SvmTrainConfig& config);

/// W.x - C for a point already in subset space.
double decision_value(const SvmModel& model, std::span<const double> x);

/// W.x - C for a full schema row (restricted to the model's subset).
double decision_value(const SvmModel& model, const FeatureVector& row);

/// Signed point-to-hyperplane distance (W.x - C)/||W||; positive half-space positive.
double hyperplane_distance(const SvmModel& model, std::span<const double> x);

/// Projection of x onto the hyperplane: x - (W.x - C) W / ||W||^2.
std::vector<double> project_onto_hyperplane(const SvmModel& model, std::span<const double> x);

/// Legitimate in the positive half-space; exact zero resolves to phishing.
Label predict_svm(const SvmModel& model, std::span<const double> x);
Label predict_svm(const SvmModel& model, const FeatureVector& row);

}  // namespace phishml

#endif
