#include "phishml/svm.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace phishml {

void SvmTrainConfig::validate() const {
    if (!(lambda > 0.0)) throw ConfigError("lambda must be positive");
    if (epochs <= 0) throw ConfigError("epochs must be positive");
    if (!(tolerance > 0.0)) throw ConfigError("tolerance must be positive");
}

double SvmModel::weight_norm() const {
    double s = 0.0;
    for (double w : weights) s += w * w;
    return std::sqrt(s);
}

std::vector<double> SvmModel::restrict(const FeatureVector& row) const {
    std::vector<double> x(feature_subset.size());
    for (std::size_t i = 0; i < feature_subset.size(); ++i) {
        const auto a = static_cast<std::size_t>(feature_subset[i]);
        if (a >= row.values.size())
            throw DataError("feature vector arity " + std::to_string(row.values.size()) +
                            " does not cover model feature index " + std::to_string(a));
        x[i] = static_cast<double>(row.values[a]);
    }
    return x;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void check_subset(const Dataset& data, std::span<const int> subset) {
    if (subset.empty()) throw ConfigError("feature subset is empty");
    std::set<int> seen;
    for (int a : subset) {
        if (a < 0 || static_cast<std::size_t>(a) >= data.schema.arity())
            throw ConfigError("subset index " + std::to_string(a) + " outside schema arity");
        if (!seen.insert(a).second)
            throw ConfigError("duplicate subset index " + std::to_string(a));
    }
}

// Margins y_i * (W.x_i - C) with row values restricted to the subset.
void compute_margins(std::span<const double> w, double c, const Dataset& data,
                     std::span<const int> subset, std::vector<double>& margins) {
    margins.resize(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto& values = data.rows[i].values;
        double f = -c;
        for (std::size_t j = 0; j < subset.size(); ++j)
            f += w[j] * static_cast<double>(values[static_cast<std::size_t>(subset[j])]);
        margins[i] = label_sign(*data.rows[i].label) * f;
    }
}

}  // namespace

double svm_objective(std::span<const double> weights, double threshold, const Dataset& data,
                     std::span<const int> subset, double lambda) {
    std::vector<double> margins;
    compute_margins(weights, threshold, data, subset, margins);
    double hinge = 0.0;
    for (double m : margins) hinge += std::max(0.0, 1.0 - m);
    hinge /= static_cast<double>(data.size());
    return 0.5 * lambda * dot(weights, weights) + hinge;
}

void svm_objective_gradient(std::span<const double> weights, double threshold,
                            const Dataset& data, std::span<const int> subset, double lambda,
                            std::vector<double>& grad_weights, double& grad_threshold) {
    std::vector<double> margins;
    compute_margins(weights, threshold, data, subset, margins);

    grad_weights.assign(weights.size(), 0.0);
    grad_threshold = 0.0;
    const double inv_n = 1.0 / static_cast<double>(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (margins[i] >= 1.0) continue;  // hinge inactive (kink contributes zero)
        const double y = label_sign(*data.rows[i].label);
        const auto& values = data.rows[i].values;
        for (std::size_t j = 0; j < subset.size(); ++j)
            grad_weights[j] -=
                inv_n * y * static_cast<double>(values[static_cast<std::size_t>(subset[j])]);
        grad_threshold += inv_n * y;
    }
    for (std::size_t j = 0; j < weights.size(); ++j) grad_weights[j] += lambda * weights[j];
}

SvmModel train_svm(const Dataset& train, const std::vector<int>& subset,
                   const SvmTrainConfig& config) {
    config.validate();
    if (train.size() == 0) throw DataError("cannot train SVM on an empty dataset");
    if (!train.labeled()) throw DataError("training rows must be labeled");
    check_subset(train, subset);
    const auto totals = train.class_totals();
    if (totals[0] == 0 || totals[1] == 0)
        throw DataError("training set contains a single class; SVM needs both");

    const std::size_t d = subset.size();
    std::vector<double> w(d, 0.0);
    double c = 0.0;

    SvmModel best;
    best.weights = w;
    best.threshold = c;
    double best_objective = svm_objective(w, c, train, subset, config.lambda);
    int trace_length = 1;  // objective recorded at every checkpoint, t=0 included

    const double ball_radius = 1.0 / std::sqrt(config.lambda);
    std::vector<double> grad_w;
    double grad_c = 0.0;
    for (int t = 1; t <= config.epochs; ++t) {
        svm_objective_gradient(w, c, train, subset, config.lambda, grad_w, grad_c);

        double grad_norm = std::abs(grad_c);
        for (double g : grad_w) grad_norm += std::abs(g);
        if (grad_norm < config.tolerance) break;

        const double step = 1.0 / (config.lambda * static_cast<double>(t));
        for (std::size_t j = 0; j < d; ++j) w[j] -= step * grad_w[j];
        c -= step * grad_c;

        double norm = std::sqrt(dot(w, w));
        if (norm > ball_radius) {
            const double scale = ball_radius / norm;
            for (double& wj : w) wj *= scale;
        }

        const double objective = svm_objective(w, c, train, subset, config.lambda);
        ++trace_length;
        if (objective < best_objective) {
            best_objective = objective;
            best.weights = w;
            best.threshold = c;
        }
    }

    best.feature_subset = subset;
    best.schema_feature_names = train.schema.feature_names;
    best.config = config;
    best.objective_trace_length = trace_length;
    best.final_objective = best_objective;
    return best;
}

double decision_value(const SvmModel& model, std::span<const double> x) {
    if (x.size() != model.weights.size())
        throw DataError("point arity " + std::to_string(x.size()) +
                        " does not match weight vector length " +
                        std::to_string(model.weights.size()));
    return dot(model.weights, x) - model.threshold;
}

double decision_value(const SvmModel& model, const FeatureVector& row) {
    const auto x = model.restrict(row);
    return decision_value(model, x);
}

double hyperplane_distance(const SvmModel& model, std::span<const double> x) {
    const double norm = model.weight_norm();
    if (norm == 0.0) throw DataError("zero weight vector: distance undefined");
    return decision_value(model, x) / norm;
}

std::vector<double> project_onto_hyperplane(const SvmModel& model, std::span<const double> x) {
    const double norm_sq = dot(model.weights, model.weights);
    if (norm_sq == 0.0) throw DataError("zero weight vector: projection undefined");
    const double offset = decision_value(model, x) / norm_sq;
    std::vector<double> projected(x.begin(), x.end());
    for (std::size_t j = 0; j < projected.size(); ++j)
        projected[j] -= offset * model.weights[j];
    return projected;
}

Label predict_svm(const SvmModel& model, std::span<const double> x) {
    return decision_value(model, x) > 0.0 ? Label::Legitimate : Label::Phishing;
}

Label predict_svm(const SvmModel& model, const FeatureVector& row) {
    const auto x = model.restrict(row);
    return predict_svm(model, std::span<const double>(x));
}

}  // namespace phishml
