#include "phishml/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

namespace phishml {

ConfusionMatrix confusion(std::span<const Label> predictions, std::span<const Label> labels) {
    if (predictions.size() != labels.size())
        throw DataError("predictions/labels length mismatch: " +
                        std::to_string(predictions.size()) + " vs " +
                        std::to_string(labels.size()));
    if (predictions.empty()) throw DataError("cannot build a confusion matrix from no rows");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const bool actual_phishing = labels[i] == Label::Phishing;
        const bool predicted_phishing = predictions[i] == Label::Phishing;
        if (actual_phishing && predicted_phishing) ++cm.tp;
        else if (!actual_phishing && predicted_phishing) ++cm.fp;
        else if (actual_phishing && !predicted_phishing) ++cm.fn;
        else ++cm.tn;
    }
    return cm;
}

ScalarMetrics scalar_metrics(const ConfusionMatrix& cm) {
    const long total = cm.total();
    if (total == 0) throw DataError("empty confusion matrix");
    ScalarMetrics m;
    m.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(total);
    m.error_rate = 1.0 - m.accuracy;
    if (cm.tp + cm.fn > 0) {
        m.tp_rate = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
    } else {
        m.tp_rate_defined = false;
    }
    m.recall = m.tp_rate;
    if (cm.fp + cm.tn > 0) {
        m.fp_rate = static_cast<double>(cm.fp) / static_cast<double>(cm.fp + cm.tn);
    } else {
        m.fp_rate_defined = false;
    }
    if (cm.tp + cm.fp > 0) {
        m.precision = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp);
    } else {
        m.precision_defined = false;
    }
    return m;
}

RocCurve roc(std::span<const double> scores, std::span<const Label> labels) {
    if (scores.size() != labels.size())
        throw DataError("scores/labels length mismatch");
    long n_pos = 0, n_neg = 0;
    for (Label l : labels) (l == Label::Phishing ? n_pos : n_neg)++;
    if (n_pos == 0 || n_neg == 0)
        throw DataError("ROC needs both classes present");

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] > scores[b];
    });

    RocCurve curve;
    curve.points.push_back(RocPoint{0.0, 0.0, std::numeric_limits<double>::infinity()});
    long tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        const double threshold = scores[order[i]];
        // Consume the whole tie group before emitting a point.
        while (i < order.size() && scores[order[i]] == threshold) {
            (labels[order[i]] == Label::Phishing ? tp : fp)++;
            ++i;
        }
        curve.points.push_back(RocPoint{static_cast<double>(fp) / static_cast<double>(n_neg),
                                        static_cast<double>(tp) / static_cast<double>(n_pos),
                                        threshold});
    }

    double auc = 0.0;
    for (std::size_t k = 1; k < curve.points.size(); ++k) {
        const auto& a = curve.points[k - 1];
        const auto& b = curve.points[k];
        auc += (b.fpr - a.fpr) * (a.tpr + b.tpr) * 0.5;
    }
    curve.auc = auc;
    return curve;
}

double auc_by_pair_counting(std::span<const double> scores, std::span<const Label> labels) {
    double wins = 0.0;
    long pairs = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != Label::Phishing) continue;
        for (std::size_t j = 0; j < labels.size(); ++j) {
            if (labels[j] != Label::Legitimate) continue;
            ++pairs;
            if (scores[i] > scores[j]) wins += 1.0;
            else if (scores[i] == scores[j]) wins += 0.5;
        }
    }
    if (pairs == 0) throw DataError("AUC pair counting needs both classes present");
    return wins / static_cast<double>(pairs);
}

namespace {

constexpr double kSlopeCap = 50.0;
constexpr int kMaxCalibrationIterations = 100;

struct LogisticFit {
    double a = 0.0;
    double b = 0.0;
    double log_likelihood = 0.0;
    bool converged = false;
    int iterations = 0;
};

double log_sigmoid(double z) {
    // Numerically stable log(sigma(z)).
    if (z >= 0.0) return -std::log1p(std::exp(-z));
    return z - std::log1p(std::exp(z));
}

double logistic_log_likelihood(double a, double b, std::span<const double> s,
                               std::span<const Label> labels) {
    double ll = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double z = a * s[i] + b;
        ll += labels[i] == Label::Phishing ? log_sigmoid(z) : log_sigmoid(-z);
    }
    return ll;
}

// Newton ascent of the concave log-likelihood with backtracking; the slope is
// boxed into [-kSlopeCap, kSlopeCap]. When the cap binds, b is re-optimized
// alone so the capped fit is still the best available.
LogisticFit fit_logistic(std::span<const double> s, std::span<const Label> labels,
                         double prevalence) {
    LogisticFit fit;
    fit.b = std::log(prevalence / (1.0 - prevalence));
    fit.log_likelihood = logistic_log_likelihood(fit.a, fit.b, s, labels);

    for (int it = 0; it < kMaxCalibrationIterations; ++it) {
        fit.iterations = it + 1;
        double ga = 0.0, gb = 0.0, haa = 0.0, hab = 0.0, hbb = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double z = fit.a * s[i] + fit.b;
            const double p = 1.0 / (1.0 + std::exp(-z));
            const double y = labels[i] == Label::Phishing ? 1.0 : 0.0;
            const double r = y - p;
            ga += r * s[i];
            gb += r;
            const double w = p * (1.0 - p);
            haa += w * s[i] * s[i];
            hab += w * s[i];
            hbb += w;
        }
        const double det = haa * hbb - hab * hab;
        double da, db;
        if (std::abs(det) < 1e-12) {
            da = ga / std::max(haa, 1e-12);
            db = gb / std::max(hbb, 1e-12);
        } else {
            da = (hbb * ga - hab * gb) / det;
            db = (haa * gb - hab * ga) / det;
        }

        double step = 1.0;
        double next_ll = -std::numeric_limits<double>::infinity();
        double na = fit.a, nb = fit.b;
        for (int bt = 0; bt < 30; ++bt) {
            na = std::clamp(fit.a + step * da, -kSlopeCap, kSlopeCap);
            nb = fit.b + step * db;
            next_ll = logistic_log_likelihood(na, nb, s, labels);
            if (next_ll >= fit.log_likelihood) break;
            step *= 0.5;
        }
        const double gain = next_ll - fit.log_likelihood;
        fit.a = na;
        fit.b = nb;
        fit.log_likelihood = next_ll;
        if (gain >= 0.0 && gain < 1e-10) {
            fit.converged = true;
            break;
        }
    }
    return fit;
}

}  // namespace

PseudoR2 pseudo_r2(std::span<const double> scores, std::span<const Label> labels) {
    if (scores.size() != labels.size()) throw DataError("scores/labels length mismatch");
    const std::size_t n = scores.size();
    long n_pos = 0;
    for (Label l : labels)
        if (l == Label::Phishing) ++n_pos;
    if (n == 0 || n_pos == 0 || n_pos == static_cast<long>(n))
        throw DataError("pseudo-R^2 needs both classes present");

    PseudoR2 out;
    double mean = 0.0;
    for (double s : scores) mean += s;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double s : scores) var += (s - mean) * (s - mean);
    var /= static_cast<double>(n);
    // Constant scores collapse the calibration to the null model. Test min ==
    // max rather than var == 0: the computed mean of n equal values need not
    // equal them exactly, leaving a spurious nonzero variance.
    const auto [mn, mx] = std::minmax_element(scores.begin(), scores.end());
    if (*mn == *mx || var <= 0.0) {
        out.value = 0.0;
        out.converged = true;
        out.defined = false;
        return out;
    }
    const double sd = std::sqrt(var);
    std::vector<double> standardized(n);
    for (std::size_t i = 0; i < n; ++i) standardized[i] = (scores[i] - mean) / sd;

    const double prevalence = static_cast<double>(n_pos) / static_cast<double>(n);
    const LogisticFit fit = fit_logistic(standardized, labels, prevalence);

    const double null_ll = static_cast<double>(n_pos) * std::log(prevalence) +
                           static_cast<double>(static_cast<long>(n) - n_pos) *
                               std::log(1.0 - prevalence);
    out.value = 1.0 - fit.log_likelihood / null_ll;
    out.converged = fit.converged;
    out.iterations = fit.iterations;
    if (out.value < 0.0) out.value = 0.0;  // guard rounding; the fit dominates the null
    return out;
}

ModelEvaluation evaluate_model(const PredictFn& predict, const ScoreFn& score,
                               const Dataset& test, double train_seconds,
                               const std::string& model_kind) {
    if (test.size() == 0) throw DataError("cannot evaluate on an empty test set");
    if (!test.labeled()) throw DataError("test rows must be labeled");

    ModelEvaluation ev;
    ev.model_kind = model_kind;
    ev.train_seconds = train_seconds;

    const auto start = std::chrono::steady_clock::now();
    std::vector<Label> predictions;
    std::vector<Label> labels;
    std::vector<double> phishing_scores;  // negated: ROC's positive class is phishing
    predictions.reserve(test.size());
    labels.reserve(test.size());
    phishing_scores.reserve(test.size());
    for (const auto& row : test.rows) {
        predictions.push_back(predict(row));
        phishing_scores.push_back(-score(row));
        labels.push_back(*row.label);
    }
    ev.cm = confusion(predictions, labels);
    ev.metrics = scalar_metrics(ev.cm);

    const auto totals = test.class_totals();
    if (totals[0] > 0 && totals[1] > 0) {
        ev.roc = roc(phishing_scores, labels);
        ev.r2 = pseudo_r2(phishing_scores, labels);
    } else {
        ev.roc_defined = false;
        ev.r2.defined = false;
    }
    const auto end = std::chrono::steady_clock::now();
    ev.eval_seconds = std::chrono::duration<double>(end - start).count();
    return ev;
}

std::string comparison_text(const std::vector<ModelEvaluation>& evaluations) {
    std::vector<const ModelEvaluation*> rows;
    rows.reserve(evaluations.size());
    for (const auto& ev : evaluations) rows.push_back(&ev);
    std::stable_sort(rows.begin(), rows.end(), [](const auto* a, const auto* b) {
        return a->metrics.accuracy > b->metrics.accuracy;
    });

    std::ostringstream out;
    out << std::left << std::setw(12) << "Model" << std::right << std::setw(10) << "Accuracy"
        << std::setw(9) << "TPRate" << std::setw(9) << "FPRate" << std::setw(11) << "Precision"
        << std::setw(9) << "Recall" << std::setw(8) << "Error" << std::setw(8) << "AUC"
        << std::setw(10) << "PseudoR2" << std::setw(10) << "TrainS" << std::setw(9) << "EvalS"
        << '\n';
    out << std::fixed;
    for (const auto* ev : rows) {
        out << std::left << std::setw(12) << ev->model_kind << std::right
            << std::setprecision(4) << std::setw(10) << ev->metrics.accuracy << std::setw(9)
            << ev->metrics.tp_rate << std::setw(9) << ev->metrics.fp_rate << std::setw(11)
            << ev->metrics.precision << std::setw(9) << ev->metrics.recall << std::setw(8)
            << std::setprecision(3) << ev->metrics.error_rate << std::setw(8)
            << (ev->roc_defined ? ev->roc.auc : 0.0) << std::setw(10)
            << (ev->r2.defined ? ev->r2.value : 0.0) << std::setw(10) << ev->train_seconds
            << std::setw(9) << ev->eval_seconds << '\n';
    }
    return out.str();
}

void write_roc_csv(const RocCurve& curve, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open ROC output file: " + path);
    out << "fpr,tpr,threshold\n";
    out << std::setprecision(17);
    for (const auto& p : curve.points)
        out << p.fpr << ',' << p.tpr << ',' << p.threshold << '\n';
}

}  // namespace phishml
