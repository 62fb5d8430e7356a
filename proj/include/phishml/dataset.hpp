#ifndef PHISHML_DATASET_HPP
#define PHISHML_DATASET_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phishml/common.hpp"

namespace phishml {

/// Binary class of a website.
enum class Label : int { Phishing = 0, Legitimate = 1 };

inline constexpr int kNumClasses = 2;

inline int class_index(Label l) { return static_cast<int>(l); }
inline Label class_from_index(int i) { return i == 0 ? Label::Phishing : Label::Legitimate; }

/// SVM target: +1 for legitimate, -1 for phishing.
inline double label_sign(Label l) { return l == Label::Legitimate ? 1.0 : -1.0; }

const char* label_name(Label l);
Label label_from_name(const std::string& name);

/// Integer values a ternary feature cell may take in CSV files.
typedef std::array<bool, 3> ValueDomain;  // index 0 -> -1, 1 -> 0, 2 -> 1

inline bool domain_contains(const ValueDomain& d, int v) {
    return v >= -1 && v <= 1 && d[static_cast<std::size_t>(v + 1)];
}

/// Ordered feature names plus the per-feature value domain, read from the CSV
/// header rather than hard-coded, so any ternary dataset in this shape loads.
struct FeatureSchema {
    std::vector<std::string> feature_names;
    std::vector<ValueDomain> domains;
    std::string label_name = "Result";

    std::size_t arity() const { return feature_names.size(); }
    int feature_index(const std::string& name) const;  // -1 if absent
    void validate() const;
    bool operator==(const FeatureSchema&) const = default;
};

/// One website: ternary feature values in schema order. The label is absent
/// for vectors produced by feature extraction of an unknown site.
struct FeatureVector {
    std::vector<int> values;
    std::optional<Label> label;
};

/// Rows with implicit transaction ids 0..N-1 (the row index is the TID).
struct Dataset {
    FeatureSchema schema;
    std::vector<FeatureVector> rows;

    std::size_t size() const { return rows.size(); }
    bool labeled() const;
    std::array<std::size_t, 2> class_totals() const;
    Label majority_class() const;  // ties resolve to Phishing
    void validate() const;

    /// New dataset with the same schema and rows at `indices` (TIDs renumbered).
    Dataset subset(const std::vector<std::size_t>& indices) const;

    /// FNV-1a fingerprint over schema and cell values, for report provenance.
    std::uint64_t fingerprint() const;
};

/// How CSV label cells map to classes. The public corpus convention is the
/// default: -1 = phishing, 1 = legitimate.
struct LabelEncoding {
    int phishing = -1;
    int legitimate = 1;
};

/// Proportions of a train/validate/test split; must sum to 1.
struct SplitSpec {
    double train_fraction = 0.70;
    double validate_fraction = 0.15;
    double test_fraction = 0.15;
    std::uint32_t seed = 42;

    void validate() const;
};

struct Split {
    Dataset train;
    Dataset validate;
    Dataset test;
};

/// Parse a labeled CSV dataset. Every feature cell must be -1, 0 or 1; errors
/// name the offending row and column. Feature domains are inferred from the
/// observed values plus 0 ("suspicious" is always admissible).
Dataset load_csv(const std::string& path, const std::string& label_column = "Result",
                 const LabelEncoding& encoding = {});

/// Same format but the label column may be absent (rows get no label) --
/// the shape `extract` emits and `predict` consumes.
Dataset load_feature_csv(const std::string& path, const std::string& label_column = "Result",
                         const LabelEncoding& encoding = {});

/// Write a dataset back out; label column last. Round-trips through load_csv.
void save_csv(const Dataset& dataset, const std::string& path,
              const LabelEncoding& encoding = {});

/// Deterministic three-way split: validate/test get floor(N*fraction) rows,
/// the remainder goes to train. Membership depends only on (seed, N).
Split split(const Dataset& dataset, const SplitSpec& spec);

/// Deterministic k-fold partition; test folds cover 0..N-1 exactly and their
/// sizes differ by at most one.
std::vector<std::pair<Dataset, Dataset>> kfold(const Dataset& dataset, int k,
                                               std::uint32_t seed);

}  // namespace phishml

#endif
