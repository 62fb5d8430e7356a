#ifndef PHISHML_MODEL_IO_HPP
#define PHISHML_MODEL_IO_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "phishml/hybrid.hpp"
#include "phishml/mcar.hpp"
#include "phishml/svm.hpp"
#include "phishml/tree.hpp"

namespace phishml {

enum class ModelKind { Mcar, Svm, Tree, Hybrid };

std::string model_kind_name(ModelKind kind);
ModelKind model_kind_from_name(const std::string& name);

/// Uniform handle over the four trainable models: predict, score and explain
/// without caring which kind is inside. Scores are the native orientation
/// (positive = legitimate).
struct AnyModel {
    ModelKind kind = ModelKind::Svm;
    std::variant<RuleClassifier, SvmModel, TreeModel, HybridModel> model;

    const std::vector<std::string>& schema_feature_names() const;
    Label predict(const FeatureVector& x) const;
    double score(const FeatureVector& x) const;
    /// Human-readable reason: the firing rule for rule-bearing models, the
    /// decision value or leaf probability otherwise.
    std::string explanation(const FeatureVector& x) const;
    /// The firing-rule text alone; empty for models without rules.
    std::optional<std::string> rule_text(const FeatureVector& x) const;
};

/// One rule as text: "IF URL_Length=-1 AND SFH=0 THEN PHISHING (conf 0.93, supp 0.10)".
std::string describe_rule(const Rule& rule, const std::vector<std::string>& feature_names);

/// Versioned JSON bytes. Serialization is canonical: the same model value
/// always produces identical bytes (fixed key order, no timestamps), so
/// retraining deterministically yields byte-identical files.
std::string serialize_model(const AnyModel& model);
AnyModel deserialize_model(const std::string& bytes);

void save_model(const AnyModel& model, const std::string& path);
AnyModel load_model(const std::string& path);

/// Throws DataError unless the row's arity matches the model's schema.
void check_schema_compatible(const AnyModel& model, const FeatureVector& x);
void check_schema_compatible(const AnyModel& model, const FeatureSchema& schema);

}  // namespace phishml

#endif
