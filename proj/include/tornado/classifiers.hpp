// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#ifndef TORNADO_CLASSIFIERS_HPP
#define TORNADO_CLASSIFIERS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tornado/boosting.hpp"
#include "tornado/core.hpp"
#include "tornado/featurize.hpp"
#include "tornado/tree.hpp"

namespace tornado {

inline constexpr int kModelFormatVersion = 1;
inline constexpr double kDefaultThreshold = 0.5;

enum class ModelKind : std::uint8_t { gaussian_nb, decision_tree, random_forest, linear_svm, knn, adaboost };

inline constexpr std::array<ModelKind, 6> kAllModelKinds{ModelKind::gaussian_nb, ModelKind::decision_tree,
                                                         ModelKind::random_forest, ModelKind::linear_svm,
                                                         ModelKind::knn, ModelKind::adaboost};

std::string_view to_string(ModelKind kind);
std::optional<ModelKind> model_kind_from_string(std::string_view s);
/// Row label used in the ablation table, e.g. "Random Forest".
std::string_view display_name(ModelKind kind);

/// Classifier choice plus hyperparameters. Fields that do not apply to
/// `kind` are ignored and not serialized.
struct ModelSpec {
    ModelKind kind = ModelKind::random_forest;
    std::uint64_t seed = 0;

    // decision_tree / random_forest
    int n_trees = 100;
    int max_features = 0;       // 0: ceil(sqrt(d)) for the forest, all for the tree
    int max_depth = 0;          // 0: unlimited
    int min_samples_split = 2;
    bool bootstrap = true;

    // knn
    int k = 5;
    // adaboost
    int rounds = 50;
    // linear_svm
    double lambda = 1e-4;
    int epochs = 20;

    /// Throws SpecError when a hyperparameter is out of range.
    void validate() const;
    bool uses_standardizer() const { return kind == ModelKind::linear_svm || kind == ModelKind::knn; }

    bool operator==(const ModelSpec&) const = default;
};

/// The default spec of every kind, in ablation-table order.
std::vector<ModelSpec> default_specs(std::uint64_t seed);

struct GaussianNbParams {
    std::array<double, 2> priors{};                     // [null_event, tornado]
    std::array<std::vector<double>, 2> means;
    std::array<std::vector<double>, 2> variances;
};

struct TreeModel {
    Tree tree;
};

struct ForestModel {
    std::vector<Tree> trees;
};

struct SvmModel {
    std::vector<double> weights;
    double bias = 0.0;
};

struct KnnModel {
    int k = 5;
    FeatureMatrix rows;          // standardized training rows
    std::vector<Label> labels;
};

using ModelParams = std::variant<GaussianNbParams, TreeModel, ForestModel, SvmModel, KnnModel, AdaBoostModel>;

struct Prediction {
    double probability = 0.0;
    Label decision = Label::null_event;
};

/// An immutable fitted classifier. predict_proba is const and safe to call
/// from several threads.
class TrainedModel {
public:
    TrainedModel(ModelSpec spec, ModelParams params, std::optional<StandardizationParams> standardizer,
                 std::size_t feature_length);

    const ModelSpec& spec() const { return spec_; }
    ModelKind kind() const { return spec_.kind; }
    const ModelParams& params() const { return params_; }
    const std::optional<StandardizationParams>& standardizer() const { return standardizer_; }
    std::size_t feature_length() const { return feature_length_; }
    int window_days() const { return static_cast<int>(feature_length_ / kFeaturesPerDay); }

    /// Probability of `tornado`, in [0, 1]. Throws LengthMismatchError.
    double predict_proba(std::span<const double> x) const;
    Prediction predict(std::span<const double> x, double threshold = kDefaultThreshold) const;

    /// Gaussian NB only: posteriors {null_event, tornado}.
    std::array<double, 2> class_posteriors(std::span<const double> x) const;

private:
    ModelSpec spec_;
    ModelParams params_;
    std::optional<StandardizationParams> standardizer_;
    std::size_t feature_length_;
};

struct FitOptions {
    /// Worker threads for forest fitting; 0 picks hardware concurrency. The
    /// fitted model does not depend on this.
    unsigned threads = 0;
};

/// Fits `spec` on raw features. SVM and k-NN fit a standardizer on `x`
/// first. Throws ShapeError, DegenerateInputError or SingleClassError.
TrainedModel fit(const ModelSpec& spec, const FeatureMatrix& x, std::span<const Label> y,
                 const FitOptions& options = {});

/// Tornado fraction among the k nearest rows of an already standardized
/// query; distance ties go to the lower training row.
double knn_proba(const KnnModel& m, std::span<const double> z);
double logistic(double v);

std::string serialize_model(const TrainedModel& m);
/// Throws VersionError or CorruptModelError.
TrainedModel deserialize_model(std::string_view bytes);

/// "<kind>-<16 hex digits>" from an FNV-1a hash of the serialized bytes.
std::string model_id(ModelKind kind, std::string_view serialized);

} // namespace tornado

#endif // TORNADO_CLASSIFIERS_HPP
