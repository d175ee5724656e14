// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include "tornado/classifiers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <thread>

#include <json.hpp>

#include "tornado/errors.hpp"
#include "tornado/rng.hpp"
#include "tornado/svm.hpp"

namespace tornado {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr double kNbVarianceFactor = 1e-9;

int ceil_sqrt(std::size_t d) {
    std::size_t m = 0;
    while (m * m < d) {
        ++m;
    }
    return static_cast<int>(std::max<std::size_t>(m, 1));
}

void check_training_data(const FeatureMatrix& x, std::span<const Label> y) {
    if (x.rows() == 0) {
        throw DegenerateInputError("cannot fit on zero training rows");
    }
    if (x.cols() == 0) {
        throw ShapeError("training rows have no features");
    }
    if (y.size() != x.rows()) {
        throw ShapeError("label count " + std::to_string(y.size()) + " does not match row count " +
                         std::to_string(x.rows()));
    }
    for (double v : x.data()) {
        if (!std::isfinite(v)) {
            throw DegenerateInputError("training features contain a non-finite value");
        }
    }
    const auto pos = std::count(y.begin(), y.end(), Label::tornado);
    if (pos == 0 || static_cast<std::size_t>(pos) == y.size()) {
        throw SingleClassError("training labels contain only " +
                               std::string(to_string(pos == 0 ? Label::null_event : Label::tornado)) +
                               "; both classes are required");
    }
}

FeatureMatrix standardized(const StandardizationParams& p, const FeatureMatrix& x) {
    FeatureMatrix z(x.cols());
    for (std::size_t r = 0; r < x.rows(); ++r) {
        z.push_back(apply_standardizer(p, x.row(r)));
    }
    return z;
}

GaussianNbParams fit_gaussian_nb(const FeatureMatrix& x, std::span<const Label> y) {
    const std::size_t d = x.cols();
    GaussianNbParams p;
    std::array<std::size_t, 2> counts{};
    for (std::size_t c = 0; c < 2; ++c) {
        p.means[c].assign(d, 0.0);
        p.variances[c].assign(d, 0.0);
    }
    for (std::size_t r = 0; r < x.rows(); ++r) {
        const auto c = static_cast<std::size_t>(y[r]);
        ++counts[c];
        const auto row = x.row(r);
        for (std::size_t j = 0; j < d; ++j) {
            p.means[c][j] += row[j];
        }
    }
    for (std::size_t c = 0; c < 2; ++c) {
        for (double& m : p.means[c]) {
            m /= static_cast<double>(counts[c]);
        }
    }
    for (std::size_t r = 0; r < x.rows(); ++r) {
        const auto c = static_cast<std::size_t>(y[r]);
        const auto row = x.row(r);
        for (std::size_t j = 0; j < d; ++j) {
            const double dev = row[j] - p.means[c][j];
            p.variances[c][j] += dev * dev;
        }
    }
    // Floor: 1e-9 times the largest overall column variance.
    const StandardizationParams overall = fit_standardizer(x);
    double max_var = 0.0;
    for (double s : overall.scale) {
        if (s > kStandardizerEpsilon) {
            max_var = std::max(max_var, s * s);
        }
    }
    const double floor = max_var > 0.0 ? kNbVarianceFactor * max_var : kNbVarianceFactor;
    for (std::size_t c = 0; c < 2; ++c) {
        for (double& v : p.variances[c]) {
            v = std::max(v / static_cast<double>(counts[c]), floor);
        }
        p.priors[c] = static_cast<double>(counts[c]) / static_cast<double>(x.rows());
    }
    return p;
}

std::array<double, 2> nb_log_joint(const GaussianNbParams& p, std::span<const double> x) {
    std::array<double, 2> out{};
    for (std::size_t c = 0; c < 2; ++c) {
        double l = std::log(p.priors[c]);
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double var = p.variances[c][j];
            const double dev = x[j] - p.means[c][j];
            l += -0.5 * std::log(2.0 * std::numbers::pi * var) - dev * dev / (2.0 * var);
        }
        out[c] = l;
    }
    return out;
}

ForestModel fit_forest(const ModelSpec& spec, const FeatureMatrix& x, std::span<const Label> y,
                       const FitOptions& options) {
    const ColumnMatrix columns(x);
    TreeParams params;
    params.max_depth = spec.max_depth;
    params.min_samples_split = spec.min_samples_split;
    params.max_features = spec.max_features > 0 ? spec.max_features : ceil_sqrt(x.cols());

    ForestModel forest;
    forest.trees.resize(static_cast<std::size_t>(spec.n_trees));
    auto grow_one = [&](std::size_t t) {
        Rng rng(derive_seed(spec.seed, t));
        std::vector<std::size_t> rows;
        if (spec.bootstrap) {
            rows = bootstrap_sample(rng, x.rows());
        } else {
            rows.resize(x.rows());
            std::iota(rows.begin(), rows.end(), std::size_t{0});
        }
        forest.trees[t] = grow_tree(columns, y, std::move(rows), params, &rng);
    };

    unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
    threads = std::min<unsigned>(threads, static_cast<unsigned>(forest.trees.size()));
    if (threads <= 1) {
        for (std::size_t t = 0; t < forest.trees.size(); ++t) {
            grow_one(t);
        }
        return forest;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t t = next++; t < forest.trees.size(); t = next++) {
                    grow_one(t);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return forest;
}

// --- serialization helpers -------------------------------------------------

ordered_json spec_to_json(const ModelSpec& s) {
    ordered_json j;
    j["kind"] = std::string(to_string(s.kind));
    j["seed"] = s.seed;
    switch (s.kind) {
    case ModelKind::random_forest:
        j["n_trees"] = s.n_trees;
        j["bootstrap"] = s.bootstrap;
        [[fallthrough]];
    case ModelKind::decision_tree:
        j["max_features"] = s.max_features;
        j["max_depth"] = s.max_depth;
        j["min_samples_split"] = s.min_samples_split;
        break;
    case ModelKind::knn:
        j["k"] = s.k;
        break;
    case ModelKind::adaboost:
        j["rounds"] = s.rounds;
        break;
    case ModelKind::linear_svm:
        j["lambda"] = s.lambda;
        j["epochs"] = s.epochs;
        break;
    case ModelKind::gaussian_nb:
        break;
    }
    return j;
}

ModelSpec spec_from_json(const json& j) {
    ModelSpec s;
    auto kind = model_kind_from_string(j.at("kind").get<std::string>());
    if (!kind) {
        throw CorruptModelError("unknown model kind");
    }
    s.kind = *kind;
    s.seed = j.at("seed").get<std::uint64_t>();
    switch (s.kind) {
    case ModelKind::random_forest:
        s.n_trees = j.at("n_trees").get<int>();
        s.bootstrap = j.at("bootstrap").get<bool>();
        [[fallthrough]];
    case ModelKind::decision_tree:
        s.max_features = j.at("max_features").get<int>();
        s.max_depth = j.at("max_depth").get<int>();
        s.min_samples_split = j.at("min_samples_split").get<int>();
        break;
    case ModelKind::knn:
        s.k = j.at("k").get<int>();
        break;
    case ModelKind::adaboost:
        s.rounds = j.at("rounds").get<int>();
        break;
    case ModelKind::linear_svm:
        s.lambda = j.at("lambda").get<double>();
        s.epochs = j.at("epochs").get<int>();
        break;
    case ModelKind::gaussian_nb:
        break;
    }
    return s;
}

ordered_json tree_to_json(const Tree& t) {
    ordered_json j;
    std::vector<std::int32_t> feature, left, right;
    std::vector<double> threshold;
    std::vector<std::uint32_t> positives, negatives;
    for (const auto& n : t.nodes) {
        feature.push_back(n.feature);
        threshold.push_back(n.threshold);
        left.push_back(n.left);
        right.push_back(n.right);
        positives.push_back(n.positives);
        negatives.push_back(n.negatives);
    }
    j["feature"] = feature;
    j["threshold"] = threshold;
    j["left"] = left;
    j["right"] = right;
    j["positives"] = positives;
    j["negatives"] = negatives;
    return j;
}

Tree tree_from_json(const json& j, std::size_t feature_length) {
    const auto feature = j.at("feature").get<std::vector<std::int32_t>>();
    const auto threshold = j.at("threshold").get<std::vector<double>>();
    const auto left = j.at("left").get<std::vector<std::int32_t>>();
    const auto right = j.at("right").get<std::vector<std::int32_t>>();
    const auto positives = j.at("positives").get<std::vector<std::uint32_t>>();
    const auto negatives = j.at("negatives").get<std::vector<std::uint32_t>>();
    const std::size_t n = feature.size();
    if (n == 0 || threshold.size() != n || left.size() != n || right.size() != n || positives.size() != n ||
        negatives.size() != n) {
        throw CorruptModelError("tree arrays are empty or of unequal length");
    }
    Tree t;
    t.nodes.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        TreeNode& node = t.nodes[i];
        node.feature = feature[i];
        node.threshold = threshold[i];
        node.left = left[i];
        node.right = right[i];
        node.positives = positives[i];
        node.negatives = negatives[i];
        if (node.positives + node.negatives == 0) {
            throw CorruptModelError("tree node without samples");
        }
        if (!node.is_leaf()) {
            // Children always follow their parent, which rules out cycles.
            const auto in_range = [&](std::int32_t c) {
                return c > static_cast<std::int32_t>(i) && static_cast<std::size_t>(c) < n;
            };
            if (static_cast<std::size_t>(node.feature) >= feature_length || !in_range(node.left) ||
                !in_range(node.right)) {
                throw CorruptModelError("tree node " + std::to_string(i) + " has invalid links");
            }
        }
    }
    return t;
}

void require_length(const std::vector<double>& v, std::size_t n, const char* what) {
    if (v.size() != n) {
        throw CorruptModelError(std::string(what) + " has " + std::to_string(v.size()) + " entries, expected " +
                                std::to_string(n));
    }
}

ordered_json params_to_json(const ModelParams& params) {
    ordered_json j;
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GaussianNbParams>) {
                j["priors"] = p.priors;
                j["means"] = p.means;
                j["variances"] = p.variances;
            } else if constexpr (std::is_same_v<T, TreeModel>) {
                j["tree"] = tree_to_json(p.tree);
            } else if constexpr (std::is_same_v<T, ForestModel>) {
                j["trees"] = ordered_json::array();
                for (const auto& t : p.trees) {
                    j["trees"].push_back(tree_to_json(t));
                }
            } else if constexpr (std::is_same_v<T, SvmModel>) {
                j["weights"] = p.weights;
                j["bias"] = p.bias;
            } else if constexpr (std::is_same_v<T, KnnModel>) {
                j["k"] = p.k;
                ordered_json rows = ordered_json::array();
                for (std::size_t r = 0; r < p.rows.rows(); ++r) {
                    const auto row = p.rows.row(r);
                    rows.push_back(std::vector<double>(row.begin(), row.end()));
                }
                j["rows"] = std::move(rows);
                std::vector<int> labels;
                for (Label l : p.labels) {
                    labels.push_back(static_cast<int>(l));
                }
                j["labels"] = labels;
            } else if constexpr (std::is_same_v<T, AdaBoostModel>) {
                std::vector<std::size_t> features;
                std::vector<double> thresholds;
                std::vector<int> polarities;
                for (const auto& s : p.stumps) {
                    features.push_back(s.feature);
                    thresholds.push_back(s.threshold);
                    polarities.push_back(s.polarity);
                }
                j["features"] = features;
                j["thresholds"] = thresholds;
                j["polarities"] = polarities;
                j["alphas"] = p.alphas;
                j["errors"] = p.errors;
            }
        },
        params);
    return j;
}

ModelParams params_from_json(ModelKind kind, const json& j, std::size_t d) {
    switch (kind) {
    case ModelKind::gaussian_nb: {
        GaussianNbParams p;
        p.priors = j.at("priors").get<std::array<double, 2>>();
        p.means = j.at("means").get<std::array<std::vector<double>, 2>>();
        p.variances = j.at("variances").get<std::array<std::vector<double>, 2>>();
        for (std::size_t c = 0; c < 2; ++c) {
            require_length(p.means[c], d, "means");
            require_length(p.variances[c], d, "variances");
            if (!(p.priors[c] > 0.0) || !(p.priors[c] < 1.0)) {
                throw CorruptModelError("class prior outside (0, 1)");
            }
            for (double v : p.variances[c]) {
                if (!(v > 0.0)) {
                    throw CorruptModelError("non-positive variance");
                }
            }
        }
        return p;
    }
    case ModelKind::decision_tree:
        return TreeModel{tree_from_json(j.at("tree"), d)};
    case ModelKind::random_forest: {
        ForestModel f;
        for (const auto& t : j.at("trees")) {
            f.trees.push_back(tree_from_json(t, d));
        }
        if (f.trees.empty()) {
            throw CorruptModelError("forest has no trees");
        }
        return f;
    }
    case ModelKind::linear_svm: {
        SvmModel m;
        m.weights = j.at("weights").get<std::vector<double>>();
        m.bias = j.at("bias").get<double>();
        require_length(m.weights, d, "weights");
        return m;
    }
    case ModelKind::knn: {
        KnnModel m;
        m.k = j.at("k").get<int>();
        m.rows = FeatureMatrix(d);
        for (const auto& row : j.at("rows")) {
            const auto values = row.get<std::vector<double>>();
            require_length(values, d, "knn row");
            m.rows.push_back(values);
        }
        for (int l : j.at("labels").get<std::vector<int>>()) {
            if (l != 0 && l != 1) {
                throw CorruptModelError("knn label must be 0 or 1");
            }
            m.labels.push_back(static_cast<Label>(l));
        }
        if (m.k < 1 || m.labels.size() != m.rows.rows() || m.labels.empty()) {
            throw CorruptModelError("knn rows, labels and k are inconsistent");
        }
        return m;
    }
    case ModelKind::adaboost: {
        AdaBoostModel m;
        const auto features = j.at("features").get<std::vector<std::size_t>>();
        const auto thresholds = j.at("thresholds").get<std::vector<double>>();
        const auto polarities = j.at("polarities").get<std::vector<int>>();
        m.alphas = j.at("alphas").get<std::vector<double>>();
        m.errors = j.at("errors").get<std::vector<double>>();
        const std::size_t n = features.size();
        if (thresholds.size() != n || polarities.size() != n || m.alphas.size() != n || m.errors.size() != n) {
            throw CorruptModelError("adaboost arrays of unequal length");
        }
        for (std::size_t t = 0; t < n; ++t) {
            if (features[t] >= d || (polarities[t] != 1 && polarities[t] != -1)) {
                throw CorruptModelError("invalid adaboost stump");
            }
            m.stumps.push_back(Stump{features[t], thresholds[t], polarities[t]});
        }
        return m;
    }
    }
    throw CorruptModelError("unknown model kind");
}

} // namespace

std::string_view to_string(ModelKind kind) {
    switch (kind) {
    case ModelKind::gaussian_nb: return "gaussian_nb";
    case ModelKind::decision_tree: return "decision_tree";
    case ModelKind::random_forest: return "random_forest";
    case ModelKind::linear_svm: return "linear_svm";
    case ModelKind::knn: return "knn";
    case ModelKind::adaboost: return "adaboost";
    }
    return "unknown";
}

std::optional<ModelKind> model_kind_from_string(std::string_view s) {
    for (ModelKind k : kAllModelKinds) {
        if (to_string(k) == s) {
            return k;
        }
    }
    return std::nullopt;
}

std::string_view display_name(ModelKind kind) {
    switch (kind) {
    case ModelKind::gaussian_nb: return "Gaussian Classifier";
    case ModelKind::decision_tree: return "Decision Tree";
    case ModelKind::random_forest: return "Random Forest";
    case ModelKind::linear_svm: return "SVM";
    case ModelKind::knn: return "K-nearest Neighbors Classifier";
    case ModelKind::adaboost: return "AdaBoost Classifier";
    }
    return "Unknown";
}

void ModelSpec::validate() const {
    auto fail = [](const std::string& msg) { throw SpecError("invalid model spec: " + msg); };
    if (n_trees < 1) fail("n_trees must be >= 1");
    if (max_features < 0) fail("max_features must be >= 0");
    if (max_depth < 0) fail("max_depth must be >= 0");
    if (min_samples_split < 2) fail("min_samples_split must be >= 2");
    if (k < 1) fail("k must be >= 1");
    if (rounds < 1) fail("rounds must be >= 1");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) fail("lambda must be > 0");
    if (epochs < 1) fail("epochs must be >= 1");
}

std::vector<ModelSpec> default_specs(std::uint64_t seed) {
    std::vector<ModelSpec> out;
    for (ModelKind k : kAllModelKinds) {
        ModelSpec s;
        s.kind = k;
        s.seed = seed;
        out.push_back(s);
    }
    return out;
}

double logistic(double v) {
    if (v >= 0.0) {
        return 1.0 / (1.0 + std::exp(-v));
    }
    const double e = std::exp(v);
    return e / (1.0 + e);
}

double knn_proba(const KnnModel& m, std::span<const double> z) {
    const std::size_t n = m.rows.rows();
    std::vector<std::pair<double, std::size_t>> dist(n);
    for (std::size_t r = 0; r < n; ++r) {
        const auto row = m.rows.row(r);
        double s = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j) {
            const double d = row[j] - z[j];
            s += d * d;
        }
        dist[r] = {s, r};
    }
    const std::size_t k = std::min(static_cast<std::size_t>(m.k), n);
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
    std::size_t pos = 0;
    for (std::size_t i = 0; i < k; ++i) {
        pos += m.labels[dist[i].second] == Label::tornado ? 1 : 0;
    }
    return static_cast<double>(pos) / static_cast<double>(k);
}

TrainedModel::TrainedModel(ModelSpec spec, ModelParams params, std::optional<StandardizationParams> standardizer,
                           std::size_t feature_length)
    : spec_(spec), params_(std::move(params)), standardizer_(std::move(standardizer)),
      feature_length_(feature_length) {}

double TrainedModel::predict_proba(std::span<const double> x) const {
    if (x.size() != feature_length_) {
        throw LengthMismatchError(feature_length_, x.size());
    }
    std::vector<double> z;
    if (standardizer_) {
        z = apply_standardizer(*standardizer_, x);
        x = z;
    }
    const double p = std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, GaussianNbParams>) {
                return class_posteriors(x)[1];
            } else if constexpr (std::is_same_v<T, TreeModel>) {
                return m.tree.predict_proba(x);
            } else if constexpr (std::is_same_v<T, ForestModel>) {
                double sum = 0.0;
                for (const auto& t : m.trees) {
                    sum += t.predict_proba(x);
                }
                return sum / static_cast<double>(m.trees.size());
            } else if constexpr (std::is_same_v<T, SvmModel>) {
                double s = m.bias;
                for (std::size_t j = 0; j < x.size(); ++j) {
                    s += m.weights[j] * x[j];
                }
                return logistic(s);
            } else if constexpr (std::is_same_v<T, KnnModel>) {
                return knn_proba(m, x);
            } else {
                return logistic(m.margin(x));
            }
        },
        params_);
    return std::clamp(p, 0.0, 1.0);
}

Prediction TrainedModel::predict(std::span<const double> x, double threshold) const {
    const double p = predict_proba(x);
    return {p, p >= threshold ? Label::tornado : Label::null_event};
}

std::array<double, 2> TrainedModel::class_posteriors(std::span<const double> x) const {
    const auto* nb = std::get_if<GaussianNbParams>(&params_);
    if (nb == nullptr) {
        throw Error("class_posteriors is only defined for gaussian_nb");
    }
    if (x.size() != feature_length_) {
        throw LengthMismatchError(feature_length_, x.size());
    }
    const auto l = nb_log_joint(*nb, x);
    return {logistic(l[0] - l[1]), logistic(l[1] - l[0])};
}

TrainedModel fit(const ModelSpec& spec, const FeatureMatrix& x, std::span<const Label> y, const FitOptions& options) {
    spec.validate();
    check_training_data(x, y);
    switch (spec.kind) {
    case ModelKind::gaussian_nb:
        return TrainedModel(spec, fit_gaussian_nb(x, y), std::nullopt, x.cols());
    case ModelKind::decision_tree: {
        const ColumnMatrix columns(x);
        TreeParams params{spec.max_depth, spec.min_samples_split, spec.max_features};
        std::vector<std::size_t> rows(x.rows());
        std::iota(rows.begin(), rows.end(), std::size_t{0});
        Rng rng(derive_seed(spec.seed, 0));
        return TrainedModel(spec, TreeModel{grow_tree(columns, y, std::move(rows), params, &rng)}, std::nullopt,
                            x.cols());
    }
    case ModelKind::random_forest:
        return TrainedModel(spec, fit_forest(spec, x, y, options), std::nullopt, x.cols());
    case ModelKind::linear_svm: {
        auto st = fit_standardizer(x);
        const FeatureMatrix z = standardized(st, x);
        SvmFit svm = svm_train(spec.lambda, spec.epochs, spec.seed, z, y);
        return TrainedModel(spec, SvmModel{std::move(svm.weights), svm.bias}, std::move(st), x.cols());
    }
    case ModelKind::knn: {
        auto st = fit_standardizer(x);
        KnnModel m{spec.k, standardized(st, x), std::vector<Label>(y.begin(), y.end())};
        return TrainedModel(spec, std::move(m), std::move(st), x.cols());
    }
    case ModelKind::adaboost:
        return TrainedModel(spec, train_adaboost(x, y, spec.rounds), std::nullopt, x.cols());
    }
    throw SpecError("unknown model kind");
}

std::string serialize_model(const TrainedModel& m) {
    ordered_json j;
    j["format_version"] = kModelFormatVersion;
    j["kind"] = std::string(to_string(m.kind()));
    j["spec"] = spec_to_json(m.spec());
    j["params"] = params_to_json(m.params());
    if (m.standardizer()) {
        j["standardizer"] = {{"mean", m.standardizer()->mean}, {"scale", m.standardizer()->scale}};
    } else {
        j["standardizer"] = nullptr;
    }
    j["feature_length"] = m.feature_length();
    return j.dump();
}

TrainedModel deserialize_model(std::string_view bytes) {
    json j;
    try {
        j = json::parse(bytes.begin(), bytes.end());
    } catch (const json::parse_error& e) {
        throw CorruptModelError("model file is not valid JSON: " + std::string(e.what()));
    }
    if (!j.is_object() || !j.contains("format_version") || !j["format_version"].is_number_integer()) {
        throw CorruptModelError("model file lacks an integer format_version");
    }
    const auto version = j["format_version"].get<std::int64_t>();
    if (version != kModelFormatVersion) {
        throw VersionError(version);
    }
    try {
        const ModelSpec spec = spec_from_json(j.at("spec"));
        if (j.at("kind").get<std::string>() != to_string(spec.kind)) {
            throw CorruptModelError("kind does not match spec.kind");
        }
        try {
            spec.validate();
        } catch (const SpecError& e) {
            throw CorruptModelError(e.what());
        }
        const auto d = j.at("feature_length").get<std::size_t>();
        if (d == 0) {
            throw CorruptModelError("feature_length must be positive");
        }
        std::optional<StandardizationParams> st;
        const json& js = j.at("standardizer");
        if (!js.is_null()) {
            StandardizationParams p;
            p.mean = js.at("mean").get<std::vector<double>>();
            p.scale = js.at("scale").get<std::vector<double>>();
            require_length(p.mean, d, "standardizer mean");
            require_length(p.scale, d, "standardizer scale");
            for (double s : p.scale) {
                if (!(s > 0.0)) {
                    throw CorruptModelError("standardizer scale must be positive");
                }
            }
            st = std::move(p);
        }
        if (st.has_value() != spec.uses_standardizer()) {
            throw CorruptModelError("standardizer presence does not match model kind");
        }
        return TrainedModel(spec, params_from_json(spec.kind, j.at("params"), d), std::move(st), d);
    } catch (const json::exception& e) {
        throw CorruptModelError("malformed model file: " + std::string(e.what()));
    }
}

std::string model_id(ModelKind kind, std::string_view serialized) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : serialized) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(to_string(kind)) + "-" + buf;
}

} // namespace tornado
