// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <json.hpp>

#include "tornado/boosting.hpp"
#include "tornado/classifiers.hpp"
#include "tornado/errors.hpp"
#include "tornado/rng.hpp"
#include "tornado/svm.hpp"
#include "tornado/tree.hpp"

using namespace tornado;

namespace {

constexpr Label T = Label::tornado;
constexpr Label N = Label::null_event;

FeatureMatrix matrix(const std::vector<std::vector<double>>& rows) {
    FeatureMatrix m(rows.front().size());
    for (const auto& r : rows) {
        m.push_back(r);
    }
    return m;
}

struct Data {
    FeatureMatrix x;
    std::vector<Label> y;
};

// Random rows with a noisy linear label rule; both classes present.
Data noisy_data(std::uint64_t seed, std::size_t n, std::size_t d, bool integer_valued = false) {
    Rng rng(seed);
    Data out{FeatureMatrix(d), {}};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row(d);
        for (auto& v : row) {
            v = integer_valued ? static_cast<double>(rng.below(4)) : rng.normal();
        }
        const double s = row[0] + 0.5 * row[d - 1] + 0.7 * rng.normal();
        out.x.push_back(row);
        out.y.push_back(s > 0.0 ? T : N);
    }
    out.y[0] = T;
    out.y[1] = N;
    return out;
}

// Random labels, but identical rows always share a label.
Data consistent_data(std::uint64_t seed, std::size_t n, std::size_t d) {
    Rng rng(seed);
    Data out{FeatureMatrix(d), {}};
    std::map<std::vector<double>, Label> seen;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row(d);
        for (auto& v : row) {
            v = static_cast<double>(rng.below(5));
        }
        auto [it, inserted] = seen.emplace(row, rng.below(2) == 0 ? T : N);
        out.x.push_back(row);
        out.y.push_back(it->second);
    }
    return out;
}

std::vector<std::size_t> all_rows(std::size_t n) {
    std::vector<std::size_t> r(n);
    std::iota(r.begin(), r.end(), std::size_t{0});
    return r;
}

double sign_of(Label l) { return l == T ? 1.0 : -1.0; }

} // namespace

TEST_CASE("split search on the four-point fixture") {
    const FeatureMatrix x = matrix({{1}, {2}, {3}, {4}});
    const std::vector<Label> y{N, N, T, T};
    const ColumnMatrix cols(x);
    const std::vector<std::size_t> cand{0};
    const auto s = find_best_split(cols, y, all_rows(4), cand);
    REQUIRE(s.has_value());
    CHECK(s->feature == 0);
    CHECK(s->threshold == 2.5);
    CHECK(s->gain == doctest::Approx(0.5).epsilon(1e-15));

    const std::vector<Label> same{T, T, T, T};
    CHECK_FALSE(find_best_split(cols, same, all_rows(4), cand).has_value());
}

TEST_CASE("split ties go to the lower feature") {
    const FeatureMatrix x = matrix({{1, 1}, {2, 2}, {3, 3}, {4, 4}});
    const std::vector<Label> y{N, N, T, T};
    const ColumnMatrix cols(x);
    const std::vector<std::size_t> cand{0, 1};
    const auto s = find_best_split(cols, y, all_rows(4), cand);
    REQUIRE(s.has_value());
    CHECK(s->feature == 0);
}

TEST_CASE("unlimited tree fits consistent data exactly") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::size_t n = 20 + seed * 9;   // up to 191 rows
        const Data data = consistent_data(seed, n, 3);
        if (std::all_of(data.y.begin(), data.y.end(), [&](Label l) { return l == data.y[0]; })) {
            continue;
        }
        ModelSpec spec;
        spec.kind = ModelKind::decision_tree;
        spec.seed = seed;
        const TrainedModel m = fit(spec, data.x, data.y);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(m.predict(data.x.row(i)).decision == data.y[i]);
        }
    }
}

TEST_CASE("tree fits XOR despite zero first-split gain") {
    const FeatureMatrix x = matrix({{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    const std::vector<Label> y{N, T, T, N};
    ModelSpec spec;
    spec.kind = ModelKind::decision_tree;
    const TrainedModel m = fit(spec, x, y);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(m.predict(x.row(i)).decision == y[i]);
    }
}

TEST_CASE("tree predictions are invariant under monotone feature maps") {
    const Data data = noisy_data(3, 120, 4);
    FeatureMatrix mapped(4);
    for (std::size_t i = 0; i < data.x.rows(); ++i) {
        std::vector<double> row(data.x.row(i).begin(), data.x.row(i).end());
        for (auto& v : row) {
            v = std::exp(v) * 3.0 + 1.0;
        }
        mapped.push_back(row);
    }
    ModelSpec spec;
    spec.kind = ModelKind::decision_tree;
    spec.max_depth = 4;
    const TrainedModel a = fit(spec, data.x, data.y);
    const TrainedModel b = fit(spec, mapped, data.y);
    for (std::size_t i = 0; i < data.x.rows(); ++i) {
        CHECK(a.predict_proba(data.x.row(i)) == b.predict_proba(mapped.row(i)));
    }
}

TEST_CASE("max_depth bounds the tree") {
    const Data data = noisy_data(4, 200, 5);
    ModelSpec spec;
    spec.kind = ModelKind::decision_tree;
    spec.max_depth = 2;
    const TrainedModel m = fit(spec, data.x, data.y);
    CHECK(std::get<TreeModel>(m.params()).tree.depth() <= 2);
}

TEST_CASE("gaussian nb fit and closed-form posteriors") {
    const FeatureMatrix x = matrix({{0}, {2}, {4}, {6}});
    const std::vector<Label> y{N, N, T, T};
    ModelSpec spec;
    spec.kind = ModelKind::gaussian_nb;
    const TrainedModel m = fit(spec, x, y);
    const auto& p = std::get<GaussianNbParams>(m.params());
    CHECK(p.priors[0] == 0.5);
    CHECK(p.priors[1] == 0.5);
    CHECK(p.means[0][0] == 1.0);
    CHECK(p.means[1][0] == 5.0);
    CHECK(p.variances[0][0] == 1.0);
    CHECK(p.variances[1][0] == 1.0);

    const std::vector<double> three{3.0};
    CHECK(m.predict_proba(three) == 0.5);

    // x = 1: N(1; 5, 1) / N(1; 1, 1) = exp(-8), so P(tornado) = 1 / (1 + e^8).
    const std::vector<double> one{1.0};
    const double gauss_t = std::exp(-0.5 * 16.0) / std::sqrt(2.0 * M_PI);
    const double gauss_n = 1.0 / std::sqrt(2.0 * M_PI);
    const double want = 0.5 * gauss_t / (0.5 * gauss_t + 0.5 * gauss_n);
    CHECK(std::abs(m.predict_proba(one) - want) <= 1e-9);
    CHECK(std::abs(want - 1.0 / (1.0 + std::exp(8.0))) <= 1e-15);
    const auto post = m.class_posteriors(one);
    CHECK(std::abs(post[0] + post[1] - 1.0) <= 1e-12);
}

TEST_CASE("gaussian nb variance floor keeps constant features finite") {
    const FeatureMatrix x = matrix({{0, 1}, {2, 1}, {4, 1}, {6, 1}});
    const std::vector<Label> y{N, N, T, T};
    ModelSpec spec;
    spec.kind = ModelKind::gaussian_nb;
    const TrainedModel m = fit(spec, x, y);
    const std::vector<double> q{3.0, 1.0};
    CHECK(m.predict_proba(q) == 0.5);
    const std::vector<double> off{3.0, 1.5};
    CHECK(std::isfinite(m.predict_proba(off)));
}

TEST_CASE("knn matches exhaustive search") {
    const Data data = noisy_data(12, 150, 3, true);   // integer grid: many distance ties
    for (int k : {1, 5, 7}) {
        ModelSpec spec;
        spec.kind = ModelKind::knn;
        spec.k = k;
        const TrainedModel m = fit(spec, data.x, data.y);
        const auto& knn = std::get<KnnModel>(m.params());
        Rng rng(99);
        for (int q = 0; q < 100; ++q) {
            std::vector<double> x(3);
            for (auto& v : x) {
                v = static_cast<double>(rng.below(4)) + (q % 3 == 0 ? 0.0 : 0.5 * rng.uniform());
            }
            const auto z = apply_standardizer(*m.standardizer(), x);
            std::vector<std::pair<double, std::size_t>> all;
            for (std::size_t i = 0; i < knn.rows.rows(); ++i) {
                double s = 0.0;
                for (std::size_t j = 0; j < 3; ++j) {
                    s += (knn.rows(i, j) - z[j]) * (knn.rows(i, j) - z[j]);
                }
                all.emplace_back(s, i);
            }
            std::sort(all.begin(), all.end());
            int pos = 0;
            for (int i = 0; i < k; ++i) {
                pos += data.y[all[static_cast<std::size_t>(i)].second] == T ? 1 : 0;
            }
            CHECK(m.predict_proba(x) == static_cast<double>(pos) / k);
        }
    }
}

TEST_CASE("knn k=1 on a stored tornado row") {
    const Data data = noisy_data(13, 40, 3);
    ModelSpec spec;
    spec.kind = ModelKind::knn;
    spec.k = 1;
    const TrainedModel m = fit(spec, data.x, data.y);
    CHECK(m.predict_proba(data.x.row(0)) == 1.0);
    CHECK(m.predict_proba(data.x.row(1)) == 0.0);

    spec.k = 1000;   // clamped to n
    const TrainedModel all = fit(spec, data.x, data.y);
    const double frac = static_cast<double>(std::count(data.y.begin(), data.y.end(), T)) / 40.0;
    CHECK(all.predict_proba(data.x.row(5)) == doctest::Approx(frac).epsilon(1e-15));
}

TEST_CASE("adaboost: separable data needs one stump") {
    const FeatureMatrix x = matrix({{1}, {2}, {3}, {4}});
    const std::vector<Label> y{N, N, T, T};
    const AdaBoostModel m = train_adaboost(x, y, 10);
    REQUIRE(m.stumps.size() == 1);
    CHECK(m.alphas[0] > 5.0);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK((m.margin(x.row(i)) > 0.0) == (y[i] == T));
    }
}

TEST_CASE("adaboost: XOR stops at error 0.5") {
    const FeatureMatrix x = matrix({{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    const std::vector<Label> y{N, T, T, N};
    const StumpSearch search(x);
    const std::vector<double> w(4, 0.25);
    const auto best = search.best(y, w);
    REQUIRE(best.has_value());
    CHECK(best->error == 0.5);
    CHECK_FALSE(adaboost_round(search, y, w).has_value());
    CHECK(train_adaboost(x, y, 10).stumps.empty());
}

TEST_CASE("adaboost weights and training-error bound") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Data data = noisy_data(100 + seed, 80, 4);
        const std::size_t n = data.x.rows();
        const StumpSearch search(data.x);
        std::vector<double> w(n, 1.0 / static_cast<double>(n));
        AdaBoostModel model;
        double bound = 1.0;
        for (int t = 0; t < 25; ++t) {
            const auto round = adaboost_round(search, data.y, w);
            if (!round) {
                break;
            }
            CHECK(std::abs(std::accumulate(round->weights.begin(), round->weights.end(), 0.0) - 1.0) <= 1e-12);
            const double eps = std::clamp(round->error, kBoostErrorFloor, 0.5 - kBoostErrorFloor);
            bound *= 2.0 * std::sqrt(eps * (1.0 - eps));
            model.stumps.push_back(round->stump);
            model.alphas.push_back(round->alpha);
            model.errors.push_back(round->error);
            w = round->weights;

            std::size_t wrong = 0;
            for (std::size_t i = 0; i < n; ++i) {
                wrong += sign_of(data.y[i]) * model.margin(data.x.row(i)) <= 0.0 ? 1 : 0;
            }
            CHECK(static_cast<double>(wrong) / static_cast<double>(n) <= bound + 1e-12);
        }
        CHECK_FALSE(model.stumps.empty());
    }
}

TEST_CASE("svm separates two points") {
    const FeatureMatrix x = matrix({{-1}, {1}});
    const std::vector<Label> y{N, T};
    ModelSpec spec;
    spec.kind = ModelKind::linear_svm;
    spec.epochs = 50;
    spec.lambda = 1e-2;
    const TrainedModel m = fit(spec, x, y);
    CHECK(m.predict(x.row(0)).decision == N);
    CHECK(m.predict(x.row(1)).decision == T);
}

TEST_CASE("svm objective is non-increasing and label flips negate the model") {
    const Data data = noisy_data(21, 200, 6);
    const SvmFit a = svm_train(1e-3, 30, 5, data.x, data.y);
    REQUIRE(a.objective.size() == 30);
    for (std::size_t e = 1; e < a.objective.size(); ++e) {
        CHECK(a.objective[e] <= a.objective[e - 1]);
        if (e == a.objective.size() - 1) {
            CHECK(svm_objective(a.weights, a.bias, data.x, data.y, 1e-3) == a.objective[e]);
        }
    }

    std::vector<Label> flipped(data.y);
    for (auto& l : flipped) {
        l = l == T ? N : T;
    }
    const SvmFit b = svm_train(1e-3, 30, 5, data.x, flipped);
    for (std::size_t j = 0; j < a.weights.size(); ++j) {
        CHECK(b.weights[j] == -a.weights[j]);
    }
    CHECK(b.bias == -a.bias);
    Rng rng(4);
    for (int q = 0; q < 50; ++q) {
        double fa = a.bias;
        double fb = b.bias;
        for (std::size_t j = 0; j < 6; ++j) {
            const double v = rng.normal();
            fa += a.weights[j] * v;
            fb += b.weights[j] * v;
        }
        CHECK(fb == -fa);
    }
}

TEST_CASE("forest probability is the mean of its trees") {
    const Data data = noisy_data(31, 150, 9);
    ModelSpec spec;
    spec.kind = ModelKind::random_forest;
    spec.n_trees = 15;
    spec.seed = 3;
    const TrainedModel m = fit(spec, data.x, data.y, FitOptions{1});
    const auto& forest = std::get<ForestModel>(m.params());
    REQUIRE(forest.trees.size() == 15);
    for (std::size_t i = 0; i < 20; ++i) {
        double sum = 0.0;
        for (const auto& t : forest.trees) {
            sum += t.predict_proba(data.x.row(i));
        }
        CHECK(m.predict_proba(data.x.row(i)) == sum / 15.0);
    }
}

TEST_CASE("every kind round-trips and refits byte-identically") {
    const Data data = noisy_data(41, 120, 8);
    for (ModelSpec spec : default_specs(17)) {
        CAPTURE(to_string(spec.kind));
        if (spec.kind == ModelKind::random_forest) {
            spec.n_trees = 20;
        }
        const TrainedModel m = fit(spec, data.x, data.y, FitOptions{1});
        const std::string bytes = serialize_model(m);
        CHECK(serialize_model(fit(spec, data.x, data.y, FitOptions{1})) == bytes);

        const TrainedModel back = deserialize_model(bytes);
        CHECK(back.spec() == spec);
        CHECK(serialize_model(back) == bytes);
        Rng rng(8);
        for (int q = 0; q < 100; ++q) {
            std::vector<double> x(8);
            for (auto& v : x) {
                v = 2.0 * rng.normal();
            }
            CHECK(back.predict_proba(x) == m.predict_proba(x));
        }
        CHECK(model_id(spec.kind, bytes).rfind(std::string(to_string(spec.kind)) + "-", 0) == 0);
    }
}

TEST_CASE("parallel forest fitting matches serial bytes") {
    const Data data = noisy_data(51, 200, 12);
    ModelSpec spec;
    spec.kind = ModelKind::random_forest;
    spec.n_trees = 24;
    spec.seed = 9;
    const std::string serial = serialize_model(fit(spec, data.x, data.y, FitOptions{1}));
    CHECK(serialize_model(fit(spec, data.x, data.y, FitOptions{4})) == serial);
    CHECK(serialize_model(fit(spec, data.x, data.y, FitOptions{3})) == serial);
}

TEST_CASE("corrupt and future model files") {
    const Data data = noisy_data(61, 60, 3);
    ModelSpec spec;
    spec.kind = ModelKind::decision_tree;
    const std::string bytes = serialize_model(fit(spec, data.x, data.y));
    CHECK_THROWS_AS(deserialize_model(bytes.substr(0, bytes.size() / 2)), CorruptModelError);
    CHECK_THROWS_AS(deserialize_model(""), CorruptModelError);

    auto doc = nlohmann::json::parse(bytes);
    doc["format_version"] = 99;
    CHECK_THROWS_AS(deserialize_model(doc.dump()), VersionError);

    doc = nlohmann::json::parse(bytes);
    doc["params"]["tree"]["left"][0] = 0;
    CHECK_THROWS_AS(deserialize_model(doc.dump()), CorruptModelError);

    doc = nlohmann::json::parse(bytes);
    doc["kind"] = "knn";
    CHECK_THROWS_AS(deserialize_model(doc.dump()), CorruptModelError);
}

TEST_CASE("fit rejects bad inputs") {
    const FeatureMatrix x = matrix({{1}, {2}});
    ModelSpec spec;
    spec.kind = ModelKind::gaussian_nb;
    const std::vector<Label> one_class{T, T};
    CHECK_THROWS_AS(fit(spec, x, one_class), SingleClassError);
    const std::vector<Label> short_y{T};
    CHECK_THROWS_AS(fit(spec, x, short_y), ShapeError);
    CHECK_THROWS_AS(fit(spec, FeatureMatrix(1), std::vector<Label>{}), DegenerateInputError);
    spec.k = 0;
    spec.kind = ModelKind::knn;
    CHECK_THROWS_AS(fit(spec, x, std::vector<Label>{T, N}), SpecError);

    const TrainedModel m = fit(ModelSpec{ModelKind::gaussian_nb}, x, std::vector<Label>{T, N});
    CHECK_THROWS_AS(m.predict_proba(std::vector<double>{1, 2}), LengthMismatchError);
}

TEST_CASE("threshold rule") {
    const FeatureMatrix x = matrix({{0}, {1}, {2}, {3}, {4}});
    const std::vector<Label> y{N, N, T, T, T};
    ModelSpec spec;
    spec.kind = ModelKind::knn;
    spec.k = 5;
    const TrainedModel m = fit(spec, x, y);
    const std::vector<double> q{2.0};
    CHECK(m.predict_proba(q) == 0.6);
    CHECK(m.predict(q, 0.6).decision == T);
    CHECK(m.predict(q, 0.61).decision == N);
}
