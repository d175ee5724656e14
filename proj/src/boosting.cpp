// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include "tornado/boosting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tornado {

namespace {

double split_point(double lo, double hi) {
    const double mid = std::midpoint(lo, hi);
    return mid < hi ? mid : lo;
}

int sign_of(Label l) { return l == Label::tornado ? 1 : -1; }

} // namespace

StumpSearch::StumpSearch(const FeatureMatrix& x) : x_(x), order_(x.cols()) {
    for (std::size_t f = 0; f < x.cols(); ++f) {
        auto& ord = order_[f];
        ord.resize(x.rows());
        std::iota(ord.begin(), ord.end(), std::size_t{0});
        std::stable_sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) { return x(a, f) < x(b, f); });
    }
}

std::optional<StumpSearch::Result> StumpSearch::best(std::span<const Label> y, std::span<const double> weights) const {
    double total_pos = 0.0;
    double total_neg = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        (y[i] == Label::tornado ? total_pos : total_neg) += weights[i];
    }
    std::optional<Result> best;
    const std::size_t n = x_.rows();
    for (std::size_t f = 0; f < x_.cols(); ++f) {
        const auto& ord = order_[f];
        double left_pos = 0.0;
        double left_neg = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const std::size_t r = ord[i];
            (y[r] == Label::tornado ? left_pos : left_neg) += weights[r];
            const double v = x_(r, f);
            const double next = x_(ord[i + 1], f);
            if (v == next) {
                continue;
            }
            const double thr = split_point(v, next);
            // Polarity +1 votes tornado on the right.
            const double err_plus = left_pos + (total_neg - left_neg);
            const double err_minus = left_neg + (total_pos - left_pos);
            if (!best || err_plus < best->error) {
                best = Result{Stump{f, thr, 1}, err_plus};
            }
            if (err_minus < best->error) {
                best = Result{Stump{f, thr, -1}, err_minus};
            }
        }
    }
    return best;
}

std::optional<BoostRound> adaboost_round(const StumpSearch& search, std::span<const Label> y,
                                         std::span<const double> weights) {
    auto found = search.best(y, weights);
    if (!found || found->error >= 0.5) {
        return std::nullopt;
    }
    BoostRound round;
    round.stump = found->stump;
    round.error = std::max(found->error, 0.0);
    const double eps = std::clamp(round.error, kBoostErrorFloor, 0.5 - kBoostErrorFloor);
    round.alpha = 0.5 * std::log((1.0 - eps) / eps);

    const FeatureMatrix& x = search.features();
    round.weights.resize(weights.size());
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const int agreement = sign_of(y[i]) * round.stump.vote(x.row(i));
        round.weights[i] = weights[i] * std::exp(-round.alpha * agreement);
        total += round.weights[i];
    }
    for (double& w : round.weights) {
        w /= total;
    }
    return round;
}

double AdaBoostModel::margin(std::span<const double> x) const {
    double f = 0.0;
    for (std::size_t t = 0; t < stumps.size(); ++t) {
        f += alphas[t] * stumps[t].vote(x);
    }
    return f;
}

AdaBoostModel train_adaboost(const FeatureMatrix& x, std::span<const Label> y, int rounds) {
    StumpSearch search(x);
    std::vector<double> weights(x.rows(), 1.0 / static_cast<double>(x.rows()));
    AdaBoostModel model;
    for (int t = 0; t < rounds; ++t) {
        auto round = adaboost_round(search, y, weights);
        if (!round) {
            break;
        }
        model.stumps.push_back(round->stump);
        model.alphas.push_back(round->alpha);
        model.errors.push_back(round->error);
        if (round->error <= kBoostErrorFloor) {
            break;
        }
        weights = std::move(round->weights);
    }
    return model;
}

} // namespace tornado
