// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#ifndef TORNADO_BOOSTING_HPP
#define TORNADO_BOOSTING_HPP

#include <optional>
#include <span>
#include <vector>

#include "tornado/core.hpp"
#include "tornado/featurize.hpp"

namespace tornado {

inline constexpr double kBoostErrorFloor = 1e-10;

/// Depth-1 tree voting +1 (tornado) or -1. Polarity +1 votes tornado when
/// x[feature] > threshold; polarity -1 when x[feature] <= threshold.
struct Stump {
    std::size_t feature = 0;
    double threshold = 0.0;
    int polarity = 1;

    int vote(std::span<const double> x) const {
        const bool above = x[feature] > threshold;
        return (above == (polarity > 0)) ? 1 : -1;
    }
    bool operator==(const Stump&) const = default;
};

/// Weighted stump search. Sort orders per feature are computed once and
/// reused across boosting rounds.
class StumpSearch {
public:
    explicit StumpSearch(const FeatureMatrix& x);

    struct Result {
        Stump stump;
        double error = 0.0;
    };

    /// Minimum weighted misclassification over features, midpoint
    /// thresholds and both polarities. Ties: lowest feature, lowest
    /// threshold, polarity +1. nullopt when every feature is constant.
    std::optional<Result> best(std::span<const Label> y, std::span<const double> weights) const;

    const FeatureMatrix& features() const { return x_; }

private:
    const FeatureMatrix& x_;
    std::vector<std::vector<std::size_t>> order_;
};

struct BoostRound {
    Stump stump;
    double error = 0.0;          // raw weighted error
    double alpha = 0.0;          // from the error clamped to [1e-10, 0.5 - 1e-10]
    std::vector<double> weights; // renormalized
};

/// One discrete AdaBoost round. nullopt (stop) when the best stump's error is
/// at least 0.5 or no stump exists. `weights` must be positive and sum to 1.
std::optional<BoostRound> adaboost_round(const StumpSearch& search, std::span<const Label> y,
                                         std::span<const double> weights);

struct AdaBoostModel {
    std::vector<Stump> stumps;
    std::vector<double> alphas;
    std::vector<double> errors;

    /// Signed ensemble margin sum_t alpha_t h_t(x).
    double margin(std::span<const double> x) const;
};

/// Runs up to `rounds` rounds from uniform weights. Stops early on a stop
/// signal, or right after a stump whose weighted error is below the floor
/// (the training set is then classified exactly).
AdaBoostModel train_adaboost(const FeatureMatrix& x, std::span<const Label> y, int rounds);

} // namespace tornado

#endif // TORNADO_BOOSTING_HPP
