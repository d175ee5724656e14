// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#ifndef TORNADO_SVM_HPP
#define TORNADO_SVM_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "tornado/core.hpp"
#include "tornado/featurize.hpp"

namespace tornado {

struct SvmFit {
    std::vector<double> weights;
    double bias = 0.0;
    /// Objective of the returned iterate after each epoch.
    std::vector<double> objective;
};

/// lambda/2 ||w||^2 + mean_i max(0, 1 - y_i (w.x_i + b)), labels as +-1.
double svm_objective(std::span<const double> w, double b, const FeatureMatrix& x, std::span<const Label> y,
                     double lambda);

/// Linear soft-margin SVM by stochastic subgradient descent (Pegasos steps
/// 1/(lambda (t + 1/lambda)), projection onto ||w|| <= 1/sqrt(lambda),
/// unregularized bias). Each epoch visits the rows in a seed-derived
/// shuffled order. The iterate average is re-scored on the full training set
/// at every epoch end and only replaces the returned model when the
/// objective does not increase, so `objective` is non-increasing.
SvmFit svm_train(double lambda, int epochs, std::uint64_t seed, const FeatureMatrix& x, std::span<const Label> y);

} // namespace tornado

#endif // TORNADO_SVM_HPP
