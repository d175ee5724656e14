// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include "tornado/svm.hpp"

#include <cmath>
#include <numeric>

#include "tornado/rng.hpp"

namespace tornado {

namespace {

double sign_of(Label l) { return l == Label::tornado ? 1.0 : -1.0; }

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        s += a[j] * b[j];
    }
    return s;
}

} // namespace

double svm_objective(std::span<const double> w, double b, const FeatureMatrix& x, std::span<const Label> y,
                     double lambda) {
    double hinge = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const double margin = sign_of(y[i]) * (dot(w, x.row(i)) + b);
        hinge += std::max(0.0, 1.0 - margin);
    }
    return 0.5 * lambda * dot(w, w) + hinge / static_cast<double>(x.rows());
}

SvmFit svm_train(double lambda, int epochs, std::uint64_t seed, const FeatureMatrix& x, std::span<const Label> y) {
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    const double radius = 1.0 / std::sqrt(lambda);
    const double t0 = 1.0 / lambda;

    std::vector<double> w(d, 0.0);
    double b = 0.0;
    std::vector<double> avg_w(d, 0.0);
    double avg_b = 0.0;

    SvmFit fit;
    fit.weights.assign(d, 0.0);
    fit.bias = 0.0;
    double accepted = svm_objective(fit.weights, fit.bias, x, y, lambda);

    std::vector<std::size_t> order(n);
    std::uint64_t t = 0;
    for (int epoch = 0; epoch < epochs; ++epoch) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(epoch)));
        rng.shuffle(order);
        for (std::size_t i : order) {
            ++t;
            const double eta = 1.0 / (lambda * (static_cast<double>(t) + t0));
            const auto xi = x.row(i);
            const double yi = sign_of(y[i]);
            const double margin = yi * (dot(w, xi) + b);
            const double shrink = 1.0 - eta * lambda;
            for (double& wj : w) {
                wj *= shrink;
            }
            if (margin < 1.0) {
                for (std::size_t j = 0; j < d; ++j) {
                    w[j] += eta * yi * xi[j];
                }
                b += eta * yi;
            }
            const double norm = std::sqrt(dot(w, w));
            if (norm > radius) {
                const double scale = radius / norm;
                for (double& wj : w) {
                    wj *= scale;
                }
            }
            const double inv_t = 1.0 / static_cast<double>(t);
            for (std::size_t j = 0; j < d; ++j) {
                avg_w[j] += (w[j] - avg_w[j]) * inv_t;
            }
            avg_b += (b - avg_b) * inv_t;
        }
        const double candidate = svm_objective(avg_w, avg_b, x, y, lambda);
        if (candidate <= accepted) {
            accepted = candidate;
            fit.weights = avg_w;
            fit.bias = avg_b;
        }
        fit.objective.push_back(accepted);
    }
    return fit;
}

} // namespace tornado
