// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#ifndef TORNADO_SYNTH_HPP
#define TORNADO_SYNTH_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "tornado/core.hpp"
#include "tornado/ingestion.hpp"

namespace tornado {

inline constexpr int kMaxSynthRegions = 200;

struct SynthSpec {
    std::uint64_t seed = 0;
    int n_tornado = 500;
    int n_null = 500;
    /// Class-mean offset in units of the per-variable anomaly sigma.
    double separation = 3.0;
    int window_days = kMaxWindowDays;
    Date start_date = make_date(2000, 1, 1);
    /// Number of 5x5 degree regions events are spread over.
    int regions = 20;

    /// Throws SpecError.
    void validate() const;
};

/// Generative parameters of one variable. A layer is
///   base + label * separation * sigma * offset_sign + a + texture
/// where a ~ N(0, sigma^2) is shared by all cells of the layer and texture is
/// a 3x3 wrap-around moving average of white noise rescaled to per-cell
/// standard deviation tau.
struct SynthVariable {
    double base = 0.0;
    double sigma = 0.0;
    double tau = 0.0;
    int offset_sign = 0;   // 0: carries no class signal
};

struct SynthOracle {
    std::array<SynthVariable, kVariableCount> variables{};
    double separation = 0.0;
    double prior_tornado = 0.5;
    int window_days = kMaxWindowDays;
    int kernel = 3;

    /// Variance of a layer's grid mean given the class.
    double grid_mean_variance(Variable v) const;
    /// log p(w | tornado) - log p(w | null) + log prior ratio, computed from
    /// layer grid means (a sufficient statistic for the class).
    double log_posterior_ratio(const EventWindow& w) const;
    /// Closed-form error rate of oracle_decide on unclipped data.
    double bayes_error() const;
};

struct SynthResult {
    Dataset dataset;
    std::vector<CatalogEntry> catalog;
    SynthOracle oracle;
};

/// Events come in per-region units of a tornado followed by a null event 9 or
/// 10 days later (alternating); the next unit in a region starts 10 days after
/// the null event. Window k is generated from derive_seed(seed, k).
SynthResult generate_dataset(const SynthSpec& spec);

/// tornado iff the log posterior ratio is strictly positive.
Label oracle_decide(const SynthOracle& o, const EventWindow& w);

/// Standard normal CDF.
double normal_cdf(double x);

} // namespace tornado

#endif // TORNADO_SYNTH_HPP
