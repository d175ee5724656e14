// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#ifndef TORNADO_FEATURIZE_HPP
#define TORNADO_FEATURIZE_HPP

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tornado/core.hpp"

namespace tornado {

struct Dataset;

enum class Quadrant : std::uint8_t { NW, NE, SW, SE };
inline constexpr std::size_t kQuadrantCount = 4;
inline constexpr std::size_t kStatCount = 2;
inline constexpr std::size_t kFeaturesPerDay = kVariableCount * kQuadrantCount * kStatCount;

/// The grid splits after row/col 9: the centre row joins the northern
/// quadrants and the centre column the western ones.
inline constexpr std::size_t kQuadrantSplit = 10;

std::string_view to_string(Quadrant q);

using QuadrantCells = std::array<std::vector<double>, kQuadrantCount>;

/// Partitions a 19x19 layer into NW (10x10), NE (10x9), SW (9x10) and SE
/// (9x9), each row-major. Throws ShapeError.
QuadrantCells split_quadrants(const Layer& layer);

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
};

/// Arithmetic mean and population standard deviation (divides by N).
/// Throws EmptyQuadrantError on an empty set.
MeanStd quadrant_stats(std::span<const double> cells);

/// Layout: day (oldest first), variable (schema order), quadrant
/// (NW, NE, SW, SE), statistic (mean, std).
struct FeatureVector {
    std::vector<double> values;
    int window_days = 0;

    bool operator==(const FeatureVector&) const = default;
};

constexpr std::size_t feature_length(int window_days) {
    return static_cast<std::size_t>(window_days) * kFeaturesPerDay;
}

constexpr std::size_t feature_index(int day, Variable v, Quadrant q, std::size_t stat) {
    return ((static_cast<std::size_t>(day) * kVariableCount + index_of(v)) * kQuadrantCount +
            static_cast<std::size_t>(q)) * kStatCount + stat;
}

/// e.g. "d0.temperature.NW.mean"
std::string feature_name(std::size_t index);

FeatureVector build_feature_vector(const EventWindow& w);

/// Row-major feature matrix with a fixed column count.
class FeatureMatrix {
public:
    FeatureMatrix() = default;
    explicit FeatureMatrix(std::size_t cols) : cols_(cols) {}
    FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    std::size_t rows() const { return cols_ == 0 ? 0 : data_.size() / cols_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    /// Throws LengthMismatchError if the row length differs from cols().
    void push_back(std::span<const double> row);

    std::span<const double> data() const { return data_; }

private:
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Featurizes every window, in dataset order.
FeatureMatrix feature_matrix(const Dataset& d);
std::vector<Label> labels_of(const Dataset& d);

inline constexpr double kStandardizerEpsilon = 1e-9;

struct StandardizationParams {
    std::vector<double> mean;
    std::vector<double> scale;

    bool operator==(const StandardizationParams&) const = default;
};

/// Column means and population stds floored at kStandardizerEpsilon.
/// Throws EmptyInputError.
StandardizationParams fit_standardizer(const FeatureMatrix& x);
StandardizationParams fit_standardizer(std::span<const FeatureVector> x);

std::vector<double> apply_standardizer(const StandardizationParams& p, std::span<const double> x);
FeatureVector apply_standardizer(const StandardizationParams& p, const FeatureVector& x);
std::vector<double> invert_standardizer(const StandardizationParams& p, std::span<const double> z);

/// CSV `event_id,label,f0,...,f{n-1}` in canonical layout order.
std::string feature_csv(const Dataset& d);

} // namespace tornado

#endif // TORNADO_FEATURIZE_HPP
