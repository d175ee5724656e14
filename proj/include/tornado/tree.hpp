// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#ifndef TORNADO_TREE_HPP
#define TORNADO_TREE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tornado/core.hpp"
#include "tornado/featurize.hpp"
#include "tornado/rng.hpp"

namespace tornado {

/// Column-major copy of a feature matrix; split search walks columns.
class ColumnMatrix {
public:
    explicit ColumnMatrix(const FeatureMatrix& x);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::span<const double> column(std::size_t j) const { return {data_.data() + j * rows_, rows_}; }
    double operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

struct Split {
    std::size_t feature = 0;
    double threshold = 0.0;
    double gain = 0.0;
};

/// Gains at or below this are treated as zero (floating round-off).
inline constexpr double kMinSplitGain = 1e-12;

/// CART search: the Gini-decrease maximizing split over `candidates`
/// (ascending feature indices) and midpoints of consecutive distinct values
/// among `rows`. Ties keep the lowest feature, then the lowest threshold.
/// Rows go left when value <= threshold. Returns nullopt iff no split has
/// positive gain, or, with `allow_zero_gain`, iff no feature takes two
/// distinct values.
std::optional<Split> find_best_split(const ColumnMatrix& x, std::span<const Label> y,
                                     std::span<const std::size_t> rows,
                                     std::span<const std::size_t> candidates, bool allow_zero_gain = false);

/// n draws with replacement from [0, n).
std::vector<std::size_t> bootstrap_sample(Rng& rng, std::size_t n);

/// Leaves have feature == -1. Children indices point into Tree::nodes.
struct TreeNode {
    std::int32_t feature = -1;
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::uint32_t positives = 0;
    std::uint32_t negatives = 0;

    bool is_leaf() const { return feature < 0; }
    double tornado_fraction() const {
        return static_cast<double>(positives) / static_cast<double>(positives + negatives);
    }
};

struct Tree {
    std::vector<TreeNode> nodes;

    const TreeNode& leaf_for(std::span<const double> x) const;
    double predict_proba(std::span<const double> x) const { return leaf_for(x).tornado_fraction(); }
    std::size_t depth() const;
};

struct TreeParams {
    int max_depth = 0;          // 0: unlimited
    int min_samples_split = 2;
    int max_features = 0;       // 0: every feature at every node
};

/// Grows a tree on `rows` (duplicates allowed, as from a bootstrap). `rng`
/// is only consulted when max_features samples a subset of the columns.
/// An impure node with no positive-gain split still splits on the best
/// zero-gain candidate over all features, so consistent data always ends in
/// pure leaves.
Tree grow_tree(const ColumnMatrix& x, std::span<const Label> y, std::vector<std::size_t> rows,
               const TreeParams& params, Rng* rng);

} // namespace tornado

#endif // TORNADO_TREE_HPP
