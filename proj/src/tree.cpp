// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include "tornado/tree.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace tornado {

namespace {

double split_point(double lo, double hi) {
    const double mid = std::midpoint(lo, hi);
    return mid < hi ? mid : lo;
}

double sq(std::size_t v) { return static_cast<double>(v) * static_cast<double>(v); }

class TreeGrower {
public:
    TreeGrower(const ColumnMatrix& x, std::span<const Label> y, const TreeParams& params, Rng* rng)
        : x_(x), y_(y), params_(params), rng_(rng), all_features_(x.cols()), perm_(x.cols()) {
        std::iota(all_features_.begin(), all_features_.end(), std::size_t{0});
        std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    }

    Tree grow(std::vector<std::size_t> rows) {
        tree_.nodes.clear();
        build(std::move(rows), 0);
        return std::move(tree_);
    }

private:
    std::vector<std::size_t> sample_features() {
        const std::size_t d = x_.cols();
        const auto m = static_cast<std::size_t>(params_.max_features);
        if (params_.max_features <= 0 || m >= d || rng_ == nullptr) {
            return all_features_;
        }
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng_->below(d - i));
            std::swap(perm_[i], perm_[j]);
        }
        std::vector<std::size_t> out(perm_.begin(), perm_.begin() + static_cast<std::ptrdiff_t>(m));
        std::sort(out.begin(), out.end());
        return out;
    }

    std::int32_t build(std::vector<std::size_t> rows, int depth) {
        TreeNode node;
        for (std::size_t r : rows) {
            if (y_[r] == Label::tornado) {
                ++node.positives;
            } else {
                ++node.negatives;
            }
        }
        const auto index = static_cast<std::int32_t>(tree_.nodes.size());
        tree_.nodes.push_back(node);

        const bool pure = node.positives == 0 || node.negatives == 0;
        const bool too_small = rows.size() < static_cast<std::size_t>(std::max(2, params_.min_samples_split));
        const bool too_deep = params_.max_depth > 0 && depth >= params_.max_depth;
        if (pure || too_small || too_deep) {
            return index;
        }

        const auto candidates = sample_features();
        auto split = find_best_split(x_, y_, rows, candidates, false);
        if (!split) {
            split = find_best_split(x_, y_, rows, all_features_, true);
        }
        if (!split) {
            return index;
        }

        std::vector<std::size_t> left;
        std::vector<std::size_t> right;
        const auto column = x_.column(split->feature);
        for (std::size_t r : rows) {
            (column[r] <= split->threshold ? left : right).push_back(r);
        }
        rows.clear();
        rows.shrink_to_fit();

        const std::int32_t l = build(std::move(left), depth + 1);
        const std::int32_t r = build(std::move(right), depth + 1);
        TreeNode& n = tree_.nodes[static_cast<std::size_t>(index)];
        n.feature = static_cast<std::int32_t>(split->feature);
        n.threshold = split->threshold;
        n.left = l;
        n.right = r;
        return index;
    }

    const ColumnMatrix& x_;
    std::span<const Label> y_;
    const TreeParams& params_;
    Rng* rng_;
    std::vector<std::size_t> all_features_;
    std::vector<std::size_t> perm_;
    Tree tree_;
};

} // namespace

ColumnMatrix::ColumnMatrix(const FeatureMatrix& x) : rows_(x.rows()), cols_(x.cols()), data_(rows_ * cols_) {
    for (std::size_t r = 0; r < rows_; ++r) {
        const auto row = x.row(r);
        for (std::size_t c = 0; c < cols_; ++c) {
            data_[c * rows_ + r] = row[c];
        }
    }
}

std::optional<Split> find_best_split(const ColumnMatrix& x, std::span<const Label> y,
                                     std::span<const std::size_t> rows,
                                     std::span<const std::size_t> candidates, bool allow_zero_gain) {
    const std::size_t m = rows.size();
    if (m < 2) {
        return std::nullopt;
    }
    std::size_t pos = 0;
    for (std::size_t r : rows) {
        pos += y[r] == Label::tornado ? 1 : 0;
    }
    const std::size_t neg = m - pos;
    const double parent_term = (sq(pos) + sq(neg)) / static_cast<double>(m);

    std::vector<std::pair<double, bool>> sorted(m);
    std::optional<Split> best;
    for (std::size_t f : candidates) {
        const auto column = x.column(f);
        for (std::size_t k = 0; k < m; ++k) {
            sorted[k] = {column[rows[k]], y[rows[k]] == Label::tornado};
        }
        std::sort(sorted.begin(), sorted.end());
        std::size_t left_pos = 0;
        std::size_t left_neg = 0;
        for (std::size_t i = 0; i + 1 < m; ++i) {
            if (sorted[i].second) {
                ++left_pos;
            } else {
                ++left_neg;
            }
            if (sorted[i].first == sorted[i + 1].first) {
                continue;
            }
            const std::size_t n_left = i + 1;
            const std::size_t n_right = m - n_left;
            const std::size_t right_pos = pos - left_pos;
            const std::size_t right_neg = neg - left_neg;
            // Gini decrease, written with integer counts:
            // [sum_child (p^2+q^2)/n_child - (P^2+Q^2)/N] / N
            const double gain = ((sq(left_pos) + sq(left_neg)) / static_cast<double>(n_left) +
                                 (sq(right_pos) + sq(right_neg)) / static_cast<double>(n_right) - parent_term) /
                                static_cast<double>(m);
            if (!allow_zero_gain && gain <= kMinSplitGain) {
                continue;
            }
            if (!best || gain > best->gain) {
                best = Split{f, split_point(sorted[i].first, sorted[i + 1].first), gain};
            }
        }
    }
    return best;
}

std::vector<std::size_t> bootstrap_sample(Rng& rng, std::size_t n) {
    std::vector<std::size_t> out(n);
    for (auto& v : out) {
        v = static_cast<std::size_t>(rng.below(n));
    }
    return out;
}

const TreeNode& Tree::leaf_for(std::span<const double> x) const {
    const TreeNode* node = &nodes.front();
    while (!node->is_leaf()) {
        const auto next = x[static_cast<std::size_t>(node->feature)] <= node->threshold ? node->left : node->right;
        node = &nodes[static_cast<std::size_t>(next)];
    }
    return *node;
}

std::size_t Tree::depth() const {
    std::size_t deepest = 0;
    std::vector<std::pair<std::int32_t, std::size_t>> stack{{0, 0}};
    while (!stack.empty()) {
        auto [i, d] = stack.back();
        stack.pop_back();
        deepest = std::max(deepest, d);
        const TreeNode& n = nodes[static_cast<std::size_t>(i)];
        if (!n.is_leaf()) {
            stack.emplace_back(n.left, d + 1);
            stack.emplace_back(n.right, d + 1);
        }
    }
    return deepest;
}

Tree grow_tree(const ColumnMatrix& x, std::span<const Label> y, std::vector<std::size_t> rows,
               const TreeParams& params, Rng* rng) {
    TreeGrower grower(x, y, params, rng);
    return grower.grow(std::move(rows));
}

} // namespace tornado
