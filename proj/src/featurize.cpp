// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include "tornado/featurize.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "tornado/errors.hpp"
#include "tornado/ingestion.hpp"

namespace tornado {

namespace {

struct Moments {
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }
    double population_std() const { return std::sqrt(std::max(0.0, m2 / static_cast<double>(n))); }
};

} // namespace

std::string_view to_string(Quadrant q) {
    switch (q) {
    case Quadrant::NW: return "NW";
    case Quadrant::NE: return "NE";
    case Quadrant::SW: return "SW";
    case Quadrant::SE: return "SE";
    }
    return "?";
}

QuadrantCells split_quadrants(const Layer& layer) {
    if (layer.rows() != kGridSide || layer.cols() != kGridSide) {
        throw ShapeError("cannot split a " + std::to_string(layer.rows()) + "x" + std::to_string(layer.cols()) +
                         " layer into quadrants, expected 19x19");
    }
    QuadrantCells q;
    q[0].reserve(100);
    q[1].reserve(90);
    q[2].reserve(90);
    q[3].reserve(81);
    for (std::size_t r = 0; r < kGridSide; ++r) {
        const std::size_t north_south = r < kQuadrantSplit ? 0 : 2;
        for (std::size_t c = 0; c < kGridSide; ++c) {
            const std::size_t west_east = c < kQuadrantSplit ? 0 : 1;
            q[north_south + west_east].push_back(layer(r, c));
        }
    }
    return q;
}

MeanStd quadrant_stats(std::span<const double> cells) {
    if (cells.empty()) {
        throw EmptyQuadrantError("quadrant has no cells");
    }
    Moments m;
    for (double x : cells) {
        m.add(x);
    }
    return {m.mean, m.population_std()};
}

std::string feature_name(std::size_t index) {
    const std::size_t stat = index % kStatCount;
    const std::size_t quad = (index / kStatCount) % kQuadrantCount;
    const std::size_t var = (index / (kStatCount * kQuadrantCount)) % kVariableCount;
    const std::size_t day = index / kFeaturesPerDay;
    return "d" + std::to_string(day) + "." + std::string(variable_schema()[var].key) + "." +
           std::string(to_string(static_cast<Quadrant>(quad))) + (stat == 0 ? ".mean" : ".std");
}

FeatureVector build_feature_vector(const EventWindow& w) {
    validate_window(w);
    FeatureVector fv;
    fv.window_days = w.days();
    fv.values.reserve(feature_length(w.days()));
    for (const GridSnapshot& s : w.snapshots) {
        validate_snapshot(s);
        for (const auto& desc : variable_schema()) {
            const QuadrantCells quads = split_quadrants(s.layer(desc.id));
            for (const auto& cells : quads) {
                const MeanStd st = quadrant_stats(cells);
                fv.values.push_back(st.mean);
                fv.values.push_back(st.std);
            }
        }
    }
    return fv;
}

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) {
        throw LengthMismatchError(rows * cols, data_.size());
    }
}

void FeatureMatrix::push_back(std::span<const double> row) {
    if (row.size() != cols_) {
        throw LengthMismatchError(cols_, row.size());
    }
    data_.insert(data_.end(), row.begin(), row.end());
}

FeatureMatrix feature_matrix(const Dataset& d) {
    FeatureMatrix x(feature_length(d.window_days()));
    for (const auto& w : d.windows) {
        x.push_back(build_feature_vector(w).values);
    }
    return x;
}

std::vector<Label> labels_of(const Dataset& d) {
    std::vector<Label> y;
    y.reserve(d.windows.size());
    for (const auto& w : d.windows) {
        y.push_back(w.label);
    }
    return y;
}

StandardizationParams fit_standardizer(const FeatureMatrix& x) {
    if (x.rows() == 0) {
        throw EmptyInputError("cannot fit a standardizer on zero rows");
    }
    std::vector<Moments> cols(x.cols());
    for (std::size_t r = 0; r < x.rows(); ++r) {
        const auto row = x.row(r);
        for (std::size_t j = 0; j < row.size(); ++j) {
            cols[j].add(row[j]);
        }
    }
    StandardizationParams p;
    p.mean.reserve(cols.size());
    p.scale.reserve(cols.size());
    for (const auto& m : cols) {
        p.mean.push_back(m.mean);
        p.scale.push_back(std::max(m.population_std(), kStandardizerEpsilon));
    }
    return p;
}

StandardizationParams fit_standardizer(std::span<const FeatureVector> x) {
    if (x.empty()) {
        throw EmptyInputError("cannot fit a standardizer on zero vectors");
    }
    FeatureMatrix m(x.front().values.size());
    for (const auto& v : x) {
        m.push_back(v.values);
    }
    return fit_standardizer(m);
}

std::vector<double> apply_standardizer(const StandardizationParams& p, std::span<const double> x) {
    if (x.size() != p.mean.size()) {
        throw LengthMismatchError(p.mean.size(), x.size());
    }
    std::vector<double> z(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        z[j] = (x[j] - p.mean[j]) / p.scale[j];
    }
    return z;
}

FeatureVector apply_standardizer(const StandardizationParams& p, const FeatureVector& x) {
    return {apply_standardizer(p, x.values), x.window_days};
}

std::vector<double> invert_standardizer(const StandardizationParams& p, std::span<const double> z) {
    if (z.size() != p.mean.size()) {
        throw LengthMismatchError(p.mean.size(), z.size());
    }
    std::vector<double> x(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) {
        x[j] = z[j] * p.scale[j] + p.mean[j];
    }
    return x;
}

std::string feature_csv(const Dataset& d) {
    const std::size_t n = feature_length(d.window_days());
    std::string out = "event_id,label";
    for (std::size_t j = 0; j < n; ++j) {
        out += ",f" + std::to_string(j);
    }
    out += '\n';
    char buf[32];
    for (const auto& w : d.windows) {
        out += w.event_id;
        out += ',';
        out += to_string(w.label);
        for (double v : build_feature_vector(w).values) {
            auto res = std::to_chars(buf, buf + sizeof buf, v);
            out += ',';
            out.append(buf, res.ptr);
        }
        out += '\n';
    }
    return out;
}

} // namespace tornado
