// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include "tornado/core.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "tornado/errors.hpp"

namespace tornado {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr std::array<VariableDescriptor, kVariableCount> kSchema{{
    {Variable::temperature, "temperature", "K", 0.0, kInf, false},
    {Variable::wind_u, "wind_u", "m s-1", -kInf, kInf, true},
    {Variable::wind_v, "wind_v", "m s-1", -kInf, kInf, true},
    {Variable::precipitation, "precipitation", "m", 0.0, kInf, false},
    {Variable::column_rain_water, "column_rain_water", "kg m-2", 0.0, kInf, false},
    {Variable::large_scale_rain_rate, "large_scale_rain_rate", "kg m-2 s-1", 0.0, kInf, false},
    {Variable::cloud_cover, "cloud_cover", "1", 0.0, 1.0, false},
}};

std::string format_value(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string cell_text(const CellRef& c) {
    return c.variable + " at (" + std::to_string(c.row) + "," + std::to_string(c.col) +
           ") = " + format_value(c.value);
}

bool parse_uint(std::string_view s, unsigned& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

} // namespace

std::span<const VariableDescriptor, kVariableCount> variable_schema() { return kSchema; }

const VariableDescriptor& describe(Variable v) { return kSchema[index_of(v)]; }

std::optional<Variable> variable_from_key(std::string_view key) {
    for (const auto& d : kSchema) {
        if (d.key == key) {
            return d.id;
        }
    }
    return std::nullopt;
}

std::string_view to_string(Label label) {
    return label == Label::tornado ? "tornado" : "null_event";
}

std::optional<Label> label_from_string(std::string_view s) {
    if (s == "tornado") {
        return Label::tornado;
    }
    if (s == "null_event") {
        return Label::null_event;
    }
    return std::nullopt;
}

std::optional<Date> parse_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') {
        return std::nullopt;
    }
    unsigned y = 0, m = 0, d = 0;
    if (!parse_uint(s.substr(0, 4), y) || !parse_uint(s.substr(5, 2), m) || !parse_uint(s.substr(8, 2), d)) {
        return std::nullopt;
    }
    std::chrono::year_month_day ymd{std::chrono::year{static_cast<int>(y)}, std::chrono::month{m},
                                    std::chrono::day{d}};
    if (!ymd.ok()) {
        return std::nullopt;
    }
    return std::chrono::sys_days{ymd};
}

std::string format_date(Date d) {
    std::chrono::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

int year_of(Date d) { return static_cast<int>(std::chrono::year_month_day{d}.year()); }

Date make_date(int year, unsigned month, unsigned day) {
    return std::chrono::sys_days{std::chrono::year{year} / std::chrono::month{month} / std::chrono::day{day}};
}

Layer::Layer(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (values_.size() != rows_ * cols_) {
        throw ShapeError("layer holds " + std::to_string(values_.size()) + " values, expected " +
                         std::to_string(rows_) + "x" + std::to_string(cols_));
    }
}

const GridSnapshot& validate_snapshot(const GridSnapshot& s) {
    if (!(s.resolution > 0.0) || !std::isfinite(s.resolution)) {
        throw RangeError("snapshot resolution must be positive, got " + format_value(s.resolution));
    }
    for (const auto& desc : kSchema) {
        if (s.layer(desc.id).empty()) {
            throw MissingVariableError("snapshot is missing variable " + std::string(desc.key),
                                       std::string(desc.key));
        }
    }
    for (const auto& desc : kSchema) {
        const Layer& layer = s.layer(desc.id);
        if (layer.rows() != kGridSide || layer.cols() != kGridSide) {
            throw ShapeError("layer " + std::string(desc.key) + " is " + std::to_string(layer.rows()) + "x" +
                             std::to_string(layer.cols()) + ", expected 19x19");
        }
    }
    for (const auto& desc : kSchema) {
        const Layer& layer = s.layer(desc.id);
        for (std::size_t r = 0; r < kGridSide; ++r) {
            for (std::size_t c = 0; c < kGridSide; ++c) {
                const double v = layer(r, c);
                CellRef cell{std::string(desc.key), r, c, v};
                if (!std::isfinite(v)) {
                    throw NonFiniteError("non-finite value: " + cell_text(cell), cell);
                }
                if ((!desc.signed_component && v < desc.lower) || v > desc.upper) {
                    throw RangeError("value out of range: " + cell_text(cell), cell);
                }
            }
        }
    }
    return s;
}

void validate_window(const EventWindow& w) {
    const int days = w.days();
    if (days < 1 || days > kMaxWindowDays) {
        throw WindowError("window '" + w.event_id + "' holds " + std::to_string(days) + " days, expected 1..5");
    }
    const GridSnapshot& first = w.snapshots.front();
    for (int i = 0; i < days; ++i) {
        const GridSnapshot& s = w.snapshots[static_cast<std::size_t>(i)];
        const Date expected = w.target_date - std::chrono::days{days - i};
        if (s.date != expected) {
            throw WindowError("window '" + w.event_id + "' snapshot " + std::to_string(i) + " dated " +
                              format_date(s.date) + ", expected " + format_date(expected));
        }
        if (s.region_id != first.region_id || s.lat0 != first.lat0 || s.lon0 != first.lon0 ||
            s.resolution != first.resolution) {
            throw WindowError("window '" + w.event_id + "' mixes grids: " + first.region_id + " and " +
                              s.region_id);
        }
    }
}

} // namespace tornado
