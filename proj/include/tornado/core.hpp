// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#ifndef TORNADO_CORE_HPP
#define TORNADO_CORE_HPP

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tornado {

inline constexpr std::size_t kGridSide = 19;
inline constexpr std::size_t kGridCells = kGridSide * kGridSide;
inline constexpr std::size_t kVariableCount = 7;
inline constexpr double kGridResolution = 0.25;
inline constexpr int kMaxWindowDays = 5;

enum class Variable : std::uint8_t {
    temperature,
    wind_u,
    wind_v,
    precipitation,
    column_rain_water,
    large_scale_rain_rate,
    cloud_cover,
};

/// One entry of the fixed variable schema. Ranges are inclusive. Signed wind
/// components have no lower bound.
struct VariableDescriptor {
    Variable id;
    std::string_view key;
    std::string_view unit;
    double lower;
    double upper;
    bool signed_component;
};

/// The seven variables in canonical order.
std::span<const VariableDescriptor, kVariableCount> variable_schema();
const VariableDescriptor& describe(Variable v);
std::optional<Variable> variable_from_key(std::string_view key);
constexpr std::size_t index_of(Variable v) { return static_cast<std::size_t>(v); }

/// Positive class is `tornado` in every metric.
enum class Label : std::uint8_t { null_event = 0, tornado = 1 };

std::string_view to_string(Label label);
std::optional<Label> label_from_string(std::string_view s);

// Calendar dates (proleptic Gregorian, no time of day).
using Date = std::chrono::sys_days;

std::optional<Date> parse_date(std::string_view s);
std::string format_date(Date d);
int year_of(Date d);
Date make_date(int year, unsigned month, unsigned day);

/// A rows x cols matrix of one variable, row-major. In memory row 0 is the
/// northernmost row and column 0 the westernmost; the snapshot file stores
/// rows south-to-north and the parser flips them.
class Layer {
public:
    Layer() = default;
    Layer(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), values_(rows * cols, fill) {}
    Layer(std::size_t rows, std::size_t cols, std::vector<double> values);

    static Layer grid(double fill = 0.0) { return Layer(kGridSide, kGridSide, fill); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return values_.empty(); }

    double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }
    double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    bool operator==(const Layer&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

/// One region-day of gridded weather. A default-constructed (empty) layer
/// marks a missing variable.
struct GridSnapshot {
    std::string region_id;
    Date date{};
    double lat0 = 0.0;
    double lon0 = 0.0;
    double resolution = kGridResolution;
    std::array<Layer, kVariableCount> layers;

    const Layer& layer(Variable v) const { return layers[index_of(v)]; }
    Layer& layer(Variable v) { return layers[index_of(v)]; }

    bool operator==(const GridSnapshot&) const = default;
};

/// Throws MissingVariableError, ShapeError, NonFiniteError or RangeError;
/// otherwise returns `s` untouched. Layers are checked in schema order and
/// cells in row-major order, so the reported failure is deterministic.
const GridSnapshot& validate_snapshot(const GridSnapshot& s);

/// The classification unit: `days()` consecutive snapshots ending the day
/// before `target_date`, oldest first.
struct EventWindow {
    std::string event_id;
    Label label = Label::null_event;
    Date target_date{};
    std::vector<GridSnapshot> snapshots;

    int days() const { return static_cast<int>(snapshots.size()); }
    const std::string& region_id() const { return snapshots.front().region_id; }

    bool operator==(const EventWindow&) const = default;
};

/// Checks window structure (1..5 days, consecutive dates ending at
/// target_date - 1, shared region and grid geometry). Snapshots themselves are
/// validated separately. Throws WindowError.
void validate_window(const EventWindow& w);

} // namespace tornado

#endif // TORNADO_CORE_HPP
