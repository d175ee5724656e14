// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#ifndef TORNADO_MONITOR_HPP
#define TORNADO_MONITOR_HPP

#include <deque>
#include <map>
#include <optional>
#include <string>

#include "tornado/classifiers.hpp"
#include "tornado/core.hpp"

namespace tornado {

struct AlertRecord {
    std::string region_id;
    Date target_date{};
    double probability = 0.0;
    bool alert = false;
    std::string model_id;
    int window_days = 0;

    bool operator==(const AlertRecord&) const = default;
};

/// One JSON object, no trailing newline. The probability is written with
/// round-trip precision.
std::string alert_json(const AlertRecord& a);

struct MonitorEvent {
    std::optional<AlertRecord> alert;
    std::optional<std::string> diagnostic;
};

/// Rolling per-region buffers of daily snapshots. Snapshots must arrive in
/// date order per region; a skipped day or a changed grid flushes the
/// region's buffer.
class Monitor {
public:
    /// Throws LengthMismatchError when the model was not trained on
    /// `window_days`-day windows.
    Monitor(const TrainedModel& model, std::string model_id, int window_days, double threshold);

    /// Validates and buffers `s`; emits an alert once the region holds
    /// window_days consecutive days. Invalid, duplicate or out-of-order
    /// snapshots are skipped with a diagnostic.
    MonitorEvent push(const GridSnapshot& s);

    /// Buffered days of `region_id`.
    std::size_t buffered(const std::string& region_id) const;

private:
    struct RegionState {
        std::deque<GridSnapshot> buffer;
        std::optional<Date> last_date;
    };

    const TrainedModel& model_;
    std::string model_id_;
    int window_days_;
    double threshold_;
    std::map<std::string, RegionState> regions_;
};

} // namespace tornado

#endif // TORNADO_MONITOR_HPP
