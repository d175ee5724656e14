// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include "tornado/monitor.hpp"

#include <algorithm>

#include <json.hpp>

#include "tornado/errors.hpp"
#include "tornado/featurize.hpp"

namespace tornado {

namespace {

bool same_grid(const GridSnapshot& a, const GridSnapshot& b) {
    return a.lat0 == b.lat0 && a.lon0 == b.lon0 && a.resolution == b.resolution;
}

} // namespace

std::string alert_json(const AlertRecord& a) {
    nlohmann::ordered_json j;
    j["region_id"] = a.region_id;
    j["target_date"] = format_date(a.target_date);
    j["probability"] = a.probability;
    j["alert"] = a.alert;
    j["model_id"] = a.model_id;
    j["window_days"] = a.window_days;
    return j.dump();
}

Monitor::Monitor(const TrainedModel& model, std::string model_id, int window_days, double threshold)
    : model_(model), model_id_(std::move(model_id)), window_days_(window_days), threshold_(threshold) {
    if (window_days < 1 || window_days > kMaxWindowDays ||
        feature_length(window_days) != model.feature_length()) {
        throw LengthMismatchError(model.feature_length(), feature_length(std::clamp(window_days, 0, kMaxWindowDays)));
    }
}

MonitorEvent Monitor::push(const GridSnapshot& s) {
    MonitorEvent ev;
    try {
        validate_snapshot(s);
    } catch (const Error& e) {
        ev.diagnostic = "skipped snapshot " + s.region_id + " " + format_date(s.date) + ": " + e.what();
        return ev;
    }
    RegionState& st = regions_[s.region_id];
    if (st.last_date && s.date <= *st.last_date) {
        ev.diagnostic = "skipped snapshot " + s.region_id + " " + format_date(s.date) + ": not after " +
                        format_date(*st.last_date);
        return ev;
    }
    if (!st.buffer.empty() &&
        (s.date != st.buffer.back().date + std::chrono::days(1) || !same_grid(s, st.buffer.back()))) {
        st.buffer.clear();
    }
    st.last_date = s.date;
    st.buffer.push_back(s);
    while (st.buffer.size() > static_cast<std::size_t>(kMaxWindowDays)) {
        st.buffer.pop_front();
    }
    if (st.buffer.size() < static_cast<std::size_t>(window_days_)) {
        return ev;
    }

    EventWindow w;
    w.event_id = s.region_id + "@" + format_date(s.date);
    w.target_date = s.date + std::chrono::days(1);
    w.snapshots.assign(st.buffer.end() - window_days_, st.buffer.end());
    const auto fv = build_feature_vector(w);

    AlertRecord a;
    a.region_id = s.region_id;
    a.target_date = w.target_date;
    a.probability = model_.predict_proba(fv.values);
    a.alert = a.probability >= threshold_;
    a.model_id = model_id_;
    a.window_days = window_days_;
    ev.alert = std::move(a);
    return ev;
}

std::size_t Monitor::buffered(const std::string& region_id) const {
    auto it = regions_.find(region_id);
    return it == regions_.end() ? 0 : it->second.buffer.size();
}

} // namespace tornado
