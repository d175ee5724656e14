// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include "tornado/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "tornado/errors.hpp"
#include "tornado/featurize.hpp"

namespace tornado {

namespace {

using ordered_json = nlohmann::ordered_json;

FeatureMatrix features_for(const Dataset& d, int days) {
    FeatureMatrix x(feature_length(days));
    for (const auto& w : d.windows) {
        x.push_back(build_feature_vector(truncate_window(w, days)).values);
    }
    return x;
}

std::string fixed2(const std::optional<double>& v) {
    if (!v) {
        return "undef";
    }
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.2f", *v);
    return buf;
}

std::string pad_right(std::string s, std::size_t width) {
    if (s.size() < width) {
        s.append(width - s.size(), ' ');
    }
    return s;
}

std::string center(const std::string& s, std::size_t width) {
    if (s.size() >= width) {
        return s;
    }
    const std::size_t left = (width - s.size()) / 2;
    return std::string(left, ' ') + s + std::string(width - s.size() - left, ' ');
}

std::string days_label(int days) { return std::to_string(days) + (days == 1 ? " Day" : " Days"); }

ordered_json metric(const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

} // namespace

void ConfusionCounts::add(Label truth, Label predicted) {
    if (truth == Label::tornado) {
        (predicted == Label::tornado ? tp : fn) += 1;
    } else {
        (predicted == Label::tornado ? fp : tn) += 1;
    }
}

std::optional<double> pod(const ConfusionCounts& c) {
    if (c.tp + c.fn == 0) {
        return std::nullopt;
    }
    return static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
}

std::optional<double> far(const ConfusionCounts& c) {
    if (c.tp + c.fp == 0) {
        return std::nullopt;
    }
    return static_cast<double>(c.fp) / static_cast<double>(c.tp + c.fp);
}

YearSplit split_by_year(const Dataset& d, int test_year) {
    YearSplit out;
    out.train.provenance = d.provenance;
    out.test.provenance = d.provenance;
    for (const auto& w : d.windows) {
        const int year = year_of(w.target_date);
        if (year > test_year) {
            throw FutureEventError(w.event_id, year, test_year);
        }
        (year == test_year ? out.test : out.train).windows.push_back(w);
    }
    return out;
}

EventWindow truncate_window(const EventWindow& w, int days) {
    if (days < 1 || days > w.days()) {
        throw RangeError("cannot keep " + std::to_string(days) + " days of a " + std::to_string(w.days()) +
                         "-day window");
    }
    EventWindow out;
    out.event_id = w.event_id;
    out.label = w.label;
    out.target_date = w.target_date;
    out.snapshots.assign(w.snapshots.end() - days, w.snapshots.end());
    return out;
}

Dataset truncate_dataset(const Dataset& d, int days) {
    Dataset out;
    out.provenance = d.provenance;
    out.windows.reserve(d.windows.size());
    for (const auto& w : d.windows) {
        out.windows.push_back(truncate_window(w, days));
    }
    return out;
}

std::vector<double> predict_dataset(const TrainedModel& model, const Dataset& d) {
    const int days = model.window_days();
    std::vector<double> out;
    out.reserve(d.windows.size());
    for (const auto& w : d.windows) {
        if (w.days() < days) {
            throw LengthMismatchError(model.feature_length(), feature_length(w.days()));
        }
        const auto fv = build_feature_vector(w.days() == days ? w : truncate_window(w, days));
        out.push_back(model.predict_proba(fv.values));
    }
    return out;
}

ConfusionCounts confusion(std::span<const double> probabilities, std::span<const Label> truth, double threshold) {
    ConfusionCounts c;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        c.add(truth[i], probabilities[i] >= threshold ? Label::tornado : Label::null_event);
    }
    return c;
}

EvalReport run_ablation(const Dataset& train, const Dataset& test, std::span<const ModelSpec> specs,
                        std::span<const int> windows, double threshold, const FitOptions& options) {
    std::vector<int> sizes(windows.begin(), windows.end());
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    for (int days : sizes) {
        if (days < 1 || days > train.window_days() || days > test.window_days()) {
            throw RangeError("ablation window " + std::to_string(days) + " is outside 1.." +
                             std::to_string(std::min(train.window_days(), test.window_days())));
        }
    }

    const auto y_train = labels_of(train);
    const auto y_test = labels_of(test);
    EvalReport report;
    report.threshold = threshold;
    report.metadata["train_windows"] = std::to_string(train.windows.size());
    report.metadata["train_tornado"] = std::to_string(train.count(Label::tornado));
    report.metadata["test_windows"] = std::to_string(test.windows.size());
    report.metadata["test_tornado"] = std::to_string(test.count(Label::tornado));

    std::map<int, std::pair<FeatureMatrix, FeatureMatrix>> features;
    for (int days : sizes) {
        features.emplace(days, std::make_pair(features_for(train, days), features_for(test, days)));
    }
    for (const auto& spec : specs) {
        for (int days : sizes) {
            const auto& [x_train, x_test] = features.at(days);
            ReportCell cell{spec, days, {}};
            try {
                const TrainedModel model = fit(spec, x_train, y_train, options);
                for (std::size_t i = 0; i < x_test.rows(); ++i) {
                    cell.counts.add(y_test[i], model.predict(x_test.row(i), threshold).decision);
                }
            } catch (const Error& e) {
                throw Error("ablation cell (" + std::string(to_string(spec.kind)) + ", " + days_label(days) +
                            ") failed: " + e.what());
            }
            report.cells.push_back(cell);
        }
    }
    return report;
}

std::string report_json(const EvalReport& r) {
    ordered_json j;
    j["format_version"] = 1;
    j["threshold"] = r.threshold;
    j["metadata"] = r.metadata;
    j["cells"] = ordered_json::array();
    for (const auto& c : r.cells) {
        ordered_json jc;
        jc["kind"] = std::string(to_string(c.spec.kind));
        jc["classifier"] = std::string(display_name(c.spec.kind));
        jc["seed"] = c.spec.seed;
        jc["window_days"] = c.window_days;
        jc["tp"] = c.counts.tp;
        jc["fp"] = c.counts.fp;
        jc["tn"] = c.counts.tn;
        jc["fn"] = c.counts.fn;
        jc["n"] = c.counts.total();
        jc["pod"] = metric(pod(c.counts));
        jc["far"] = metric(far(c.counts));
        j["cells"].push_back(std::move(jc));
    }
    return j.dump(2) + "\n";
}

std::string report_table(const EvalReport& r) {
    // Rows keep first-appearance order of specs; columns run from the
    // largest window down.
    std::vector<ModelSpec> rows;
    std::vector<int> cols;
    for (const auto& c : r.cells) {
        if (std::find(rows.begin(), rows.end(), c.spec) == rows.end()) {
            rows.push_back(c.spec);
        }
        if (std::find(cols.begin(), cols.end(), c.window_days) == cols.end()) {
            cols.push_back(c.window_days);
        }
    }
    std::sort(cols.begin(), cols.end(), std::greater<>());

    std::size_t name_width = std::string("Classifier").size();
    for (const auto& s : rows) {
        name_width = std::max(name_width, display_name(s.kind).size());
    }
    constexpr std::size_t kCell = 14;

    std::ostringstream os;
    os << pad_right("Classifier", name_width);
    for (int d : cols) {
        os << " |" << center(days_label(d), kCell);
    }
    os << "\n" << pad_right("", name_width);
    for (std::size_t i = 0; i < cols.size(); ++i) {
        os << " |" << center("POD    FAR", kCell);
    }
    os << "\n" << std::string(name_width, '-');
    for (std::size_t i = 0; i < cols.size(); ++i) {
        os << "-+" << std::string(kCell, '-');
    }
    os << "\n";
    for (const auto& s : rows) {
        os << pad_right(std::string(display_name(s.kind)), name_width);
        for (int d : cols) {
            auto it = std::find_if(r.cells.begin(), r.cells.end(),
                                   [&](const ReportCell& c) { return c.spec == s && c.window_days == d; });
            std::string text = "-";
            if (it != r.cells.end()) {
                text = pad_right(fixed2(pod(it->counts)), 5) + "  " + pad_right(fixed2(far(it->counts)), 5);
            }
            os << " |" << center(text, kCell);
        }
        os << "\n";
    }
    return os.str();
}

std::string lead_time_table(const EvalReport& r) {
    std::vector<const ReportCell*> best;
    for (const auto& c : r.cells) {
        auto it = std::find_if(best.begin(), best.end(), [&](const ReportCell* b) { return b->spec == c.spec; });
        if (it == best.end()) {
            best.push_back(&c);
            continue;
        }
        const double cand = pod(c.counts).value_or(-1.0);
        const double cur = pod((*it)->counts).value_or(-1.0);
        const double cand_far = far(c.counts).value_or(2.0);
        const double cur_far = far((*it)->counts).value_or(2.0);
        if (cand > cur || (cand == cur && cand_far < cur_far)) {
            *it = &c;
        }
    }
    std::size_t name_width = std::string("Approach").size();
    for (const auto* c : best) {
        name_width = std::max(name_width, display_name(c->spec.kind).size());
    }
    std::ostringstream os;
    os << pad_right("Approach", name_width) << " | POD   | FAR   | Advance\n";
    os << std::string(name_width, '-') << "-+-------+-------+--------\n";
    for (const auto* c : best) {
        os << pad_right(std::string(display_name(c->spec.kind)), name_width) << " | "
           << pad_right(fixed2(pod(c->counts)), 5) << " | " << pad_right(fixed2(far(c->counts)), 5) << " | "
           << (c->window_days == 1 ? std::string("1 day") : std::to_string(c->window_days) + " days") << "\n";
    }
    return os.str();
}

} // namespace tornado
