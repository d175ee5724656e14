// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#ifndef TORNADO_EVAL_HPP
#define TORNADO_EVAL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tornado/classifiers.hpp"
#include "tornado/core.hpp"
#include "tornado/ingestion.hpp"

namespace tornado {

inline constexpr int kDefaultTestYear = 2017;

struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fn = 0;

    void add(Label truth, Label predicted);
    std::uint64_t total() const { return tp + fp + tn + fn; }
    bool operator==(const ConfusionCounts&) const = default;
};

/// Probability of detection tp / (tp + fn); nullopt when undefined (0/0).
std::optional<double> pod(const ConfusionCounts& c);
/// False alarm ratio fp / (tp + fp); nullopt when undefined (0/0).
std::optional<double> far(const ConfusionCounts& c);

struct YearSplit {
    Dataset train;
    Dataset test;
};

/// Windows whose target year equals `test_year` form the test set, earlier
/// ones the training set. Provenance is copied to both halves. Throws
/// FutureEventError for windows after `test_year`.
YearSplit split_by_year(const Dataset& d, int test_year);

/// Keeps the `days` most recent snapshots. Throws RangeError unless
/// 1 <= days <= w.days().
EventWindow truncate_window(const EventWindow& w, int days);
Dataset truncate_dataset(const Dataset& d, int days);

/// Tornado probabilities of `model` on every window, in dataset order.
/// Windows longer than the model's input are truncated to its most recent days.
std::vector<double> predict_dataset(const TrainedModel& model, const Dataset& d);

ConfusionCounts confusion(std::span<const double> probabilities, std::span<const Label> truth, double threshold);

struct ReportCell {
    ModelSpec spec;
    int window_days = 0;
    ConfusionCounts counts;
};

struct EvalReport {
    std::vector<ReportCell> cells;
    double threshold = kDefaultThreshold;
    std::map<std::string, std::string> metadata;
};

/// For each spec (in order) and window size (descending): truncate,
/// featurize, fit on `train`, score `test`. Fit errors are rethrown with the
/// failing cell named.
EvalReport run_ablation(const Dataset& train, const Dataset& test, std::span<const ModelSpec> specs,
                        std::span<const int> windows, double threshold = kDefaultThreshold,
                        const FitOptions& options = {});

/// Machine-readable report, metrics at full precision, undefined as null.
std::string report_json(const EvalReport& r);

/// Plain-text grid: one row per classifier, one (POD, FAR) column pair per
/// window size, two decimals, "undef" for 0/0.
std::string report_table(const EvalReport& r);

/// Best-POD cell per classifier as "Approach | POD | FAR | Advance" rows.
std::string lead_time_table(const EvalReport& r);

} // namespace tornado

#endif // TORNADO_EVAL_HPP
