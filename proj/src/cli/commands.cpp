// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <istream>
#include <ostream>
#include <set>

#include <json.hpp>

#include "tornado/cli.hpp"
#include "tornado/errors.hpp"
#include "tornado/featurize.hpp"
#include "tornado/ingestion.hpp"
#include "tornado/monitor.hpp"

namespace tornado::cli {

namespace fs = std::filesystem;

namespace {

Dataset load_datasets(const std::vector<std::string>& paths) {
    Dataset all;
    std::string inputs;
    for (const auto& p : paths) {
        Dataset d = parse_dataset(read_file(p));
        if (all.windows.empty() && all.provenance.empty()) {
            all.provenance = d.provenance;
        }
        inputs += (inputs.empty() ? "" : ",") + p;
        for (auto& w : d.windows) {
            all.windows.push_back(std::move(w));
        }
    }
    all.provenance["inputs"] = inputs;
    if (!all.windows.empty()) {
        validate_dataset(all);
    }
    return all;
}

void write_if(const std::string& path, std::string_view bytes) {
    if (!path.empty()) {
        write_file(path, bytes);
    }
}

std::string spec_summary(const TrainedModel& m) {
    return std::string(to_string(m.kind())) + ", " + std::to_string(m.window_days()) + "-day windows, " +
           std::to_string(m.feature_length()) + " features";
}

} // namespace

int cmd_synth(const SynthOptions& o, std::ostream& out) {
    const SynthResult r = generate_dataset(o.spec);
    const fs::path root(o.out_dir);
    const fs::path snapshots = root / "snapshots";
    std::size_t files = 0;
    for (const auto& w : r.dataset.windows) {
        for (const auto& s : w.snapshots) {
            write_file(snapshot_path(snapshots, s.region_id, s.date), serialize_snapshot(s));
            ++files;
        }
    }
    write_file(root / "catalog.csv", serialize_event_catalog(r.catalog));
    write_file(root / "dataset.json", serialize_dataset(r.dataset));

    char err[32];
    std::snprintf(err, sizeof err, "%.3g", r.oracle.bayes_error());
    out << "synth: " << r.dataset.windows.size() << " windows (" << r.dataset.count(Label::tornado) << " tornado, "
        << r.dataset.count(Label::null_event) << " null), " << files << " snapshot files, bayes error " << err
        << "\n";
    out << "wrote " << (root / "catalog.csv").string() << ", " << (root / "dataset.json").string() << ", "
        << snapshots.string() << "/\n";
    return kExitOk;
}

int cmd_build_dataset(const BuildOptions& o, std::ostream& out) {
    const auto catalog = parse_event_catalog(read_file(o.catalog));
    std::vector<CatalogEntry> candidates;
    for (const auto& e : catalog) {
        if (e.label == Label::null_event) {
            candidates.push_back(e);
        }
    }
    const auto tornadoes = tornado_dates_by_region(catalog);
    const auto kept = select_negatives(candidates, tornadoes, o.min_gap_days);
    std::set<std::string> kept_ids;
    for (const auto& e : kept) {
        kept_ids.insert(e.event_id);
    }
    std::vector<CatalogEntry> selected;
    for (const auto& e : catalog) {
        if (e.label == Label::tornado || kept_ids.count(e.event_id) != 0) {
            selected.push_back(e);
        }
    }
    const std::size_t filtered = candidates.size() - kept.size();

    Dataset d = assemble_dataset(selected, directory_source(o.snapshots), o.window_days);
    d.provenance["min_gap_days"] = std::to_string(o.min_gap_days);
    d.provenance["filtered_nulls"] = std::to_string(filtered);
    d.provenance["source"] = "catalog:" + o.catalog;
    write_file(o.out, serialize_dataset(d));

    out << "catalog: " << catalog.size() << " entries (" << catalog.size() - candidates.size() << " tornado, "
        << candidates.size() << " null)\n";
    out << "filtered: " << filtered << " null events within " << o.min_gap_days << " days of a tornado\n";
    out << "skipped: " << d.provenance["skipped_incomplete"] << " incomplete windows\n";
    out << "dataset: " << d.windows.size() << " windows (" << d.count(Label::tornado) << " tornado, "
        << d.count(Label::null_event) << " null) -> " << o.out << "\n";
    return kExitOk;
}

int cmd_train(const TrainOptions& o, std::ostream& out) {
    Dataset d = load_datasets(o.datasets);
    if (d.windows.empty()) {
        throw EmptyDatasetError("no windows to train on", 0);
    }
    if (o.window_days != 0 && o.window_days != d.window_days()) {
        d = truncate_dataset(d, o.window_days);
    }
    const TrainedModel m = fit(o.spec, feature_matrix(d), labels_of(d), FitOptions{o.threads});
    const std::string bytes = serialize_model(m);
    write_file(o.out, bytes);
    out << "model " << model_id(m.kind(), bytes) << " (" << spec_summary(m) << ") trained on "
        << d.windows.size() << " windows -> " << o.out << "\n";
    return kExitOk;
}

int cmd_evaluate(const EvaluateOptions& o, std::ostream& out) {
    const std::string bytes = read_file(o.model);
    const TrainedModel m = deserialize_model(bytes);
    const std::string id = model_id(m.kind(), bytes);
    const Dataset all = load_datasets(o.datasets);
    const Dataset test = split_by_year(all, o.test_year).test;
    if (test.windows.empty()) {
        throw Error("no events in test year " + std::to_string(o.test_year));
    }

    const auto probs = predict_dataset(m, test);
    const auto truth = labels_of(test);
    EvalReport report;
    report.threshold = o.threshold;
    report.cells.push_back({m.spec(), m.window_days(), confusion(probs, truth, o.threshold)});
    report.metadata["model_id"] = id;
    report.metadata["test_year"] = std::to_string(o.test_year);
    report.metadata["test_windows"] = std::to_string(test.windows.size());
    report.metadata["test_tornado"] = std::to_string(test.count(Label::tornado));

    if (!o.predictions_out.empty()) {
        std::string lines;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            const auto& w = test.windows[i];
            nlohmann::ordered_json j;
            j["event_id"] = w.event_id;
            j["region_id"] = w.region_id();
            j["target_date"] = format_date(w.target_date);
            j["label"] = std::string(to_string(w.label));
            j["probability"] = probs[i];
            lines += j.dump() + "\n";
        }
        write_file(o.predictions_out, lines);
    }
    const std::string table = report_table(report);
    write_if(o.json_out, report_json(report));
    write_if(o.table_out, table);

    const auto& c = report.cells.front().counts;
    out << table;
    out << "model " << id << " on " << test.windows.size() << " test windows (" << o.test_year << "): tp=" << c.tp
        << " fp=" << c.fp << " tn=" << c.tn << " fn=" << c.fn << "\n";
    return kExitOk;
}

int cmd_ablate(const AblateOptions& o, std::ostream& out) {
    std::vector<ModelSpec> specs;
    for (const ModelSpec& s : default_specs(o.seed)) {
        if (o.kinds.empty() ||
            std::find(o.kinds.begin(), o.kinds.end(), std::string(to_string(s.kind))) != o.kinds.end()) {
            specs.push_back(s);
        }
    }
    const Dataset all = load_datasets(o.datasets);
    const YearSplit split = split_by_year(all, o.test_year);
    if (split.train.windows.empty() || split.test.windows.empty()) {
        throw Error("year split leaves an empty side: " + std::to_string(split.train.windows.size()) +
                    " train, " + std::to_string(split.test.windows.size()) + " test windows (test year " +
                    std::to_string(o.test_year) + ")");
    }
    EvalReport report = run_ablation(split.train, split.test, specs, o.windows, o.threshold, FitOptions{o.threads});
    report.metadata["test_year"] = std::to_string(o.test_year);
    report.metadata["seed"] = std::to_string(o.seed);
    const std::string table = report_table(report);
    write_if(o.json_out, report_json(report));
    write_if(o.table_out, table);
    out << table << "\n" << lead_time_table(report);
    return kExitOk;
}

int cmd_monitor(const MonitorOptions& o, std::ostream& out, std::ostream& err, std::istream& in) {
    const std::string bytes = read_file(o.model);
    const TrainedModel m = deserialize_model(bytes);
    const int window_days = o.window_days == 0 ? m.window_days() : o.window_days;
    Monitor monitor(m, model_id(m.kind(), bytes), window_days, o.threshold);

    auto feed = [&](const std::string& entry) {
        try {
            const bool inline_doc = entry.find_first_not_of(" \t") != std::string::npos &&
                                    entry[entry.find_first_not_of(" \t")] == '{';
            const GridSnapshot s = parse_snapshot_file(inline_doc ? entry : read_file(entry));
            const MonitorEvent ev = monitor.push(s);
            if (ev.diagnostic) {
                err << "monitor: " << *ev.diagnostic << "\n";
            }
            if (ev.alert) {
                out << alert_json(*ev.alert) << "\n";
                out.flush();
            }
        } catch (const Error& e) {
            err << "monitor: skipped " << (entry.size() > 80 ? entry.substr(0, 80) + "..." : entry) << ": "
                << e.what() << "\n";
        }
    };

    if (!o.snapshots.empty()) {
        for (const auto& p : o.snapshots) {
            feed(p);
        }
    } else {
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (line.find_first_not_of(" \t") != std::string::npos) {
                feed(line);
            }
        }
    }
    return kExitOk;
}

} // namespace tornado::cli
