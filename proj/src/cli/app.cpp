// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include <istream>
#include <ostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "tornado/cli.hpp"
#include "tornado/errors.hpp"
#include "tornado/ingestion.hpp"

namespace tornado::cli {

namespace {

constexpr const char* kConfigHelp =
    "Flags may also come from a file given by --config: one `key = value` per line, `#` comments, "
    "keys named like the long flags. Command-line flags override the file.";

// Removes `--config PATH` / `--config=PATH` and returns PATH.
std::string take_config(std::vector<std::string>& args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) {
                throw CLI::ArgumentMismatch("--config requires a file path");
            }
            path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            --i;
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            --i;
        }
    }
    return path;
}

const CLI::Validator kDate(
    [](std::string& s) -> std::string {
        return parse_date(s) ? std::string{} : "expected a date YYYY-MM-DD, got '" + s + "'";
    },
    "DATE");

const CLI::Validator kModelKind(
    [](std::string& s) -> std::string {
        return model_kind_from_string(s) ? std::string{} : "unknown classifier kind '" + s + "'";
    },
    "KIND");

void add_spec_flags(CLI::App* cmd, ModelSpec& spec, std::string& kind) {
    cmd->add_option("--kind", kind,
                    "gaussian_nb, decision_tree, random_forest, linear_svm, knn or adaboost")
        ->check(kModelKind)
        ->capture_default_str();
    cmd->add_option("--seed", spec.seed, "Seed for bootstrap, feature sampling and SVM shuffling")
        ->capture_default_str();
    cmd->add_option("--trees", spec.n_trees, "Random forest: number of trees")->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--max-features", spec.max_features,
                    "Tree/forest: features tried per split (0: ceil(sqrt(d)) for the forest, all for the tree)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--max-depth", spec.max_depth, "Tree/forest: depth limit (0: unlimited)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--min-samples-split", spec.min_samples_split, "Tree/forest: smallest node that is split")
        ->check(CLI::Range(2, 1 << 30))
        ->capture_default_str();
    cmd->add_option("--bootstrap", spec.bootstrap, "Random forest: bootstrap rows per tree (true/false)")
        ->capture_default_str();
    cmd->add_option("--k", spec.k, "k-NN: neighbours")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--rounds", spec.rounds, "AdaBoost: boosting rounds")->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--lambda", spec.lambda, "SVM: regularization strength")->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--epochs", spec.epochs, "SVM: passes over the data")->check(CLI::PositiveNumber)
        ->capture_default_str();
}

} // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err, std::istream& in) {
    CLI::App app{"tornadowatch: tornado early detection from gridded daily weather fields", "tornadowatch"};
    app.footer(kConfigHelp);
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    SynthOptions synth;
    std::string synth_start = format_date(synth.spec.start_date);
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic catalog, snapshot files and dataset");
    synth_cmd->add_option("--seed", synth.spec.seed, "Generator seed")->capture_default_str();
    synth_cmd->add_option("--tornado", synth.spec.n_tornado, "Tornado events")->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    synth_cmd->add_option("--null", synth.spec.n_null, "Null events")->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    synth_cmd->add_option("--separation", synth.spec.separation, "Class offset in anomaly-sigma units (>= 0)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    synth_cmd->add_option("--window-days", synth.spec.window_days, "Days per window")->check(CLI::Range(1, 5))
        ->capture_default_str();
    synth_cmd->add_option("--start-date", synth_start, "First day of the first window")->check(kDate)
        ->capture_default_str();
    synth_cmd->add_option("--regions", synth.spec.regions, "5x5 degree regions to spread events over")
        ->check(CLI::Range(1, kMaxSynthRegions))
        ->capture_default_str();
    synth_cmd->add_option("--out", synth.out_dir, "Output directory")->capture_default_str();

    BuildOptions build;
    auto* build_cmd = app.add_subcommand("build-dataset", "Assemble labeled windows from a catalog and snapshots");
    build_cmd->add_option("--catalog", build.catalog, "Event catalog CSV")->required()->check(CLI::ExistingFile);
    build_cmd->add_option("--snapshots", build.snapshots, "Snapshot root directory")
        ->required()
        ->check(CLI::ExistingDirectory);
    build_cmd->add_option("--window-days", build.window_days, "Days per window")->check(CLI::Range(1, 5))
        ->capture_default_str();
    build_cmd->add_option("--min-gap-days", build.min_gap_days,
                          "Minimum distance in days between a null event and any same-region tornado")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    build_cmd->add_option("--out", build.out, "Output dataset file")->required();

    TrainOptions train;
    std::string train_kind(to_string(train.spec.kind));
    auto* train_cmd = app.add_subcommand("train", "Fit one classifier and write a model file");
    train_cmd->add_option("--dataset", train.datasets, "Dataset file (repeatable)")->required();
    add_spec_flags(train_cmd, train.spec, train_kind);
    train_cmd->add_option("--window-days", train.window_days, "Train on the most recent N days (0: all)")
        ->check(CLI::Range(0, 5))
        ->capture_default_str();
    train_cmd->add_option("--threads", train.threads, "Forest worker threads (0: all cores)")->capture_default_str();
    train_cmd->add_option("--out", train.out, "Output model file")->required();

    EvaluateOptions eval;
    auto* eval_cmd = app.add_subcommand("evaluate", "Score a model on the test-year windows");
    eval_cmd->add_option("--model", eval.model, "Model file")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--dataset", eval.datasets, "Dataset file (repeatable)")->required();
    eval_cmd->add_option("--test-year", eval.test_year, "Windows of this year form the test set")
        ->capture_default_str();
    eval_cmd->add_option("--threshold", eval.threshold, "Alert when probability >= threshold")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    eval_cmd->add_option("--json", eval.json_out, "Write the JSON report here");
    eval_cmd->add_option("--table", eval.table_out, "Write the text table here");
    eval_cmd->add_option("--predictions", eval.predictions_out, "Write per-window probabilities as JSON lines");

    AblateOptions ablate;
    auto* ablate_cmd = app.add_subcommand("ablate", "Compare classifiers across window lengths");
    ablate_cmd->add_option("--dataset", ablate.datasets, "Dataset file (repeatable)")->required();
    ablate_cmd->add_option("--test-year", ablate.test_year, "Windows of this year form the test set")
        ->capture_default_str();
    ablate_cmd->add_option("--seed", ablate.seed, "Seed shared by every classifier spec")->capture_default_str();
    ablate_cmd->add_option("--windows", ablate.windows, "Window lengths, e.g. 5,4,3,2,1")
        ->delimiter(',')
        ->check(CLI::Range(1, 5))
        ->capture_default_str();
    ablate_cmd->add_option("--kinds", ablate.kinds, "Classifier kinds to include (default: all)")
        ->delimiter(',')
        ->check(kModelKind);
    ablate_cmd->add_option("--threshold", ablate.threshold, "Alert when probability >= threshold")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    ablate_cmd->add_option("--threads", ablate.threads, "Forest worker threads (0: all cores)")
        ->capture_default_str();
    ablate_cmd->add_option("--json", ablate.json_out, "Write the JSON report here");
    ablate_cmd->add_option("--table", ablate.table_out, "Write the text table here");

    MonitorOptions mon;
    auto* mon_cmd = app.add_subcommand(
        "monitor", "Stream daily snapshots and emit alert records as JSON lines. Without paths, reads one snapshot "
                   "path or inline snapshot document per line of standard input.");
    mon_cmd->add_option("--model", mon.model, "Model file")->required()->check(CLI::ExistingFile);
    mon_cmd->add_option("--window-days", mon.window_days, "Days per window (0: the model's)")
        ->check(CLI::Range(0, 5))
        ->capture_default_str();
    mon_cmd->add_option("--threshold", mon.threshold, "Alert when probability >= threshold")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    mon_cmd->add_option("snapshots", mon.snapshots, "Snapshot files in arrival order");

    for (auto* cmd : {synth_cmd, build_cmd, train_cmd, eval_cmd, ablate_cmd, mon_cmd}) {
        cmd->add_option("--config", "Read further flags from a key = value file");
    }

    try {
        std::vector<std::string> args = raw_args;
        const std::string config_path = take_config(args);
        if (!config_path.empty()) {
            const auto text = read_file(config_path);
            args = apply_config(args, parse_config(text));
        }
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n" << app.help() << "\n";
        return kExitUsage;
    }

    try {
        if (*synth_cmd) {
            synth.spec.start_date = *parse_date(synth_start);
            return cmd_synth(synth, out);
        }
        if (*build_cmd) {
            return cmd_build_dataset(build, out);
        }
        if (*train_cmd) {
            train.spec.kind = *model_kind_from_string(train_kind);
            train.spec.validate();
            return cmd_train(train, out);
        }
        if (*eval_cmd) {
            return cmd_evaluate(eval, out);
        }
        if (*ablate_cmd) {
            return cmd_ablate(ablate, out);
        }
        if (*mon_cmd) {
            return cmd_monitor(mon, out, err, in);
        }
    } catch (const SpecError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitDataError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitDataError;
    }
    return kExitUsage;
}

} // namespace tornado::cli
