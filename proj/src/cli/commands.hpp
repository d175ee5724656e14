// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#ifndef TORNADO_CLI_COMMANDS_HPP
#define TORNADO_CLI_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tornado/classifiers.hpp"
#include "tornado/eval.hpp"
#include "tornado/synth.hpp"

namespace tornado::cli {

struct SynthOptions {
    SynthSpec spec;
    std::string out_dir = "synth_data";
};

struct BuildOptions {
    std::string catalog;
    std::string snapshots;
    int window_days = kMaxWindowDays;
    int min_gap_days = kDefaultMinGapDays;
    std::string out;
};

struct TrainOptions {
    std::vector<std::string> datasets;
    ModelSpec spec;
    int window_days = 0;   // 0: the dataset's
    unsigned threads = 0;
    std::string out;
};

struct EvaluateOptions {
    std::string model;
    std::vector<std::string> datasets;
    int test_year = kDefaultTestYear;
    double threshold = kDefaultThreshold;
    std::string json_out;
    std::string table_out;
    std::string predictions_out;
};

struct AblateOptions {
    std::vector<std::string> datasets;
    int test_year = kDefaultTestYear;
    std::uint64_t seed = 0;
    std::vector<int> windows{5, 4, 3, 2, 1};
    std::vector<std::string> kinds;
    double threshold = kDefaultThreshold;
    unsigned threads = 0;
    std::string json_out;
    std::string table_out;
};

struct MonitorOptions {
    std::string model;
    int window_days = 0;   // 0: derived from the model
    double threshold = kDefaultThreshold;
    std::vector<std::string> snapshots;
};

// Each returns an exit status and throws tornado::Error on data errors.
int cmd_synth(const SynthOptions& o, std::ostream& out);
int cmd_build_dataset(const BuildOptions& o, std::ostream& out);
int cmd_train(const TrainOptions& o, std::ostream& out);
int cmd_evaluate(const EvaluateOptions& o, std::ostream& out);
int cmd_ablate(const AblateOptions& o, std::ostream& out);
int cmd_monitor(const MonitorOptions& o, std::ostream& out, std::ostream& err, std::istream& in);

} // namespace tornado::cli

#endif // TORNADO_CLI_COMMANDS_HPP
