// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#ifndef TORNADO_TEST_FIXTURES_HPP
#define TORNADO_TEST_FIXTURES_HPP

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "tornado/cli.hpp"
#include "tornado/core.hpp"
#include "tornado/ingestion.hpp"
#include "tornado/rng.hpp"

namespace tornado::testing {

inline Layer random_layer(Rng& rng, double lo, double hi) {
    Layer l = Layer::grid();
    for (double& v : l.values()) {
        v = lo + (hi - lo) * rng.uniform();
    }
    return l;
}

inline GridSnapshot random_snapshot(Rng& rng, const std::string& region, Date date) {
    GridSnapshot s;
    s.region_id = region;
    s.date = date;
    s.lat0 = 35.0;
    s.lon0 = -100.0;
    for (const auto& d : variable_schema()) {
        const double lo = d.signed_component ? -20.0 : 0.0;
        const double hi = d.upper < 1e300 ? d.upper : 300.0;
        s.layer(d.id) = random_layer(rng, lo, hi);
    }
    return s;
}

inline EventWindow random_window(Rng& rng, const std::string& id, Label label, Date target, int days,
                                 const std::string& region = "r35_-100") {
    EventWindow w;
    w.event_id = id;
    w.label = label;
    w.target_date = target;
    for (int d = days; d >= 1; --d) {
        w.snapshots.push_back(random_snapshot(rng, region, target - std::chrono::days(d)));
    }
    return w;
}

/// Scratch directory removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& name)
        : path_(std::filesystem::temp_directory_path() /
                ("tornadowatch-" + name + "-" + std::to_string(::getpid()))) {
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string operator/(const std::string& leaf) const { return (path_ / leaf).string(); }

private:
    std::filesystem::path path_;
};

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

inline CliResult run_cli(const std::vector<std::string>& args, const std::string& input = {}) {
    std::ostringstream out;
    std::ostringstream err;
    std::istringstream in(input);
    CliResult r;
    r.code = cli::run(args, out, err, in);
    r.out = out.str();
    r.err = err.str();
    return r;
}

} // namespace tornado::testing

#endif // TORNADO_TEST_FIXTURES_HPP
