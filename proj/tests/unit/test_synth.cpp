// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "tornado/errors.hpp"
#include "tornado/eval.hpp"
#include "tornado/synth.hpp"

using namespace tornado;

namespace {

SynthSpec small_spec(std::uint64_t seed, int nt, int nn, double sep) {
    SynthSpec s;
    s.seed = seed;
    s.n_tornado = nt;
    s.n_null = nn;
    s.separation = sep;
    return s;
}

} // namespace

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(small_spec(0, 0, 0, 1).validate(), SpecError);
    CHECK_THROWS_AS(small_spec(0, 1, 1, -1).validate(), SpecError);
    CHECK_THROWS_AS(small_spec(0, 1, 1, std::nan("")).validate(), SpecError);
    SynthSpec s = small_spec(0, 1, 1, 1);
    s.window_days = 6;
    CHECK_THROWS_AS(s.validate(), SpecError);
    s.window_days = 3;
    s.regions = 0;
    CHECK_THROWS_AS(s.validate(), SpecError);
}

TEST_CASE("generated data is valid, balanced and reproducible") {
    const SynthSpec spec = small_spec(3, 30, 20, 2.0);
    const SynthResult a = generate_dataset(spec);
    CHECK(a.dataset.count(Label::tornado) == 30);
    CHECK(a.dataset.count(Label::null_event) == 20);
    CHECK(a.catalog.size() == 50);
    CHECK_NOTHROW(validate_dataset(a.dataset));
    for (const auto& w : a.dataset.windows) {
        CHECK(w.days() == 5);
        for (const auto& s : w.snapshots) {
            CHECK_NOTHROW(validate_snapshot(s));
        }
    }
    for (std::size_t i = 0; i < a.catalog.size(); ++i) {
        CHECK(a.catalog[i].event_id == a.dataset.windows[i].event_id);
        CHECK(a.catalog[i].date == a.dataset.windows[i].target_date);
        CHECK(region_id_for(a.catalog[i].lat, a.catalog[i].lon) == a.dataset.windows[i].region_id());
    }
    const SynthResult b = generate_dataset(spec);
    CHECK(serialize_dataset(a.dataset) == serialize_dataset(b.dataset));
    CHECK(serialize_event_catalog(a.catalog) == serialize_event_catalog(b.catalog));

    const SynthResult c = generate_dataset(small_spec(4, 30, 20, 2.0));
    CHECK(serialize_dataset(c.dataset) != serialize_dataset(a.dataset));
}

TEST_CASE("catalog alternates 9- and 10-day null gaps") {
    SynthSpec spec = small_spec(1, 40, 40, 1.0);
    spec.regions = 4;
    const SynthResult r = generate_dataset(spec);
    const auto dates = tornado_dates_by_region(r.catalog);
    int gap9 = 0;
    int gap10 = 0;
    for (std::size_t i = 0; i + 1 < r.catalog.size(); i += 2) {
        REQUIRE(r.catalog[i].label == Label::tornado);
        REQUIRE(r.catalog[i + 1].label == Label::null_event);
        const auto gap = (r.catalog[i + 1].date - r.catalog[i].date).count();
        gap9 += gap == 9 ? 1 : 0;
        gap10 += gap == 10 ? 1 : 0;
    }
    CHECK(gap9 == 20);
    CHECK(gap10 == 20);

    std::vector<CatalogEntry> nulls;
    for (const auto& e : r.catalog) {
        if (e.label == Label::null_event) {
            nulls.push_back(e);
        }
    }
    CHECK(select_negatives(nulls, dates, 10).size() == 20);
    CHECK(select_negatives(nulls, dates, 9).size() == 40);

    // Windows of one region never share a day.
    std::map<std::string, std::set<Date>> used;
    for (const auto& w : r.dataset.windows) {
        for (const auto& s : w.snapshots) {
            CHECK(used[s.region_id].insert(s.date).second);
        }
    }
}

TEST_CASE("bayes error closed form") {
    const SynthResult five = generate_dataset(small_spec(1, 5, 5, 5.0));
    CHECK(five.oracle.bayes_error() < 1e-4);
    const SynthResult zero = generate_dataset(small_spec(1, 5, 5, 0.0));
    CHECK(zero.oracle.bayes_error() == 0.5);
    const SynthResult low = generate_dataset(small_spec(1, 5, 5, 0.2));
    CHECK(low.oracle.bayes_error() > 0.01);
    CHECK(low.oracle.bayes_error() < 0.5);
}

TEST_CASE("oracle agrees with labels at separation 5") {
    const SynthResult r = generate_dataset(small_spec(2024, 500, 500, 5.0));
    std::size_t agree = 0;
    for (const auto& w : r.dataset.windows) {
        agree += oracle_decide(r.oracle, w) == w.label ? 1 : 0;
    }
    CHECK(static_cast<double>(agree) / 1000.0 >= 0.999);
    for (const auto& w : r.dataset.windows) {
        if (w.label == Label::tornado) {
            CHECK(oracle_decide(r.oracle, w) == Label::tornado);
            break;
        }
    }
}

TEST_CASE("oracle error rate tracks the closed form at moderate separation") {
    // Separation 0.3 puts the Bayes error near 25%; 2000 windows give a
    // binomial sd near 1%.
    const SynthResult r = generate_dataset(small_spec(77, 1000, 1000, 0.3));
    std::size_t wrong = 0;
    for (const auto& w : r.dataset.windows) {
        wrong += oracle_decide(r.oracle, w) != w.label ? 1 : 0;
    }
    const double rate = static_cast<double>(wrong) / 2000.0;
    const double p = r.oracle.bayes_error();
    CHECK(p > 0.02);
    CHECK(std::abs(rate - p) <= 5.0 * std::sqrt(p * (1.0 - p) / 2000.0));
}

TEST_CASE("separation 0 reduces the oracle to the prior") {
    const SynthResult equal = generate_dataset(small_spec(5, 10, 10, 0.0));
    for (const auto& w : equal.dataset.windows) {
        CHECK(oracle_decide(equal.oracle, w) == Label::null_event);
    }
    const SynthResult more = generate_dataset(small_spec(5, 12, 8, 0.0));
    for (const auto& w : more.dataset.windows) {
        CHECK(oracle_decide(more.oracle, w) == Label::tornado);
    }
}

TEST_CASE("random forest is at chance on separation 0") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SynthSpec train_spec = small_spec(seed, 500, 500, 0.0);
        SynthSpec test_spec = small_spec(seed + 1000, 250, 250, 0.0);
        const SynthResult train = generate_dataset(train_spec);
        const SynthResult test = generate_dataset(test_spec);
        ModelSpec rf;
        rf.seed = seed;
        rf.n_trees = 50;
        const TrainedModel m = fit(rf, feature_matrix(train.dataset), labels_of(train.dataset));
        const auto probs = predict_dataset(m, test.dataset);
        const ConfusionCounts c = confusion(probs, labels_of(test.dataset), kDefaultThreshold);
        const double accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
        CAPTURE(seed);
        CHECK(accuracy >= 0.4);
        CHECK(accuracy <= 0.6);
    }
}
