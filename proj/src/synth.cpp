// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include "tornado/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "tornado/errors.hpp"
#include "tornado/rng.hpp"

namespace tornado {

namespace {

constexpr int kSignificantDigits = 6;

SynthOracle make_oracle(const SynthSpec& spec) {
    SynthOracle o;
    o.variables[index_of(Variable::temperature)] = {290.0, 3.0, 2.0, +1};
    o.variables[index_of(Variable::wind_u)] = {2.0, 3.0, 2.0, +1};
    o.variables[index_of(Variable::wind_v)] = {1.0, 3.0, 2.0, -1};
    o.variables[index_of(Variable::precipitation)] = {3e-3, 1e-3, 1e-3, 0};
    o.variables[index_of(Variable::column_rain_water)] = {1.0, 0.15, 0.15, +1};
    o.variables[index_of(Variable::large_scale_rain_rate)] = {5e-5, 1.5e-5, 1.5e-5, 0};
    o.variables[index_of(Variable::cloud_cover)] = {0.5, 0.1, 0.1, 0};
    o.separation = spec.separation;
    o.prior_tornado = static_cast<double>(spec.n_tornado) / static_cast<double>(spec.n_tornado + spec.n_null);
    o.window_days = spec.window_days;
    return o;
}

// Round to 6 significant digits so files stay compact and the value read
// back from a file equals the value in memory.
double quantize(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, kSignificantDigits);
    double out = 0.0;
    std::from_chars(buf, res.ptr, out);
    return out;
}

Layer synth_layer(const SynthVariable& sv, const VariableDescriptor& desc, double offset, Rng& rng) {
    const double anomaly = sv.sigma * rng.normal();
    std::vector<double> noise(kGridCells);
    for (double& e : noise) {
        e = rng.normal();
    }
    Layer layer = Layer::grid();
    const int n = kGridSide;
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            double box = 0.0;
            for (int dr = -1; dr <= 1; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) {
                    const int rr = (r + dr + n) % n;
                    const int cc = (c + dc + n) % n;
                    box += noise[static_cast<std::size_t>(rr * n + cc)];
                }
            }
            // The mean of 9 unit normals has sd 1/3.
            double v = sv.base + offset + anomaly + sv.tau * box / 3.0;
            v = std::clamp(v, desc.lower, desc.upper);
            layer(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = quantize(v);
        }
    }
    return layer;
}

RegionOrigin region_origin(int r) { return {25 + 5 * (r % 4), -105 + 5 * (r / 4)}; }

} // namespace

void SynthSpec::validate() const {
    if (n_tornado < 0 || n_null < 0 || n_tornado + n_null < 1) {
        throw SpecError("synth: need n_tornado, n_null >= 0 with at least one event");
    }
    if (!(separation >= 0.0) || !std::isfinite(separation)) {
        throw SpecError("synth: separation must be a finite value >= 0");
    }
    if (window_days < 1 || window_days > kMaxWindowDays) {
        throw SpecError("synth: window_days must be in 1.." + std::to_string(kMaxWindowDays));
    }
    if (regions < 1 || regions > kMaxSynthRegions) {
        throw SpecError("synth: regions must be in 1.." + std::to_string(kMaxSynthRegions));
    }
}

double SynthOracle::grid_mean_variance(Variable v) const {
    const auto& sv = variables[index_of(v)];
    // Each white-noise cell enters 9 boxes, so the grid mean of the texture
    // is (tau / 3) * 9 / 361 times a sum of 361 unit normals.
    const double cells = static_cast<double>(kGridCells);
    return sv.sigma * sv.sigma + 9.0 * sv.tau * sv.tau / cells;
}

double SynthOracle::log_posterior_ratio(const EventWindow& w) const {
    double llr = std::log(prior_tornado) - std::log(1.0 - prior_tornado);
    for (const auto& snap : w.snapshots) {
        for (const auto& desc : variable_schema()) {
            const auto& sv = variables[index_of(desc.id)];
            if (sv.offset_sign == 0 || separation == 0.0) {
                continue;
            }
            const auto values = snap.layer(desc.id).values();
            double sum = 0.0;
            for (double v : values) {
                sum += v;
            }
            const double z = sum / static_cast<double>(values.size());
            const double delta = sv.offset_sign * separation * sv.sigma;
            llr += delta * (z - sv.base - delta / 2.0) / grid_mean_variance(desc.id);
        }
    }
    return llr;
}

double SynthOracle::bayes_error() const {
    double d2 = 0.0;
    for (const auto& desc : variable_schema()) {
        const auto& sv = variables[index_of(desc.id)];
        if (sv.offset_sign != 0) {
            const double delta = separation * sv.sigma;
            d2 += delta * delta / grid_mean_variance(desc.id);
        }
    }
    d2 *= window_days;
    const double p1 = prior_tornado;
    const double p0 = 1.0 - prior_tornado;
    const double c = std::log(p1) - std::log(p0);
    if (d2 == 0.0) {
        return c > 0.0 ? p0 : p1;
    }
    const double d = std::sqrt(d2);
    return p1 * normal_cdf((-c - d2 / 2.0) / d) + p0 * (1.0 - normal_cdf((-c + d2 / 2.0) / d));
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

Label oracle_decide(const SynthOracle& o, const EventWindow& w) {
    return o.log_posterior_ratio(w) > 0.0 ? Label::tornado : Label::null_event;
}

SynthResult generate_dataset(const SynthSpec& spec) {
    spec.validate();
    SynthResult out;
    out.oracle = make_oracle(spec);

    // Schedule the catalog first.
    const int units = std::max(spec.n_tornado, spec.n_null);
    const Date first = spec.start_date + std::chrono::days(spec.window_days);
    std::vector<Date> cursor(static_cast<std::size_t>(spec.regions), first);
    std::vector<int> region_of_entry;
    for (int u = 0; u < units; ++u) {
        const int r = u % spec.regions;
        const RegionOrigin origin = region_origin(r);
        Date& at = cursor[static_cast<std::size_t>(r)];
        auto add = [&](Label label, Date date) {
            const std::size_t k = out.catalog.size();
            char id[48];
            std::snprintf(id, sizeof id, "s%llu-%06zu", static_cast<unsigned long long>(spec.seed), k);
            out.catalog.push_back({id, date, origin.lat0 + 2.25, origin.lon0 + 2.25, label});
            region_of_entry.push_back(r);
        };
        if (u < spec.n_tornado) {
            add(Label::tornado, at);
            if (u < spec.n_null) {
                at += std::chrono::days((u / spec.regions) % 2 == 0 ? 9 : 10);
            }
        }
        if (u < spec.n_null) {
            add(Label::null_event, at);
        }
        at += std::chrono::days(kDefaultMinGapDays);
    }

    out.dataset.windows.reserve(out.catalog.size());
    for (std::size_t k = 0; k < out.catalog.size(); ++k) {
        const auto& entry = out.catalog[k];
        const RegionOrigin origin = region_origin(region_of_entry[k]);
        const double offset_scale = entry.label == Label::tornado ? spec.separation : 0.0;
        Rng rng(derive_seed(spec.seed, k));
        EventWindow w;
        w.event_id = entry.event_id;
        w.label = entry.label;
        w.target_date = entry.date;
        for (int day = spec.window_days; day >= 1; --day) {
            GridSnapshot snap;
            snap.region_id = origin.id();
            snap.date = entry.date - std::chrono::days(day);
            snap.lat0 = origin.lat0;
            snap.lon0 = origin.lon0;
            for (const auto& desc : variable_schema()) {
                const auto& sv = out.oracle.variables[index_of(desc.id)];
                snap.layer(desc.id) = synth_layer(sv, desc, offset_scale * sv.sigma * sv.offset_sign, rng);
            }
            w.snapshots.push_back(std::move(snap));
        }
        out.dataset.windows.push_back(std::move(w));
    }

    char sep[32];
    auto res = std::to_chars(sep, sep + sizeof sep, spec.separation);
    out.dataset.provenance["source"] = "synthetic";
    out.dataset.provenance["seed"] = std::to_string(spec.seed);
    out.dataset.provenance["separation"] = std::string(sep, res.ptr);
    out.dataset.provenance["n_tornado"] = std::to_string(spec.n_tornado);
    out.dataset.provenance["n_null"] = std::to_string(spec.n_null);
    out.dataset.provenance["start_date"] = format_date(spec.start_date);
    out.dataset.provenance["regions"] = std::to_string(spec.regions);
    out.dataset.provenance["window_days"] = std::to_string(spec.window_days);
    return out;
}

} // namespace tornado
