// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#include "tornado/ingestion.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "tornado/errors.hpp"

namespace tornado {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kCatalogHeader = "event_id,date,lat,lon,label";

json parse_json(std::string_view bytes) {
    try {
        return json::parse(bytes.begin(), bytes.end());
    } catch (const json::parse_error& e) {
        throw SyntaxError("malformed JSON: " + std::string(e.what()), "byte " + std::to_string(e.byte));
    }
}

const json& require(const json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw SyntaxError(std::string("missing field '") + key + "'", path);
    }
    return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_string()) {
        throw SyntaxError(std::string("field '") + key + "' must be a string", path + "/" + key);
    }
    return v.get<std::string>();
}

double require_number(const json& obj, const char* key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_number()) {
        throw SyntaxError(std::string("field '") + key + "' must be a number", path + "/" + key);
    }
    return v.get<double>();
}

std::int64_t require_integer(const json& obj, const char* key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_number_integer()) {
        throw SyntaxError(std::string("field '") + key + "' must be an integer", path + "/" + key);
    }
    return v.get<std::int64_t>();
}

Date require_date(const json& obj, const char* key, const std::string& path) {
    const std::string text = require_string(obj, key, path);
    auto d = parse_date(text);
    if (!d) {
        throw SyntaxError("invalid date '" + text + "'", path + "/" + key);
    }
    return *d;
}

// File rows run south to north; memory rows north to south.
Layer layer_from_json(const json& rows, const std::string& key, const std::string& path) {
    if (!rows.is_array()) {
        throw SyntaxError("layer must be an array of rows", path);
    }
    const std::size_t n_rows = rows.size();
    if (n_rows == 0) {
        throw ShapeError("layer " + key + " has no rows");
    }
    const std::size_t n_cols = rows.front().is_array() ? rows.front().size() : 0;
    std::vector<double> values(n_rows * n_cols);
    for (std::size_t fr = 0; fr < n_rows; ++fr) {
        const json& row = rows[fr];
        const std::string row_path = path + "/" + std::to_string(fr);
        if (!row.is_array()) {
            throw SyntaxError("layer row must be an array", row_path);
        }
        if (row.size() != n_cols) {
            throw ShapeError("layer " + key + " row " + std::to_string(fr) + " holds " + std::to_string(row.size()) +
                             " values, expected " + std::to_string(n_cols));
        }
        const std::size_t mr = n_rows - 1 - fr;
        for (std::size_t c = 0; c < n_cols; ++c) {
            const json& v = row[c];
            if (!v.is_number()) {
                throw SyntaxError("cell must be a number", row_path + "/" + std::to_string(c));
            }
            values[mr * n_cols + c] = v.get<double>();
        }
    }
    return Layer(n_rows, n_cols, std::move(values));
}

GridSnapshot snapshot_from_json(const json& doc, const std::string& path) {
    if (!doc.is_object()) {
        throw SyntaxError("snapshot must be a JSON object", path.empty() ? "/" : path);
    }
    const std::int64_t version = require_integer(doc, "format_version", path);
    if (version != kSnapshotFormatVersion) {
        throw VersionError(version);
    }
    GridSnapshot s;
    s.region_id = require_string(doc, "region_id", path);
    s.date = require_date(doc, "date", path);
    s.lat0 = require_number(doc, "lat0", path);
    s.lon0 = require_number(doc, "lon0", path);
    s.resolution = require_number(doc, "resolution", path);

    const json& shape = require(doc, "shape", path);
    if (!shape.is_array() || shape.size() != 2 || !shape[0].is_number_integer() || !shape[1].is_number_integer()) {
        throw SyntaxError("shape must be [rows, cols]", path + "/shape");
    }
    const auto shape_rows = shape[0].get<std::int64_t>();
    const auto shape_cols = shape[1].get<std::int64_t>();
    if (shape_rows != static_cast<std::int64_t>(kGridSide) || shape_cols != static_cast<std::int64_t>(kGridSide)) {
        throw ShapeError("declared shape [" + std::to_string(shape_rows) + "," + std::to_string(shape_cols) +
                         "], expected [19,19]");
    }

    const json& vars = require(doc, "variables", path);
    if (!vars.is_object()) {
        throw SyntaxError("variables must be an object", path + "/variables");
    }
    for (const auto& [key, value] : vars.items()) {
        if (!variable_from_key(key)) {
            throw SyntaxError("unknown variable '" + key + "'", path + "/variables");
        }
    }
    for (const auto& desc : variable_schema()) {
        const std::string key(desc.key);
        auto it = vars.find(key);
        if (it == vars.end()) {
            throw MissingVariableError("snapshot is missing variable " + key, key);
        }
        s.layer(desc.id) = layer_from_json(*it, key, path + "/variables/" + key);
    }
    validate_snapshot(s);
    return s;
}

ordered_json snapshot_to_json(const GridSnapshot& s) {
    ordered_json doc;
    doc["format_version"] = kSnapshotFormatVersion;
    doc["region_id"] = s.region_id;
    doc["date"] = format_date(s.date);
    doc["lat0"] = s.lat0;
    doc["lon0"] = s.lon0;
    doc["resolution"] = s.resolution;
    doc["shape"] = {kGridSide, kGridSide};
    ordered_json vars = ordered_json::object();
    for (const auto& desc : variable_schema()) {
        const Layer& layer = s.layer(desc.id);
        ordered_json rows = ordered_json::array();
        for (std::size_t fr = 0; fr < layer.rows(); ++fr) {
            const std::size_t mr = layer.rows() - 1 - fr;
            ordered_json row = ordered_json::array();
            for (std::size_t c = 0; c < layer.cols(); ++c) {
                row.push_back(layer(mr, c));
            }
            rows.push_back(std::move(row));
        }
        vars[std::string(desc.key)] = std::move(rows);
    }
    doc["variables"] = std::move(vars);
    return doc;
}

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

bool parse_double(std::string_view s, double& out) {
    if (s.empty()) {
        return false;
    }
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(out);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

} // namespace

std::string RegionOrigin::id() const {
    return "r" + std::to_string(lat0) + "_" + std::to_string(lon0);
}

RegionOrigin region_of(double lat, double lon) {
    return {static_cast<int>(5.0 * std::floor(lat / 5.0)), static_cast<int>(5.0 * std::floor(lon / 5.0))};
}

std::size_t Dataset::count(Label label) const {
    return static_cast<std::size_t>(
        std::count_if(windows.begin(), windows.end(), [label](const EventWindow& w) { return w.label == label; }));
}

void validate_dataset(const Dataset& d) {
    std::unordered_map<std::string, std::size_t> seen;
    const int days = d.window_days();
    for (std::size_t i = 0; i < d.windows.size(); ++i) {
        const EventWindow& w = d.windows[i];
        validate_window(w);
        if (w.days() != days) {
            throw WindowError("window '" + w.event_id + "' has " + std::to_string(w.days()) +
                              " days, dataset uses " + std::to_string(days));
        }
        auto [it, inserted] = seen.emplace(w.event_id, i);
        if (!inserted) {
            throw DuplicateIdError(w.event_id, it->second, i);
        }
    }
}

GridSnapshot parse_snapshot_file(std::string_view bytes) { return snapshot_from_json(parse_json(bytes), ""); }

std::string serialize_snapshot(const GridSnapshot& s) { return snapshot_to_json(s).dump(); }

std::vector<CatalogEntry> parse_event_catalog(std::string_view bytes) {
    std::vector<CatalogEntry> entries;
    std::unordered_map<std::string, std::size_t> first_seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool header_seen = false;
    while (pos < bytes.size()) {
        std::size_t eol = bytes.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = bytes.size();
        }
        const std::string_view line = bytes.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        const std::string where = "line " + std::to_string(line_no);
        if (line.find('\r') != std::string_view::npos) {
            throw SyntaxError("carriage return in catalog; LF line endings required", where);
        }
        if (!header_seen) {
            if (line != kCatalogHeader) {
                throw SyntaxError("catalog header must be exactly '" + std::string(kCatalogHeader) + "'", where);
            }
            header_seen = true;
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != 5) {
            throw SyntaxError("expected 5 fields, got " + std::to_string(fields.size()), where);
        }
        CatalogEntry e;
        e.event_id = std::string(fields[0]);
        if (e.event_id.empty()) {
            throw SyntaxError("empty event_id", where);
        }
        auto date = parse_date(fields[1]);
        if (!date) {
            throw SyntaxError("invalid date '" + std::string(fields[1]) + "'", where);
        }
        e.date = *date;
        if (!parse_double(fields[2], e.lat) || !parse_double(fields[3], e.lon)) {
            throw SyntaxError("invalid coordinate", where);
        }
        if (e.lat < -90.0 || e.lat > 90.0) {
            throw RangeError("latitude " + std::string(fields[2]) + " outside [-90, 90] on " + where, line_no);
        }
        if (e.lon < -180.0 || e.lon >= 180.0) {
            throw RangeError("longitude " + std::string(fields[3]) + " outside [-180, 180) on " + where, line_no);
        }
        auto label = label_from_string(fields[4]);
        if (!label) {
            throw SyntaxError("invalid label '" + std::string(fields[4]) + "'", where);
        }
        e.label = *label;
        auto [it, inserted] = first_seen.emplace(e.event_id, line_no);
        if (!inserted) {
            throw DuplicateIdError(e.event_id, it->second, line_no);
        }
        entries.push_back(std::move(e));
    }
    if (!header_seen) {
        throw SyntaxError("empty catalog, header required", "line 1");
    }
    return entries;
}

std::string serialize_event_catalog(std::span<const CatalogEntry> entries) {
    std::string out(kCatalogHeader);
    out += '\n';
    for (const auto& e : entries) {
        out += e.event_id;
        out += ',';
        out += format_date(e.date);
        out += ',';
        out += format_double(e.lat);
        out += ',';
        out += format_double(e.lon);
        out += ',';
        out += to_string(e.label);
        out += '\n';
    }
    return out;
}

RegionDates tornado_dates_by_region(std::span<const CatalogEntry> catalog) {
    RegionDates out;
    for (const auto& e : catalog) {
        if (e.label == Label::tornado) {
            out[region_id_for(e.lat, e.lon)].insert(e.date);
        }
    }
    return out;
}

std::vector<CatalogEntry> select_negatives(std::span<const CatalogEntry> candidates,
                                           const RegionDates& tornado_dates, int min_gap_days) {
    std::vector<CatalogEntry> kept;
    const std::chrono::days gap{min_gap_days};
    for (const auto& c : candidates) {
        auto it = tornado_dates.find(region_id_for(c.lat, c.lon));
        if (it == tornado_dates.end()) {
            kept.push_back(c);
            continue;
        }
        const std::set<Date>& dates = it->second;
        // Only the nearest tornado on each side can violate the gap.
        auto after = dates.lower_bound(c.date);
        bool ok = true;
        if (after != dates.end() && *after - c.date < gap) {
            ok = false;
        }
        if (ok && after != dates.begin() && c.date - *std::prev(after) < gap) {
            ok = false;
        }
        if (ok) {
            kept.push_back(c);
        }
    }
    return kept;
}

Dataset assemble_dataset(std::span<const CatalogEntry> catalog, const SnapshotSource& source, int window_days) {
    if (window_days < 1 || window_days > kMaxWindowDays) {
        throw RangeError("window_days must be in 1..5, got " + std::to_string(window_days));
    }
    Dataset d;
    std::size_t skipped = 0;
    for (const auto& entry : catalog) {
        const std::string region = region_id_for(entry.lat, entry.lon);
        EventWindow w;
        w.event_id = entry.event_id;
        w.label = entry.label;
        w.target_date = entry.date;
        bool complete = true;
        for (int back = window_days; back >= 1; --back) {
            auto snap = source(region, entry.date - std::chrono::days{back});
            if (!snap) {
                complete = false;
                break;
            }
            w.snapshots.push_back(std::move(*snap));
        }
        if (!complete) {
            ++skipped;
            continue;
        }
        validate_window(w);
        d.windows.push_back(std::move(w));
    }
    d.provenance["catalog_entries"] = std::to_string(catalog.size());
    d.provenance["skipped_incomplete"] = std::to_string(skipped);
    d.provenance["window_days"] = std::to_string(window_days);
    if (d.windows.empty()) {
        throw EmptyDatasetError("no catalog entry yielded a complete " + std::to_string(window_days) +
                                    "-day window (" + std::to_string(skipped) + " skipped)",
                                skipped);
    }
    validate_dataset(d);
    return d;
}

std::string serialize_dataset(const Dataset& d) {
    // Windows are dumped one at a time to avoid holding the whole DOM.
    ordered_json head;
    head["format_version"] = kDatasetFormatVersion;
    head["schema"] = ordered_json::array();
    for (const auto& desc : variable_schema()) {
        head["schema"].push_back(std::string(desc.key));
    }
    head["window_days"] = d.window_days();
    head["provenance"] = d.provenance;
    std::string out = head.dump();
    out.pop_back();
    out += ",\"windows\":[";
    for (std::size_t i = 0; i < d.windows.size(); ++i) {
        const EventWindow& w = d.windows[i];
        ordered_json jw;
        jw["event_id"] = w.event_id;
        jw["label"] = std::string(to_string(w.label));
        jw["target_date"] = format_date(w.target_date);
        jw["snapshots"] = ordered_json::array();
        for (const auto& s : w.snapshots) {
            jw["snapshots"].push_back(snapshot_to_json(s));
        }
        if (i > 0) {
            out += ',';
        }
        out += jw.dump();
    }
    out += "]}";
    return out;
}

Dataset parse_dataset(std::string_view bytes) {
    const json doc = parse_json(bytes);
    if (!doc.is_object()) {
        throw SyntaxError("dataset must be a JSON object", "/");
    }
    const std::int64_t version = require_integer(doc, "format_version", "");
    if (version != kDatasetFormatVersion) {
        throw VersionError(version);
    }
    const json& schema = require(doc, "schema", "");
    const auto expected_schema = variable_schema();
    if (!schema.is_array() || schema.size() != expected_schema.size()) {
        throw SyntaxError("schema must list the 7 variables", "/schema");
    }
    for (std::size_t i = 0; i < expected_schema.size(); ++i) {
        if (!schema[i].is_string() || schema[i].get<std::string>() != expected_schema[i].key) {
            throw SyntaxError("schema order mismatch", "/schema/" + std::to_string(i));
        }
    }
    Dataset d;
    const json& prov = require(doc, "provenance", "");
    if (!prov.is_object()) {
        throw SyntaxError("provenance must be an object", "/provenance");
    }
    for (const auto& [k, v] : prov.items()) {
        if (!v.is_string()) {
            throw SyntaxError("provenance values must be strings", "/provenance/" + k);
        }
        d.provenance[k] = v.get<std::string>();
    }
    const json& windows = require(doc, "windows", "");
    if (!windows.is_array()) {
        throw SyntaxError("windows must be an array", "/windows");
    }
    d.windows.reserve(windows.size());
    for (std::size_t i = 0; i < windows.size(); ++i) {
        const json& jw = windows[i];
        const std::string path = "/windows/" + std::to_string(i);
        if (!jw.is_object()) {
            throw SyntaxError("window must be an object", path);
        }
        EventWindow w;
        w.event_id = require_string(jw, "event_id", path);
        const std::string label = require_string(jw, "label", path);
        auto parsed = label_from_string(label);
        if (!parsed) {
            throw SyntaxError("invalid label '" + label + "'", path + "/label");
        }
        w.label = *parsed;
        w.target_date = require_date(jw, "target_date", path);
        const json& snaps = require(jw, "snapshots", path);
        if (!snaps.is_array()) {
            throw SyntaxError("snapshots must be an array", path + "/snapshots");
        }
        for (std::size_t k = 0; k < snaps.size(); ++k) {
            w.snapshots.push_back(snapshot_from_json(snaps[k], path + "/snapshots/" + std::to_string(k)));
        }
        d.windows.push_back(std::move(w));
    }
    const std::int64_t declared_days = require_integer(doc, "window_days", "");
    if (declared_days != d.window_days()) {
        throw WindowError("declared window_days " + std::to_string(declared_days) + " does not match windows");
    }
    validate_dataset(d);
    return d;
}

std::filesystem::path snapshot_path(const std::filesystem::path& root, const std::string& region_id, Date date) {
    return root / region_id / (format_date(date) + ".json");
}

SnapshotSource directory_source(std::filesystem::path root) {
    return [root = std::move(root)](const std::string& region_id, Date date) -> std::optional<GridSnapshot> {
        const auto path = snapshot_path(root, region_id, date);
        std::error_code ec;
        if (!std::filesystem::is_regular_file(path, ec)) {
            return std::nullopt;
        }
        return parse_snapshot_file(read_file(path));
    };
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw Error("write failed for " + path.string());
    }
}

} // namespace tornado
