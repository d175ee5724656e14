// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#ifndef TORNADO_INGESTION_HPP
#define TORNADO_INGESTION_HPP

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tornado/core.hpp"

namespace tornado {

inline constexpr int kSnapshotFormatVersion = 1;
inline constexpr int kDatasetFormatVersion = 1;
inline constexpr int kDefaultMinGapDays = 10;

/// One row of the event catalog CSV.
struct CatalogEntry {
    std::string event_id;
    Date date{};
    double lat = 0.0;
    double lon = 0.0;
    Label label = Label::null_event;

    bool operator==(const CatalogEntry&) const = default;
};

/// South-west corner of the 5x5 degree monitoring grid containing a point.
/// Two events share a region iff their origins are equal.
struct RegionOrigin {
    int lat0 = 0;
    int lon0 = 0;

    std::string id() const;
    bool operator==(const RegionOrigin&) const = default;
};

RegionOrigin region_of(double lat, double lon);
inline std::string region_id_for(double lat, double lon) { return region_of(lat, lon).id(); }

/// A labeled collection of equally sized event windows.
struct Dataset {
    std::vector<EventWindow> windows;
    std::map<std::string, std::string> provenance;

    /// Days per window, 0 for an empty dataset.
    int window_days() const { return windows.empty() ? 0 : windows.front().days(); }
    std::size_t count(Label label) const;
};

/// Checks window invariants, a shared window length and unique event ids.
void validate_dataset(const Dataset& d);

// Snapshot file: one JSON document per region-day.
GridSnapshot parse_snapshot_file(std::string_view bytes);
std::string serialize_snapshot(const GridSnapshot& s);

// Event catalog: CSV with header `event_id,date,lat,lon,label`, LF endings,
// no quoting.
std::vector<CatalogEntry> parse_event_catalog(std::string_view bytes);
std::string serialize_event_catalog(std::span<const CatalogEntry> entries);

using RegionDates = std::map<std::string, std::set<Date>>;

/// Tornado dates of a catalog grouped by region id.
RegionDates tornado_dates_by_region(std::span<const CatalogEntry> catalog);

/// Keeps the null-event candidates that are at least `min_gap_days` whole
/// days away from every tornado in their region. Order is preserved.
std::vector<CatalogEntry> select_negatives(std::span<const CatalogEntry> candidates,
                                           const RegionDates& tornado_dates, int min_gap_days);

/// Returns the snapshot of `region_id` on `date`, or nullopt when absent.
using SnapshotSource = std::function<std::optional<GridSnapshot>(const std::string& region_id, Date date)>;

/// Builds one window per catalog entry from the `window_days` days before its
/// date. Entries with a missing snapshot are skipped; the skip count lands in
/// provenance["skipped_incomplete"]. Throws EmptyDatasetError when nothing
/// assembles.
Dataset assemble_dataset(std::span<const CatalogEntry> catalog, const SnapshotSource& source, int window_days);

std::string serialize_dataset(const Dataset& d);
Dataset parse_dataset(std::string_view bytes);

/// `<root>/<region_id>/<YYYY-MM-DD>.json`
std::filesystem::path snapshot_path(const std::filesystem::path& root, const std::string& region_id, Date date);
SnapshotSource directory_source(std::filesystem::path root);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

} // namespace tornado

#endif // TORNADO_INGESTION_HPP
