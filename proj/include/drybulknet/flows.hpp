#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace drybulk {

// Seconds since the Unix epoch, UTC.
using Timestamp = std::int64_t;

// Parses ISO-8601-ish timestamps as they appear in trade-flow exports:
// "2015-06-11T12:47:07Z", "2015-06-11 00:53:28+00:00", optional fractional
// seconds (truncated). Returns nullopt on malformed input.
std::optional<Timestamp> parse_timestamp(const std::string& text);

struct CivilDate {
    int year;
    int month;  // 1..12
    int day;    // 1..31
};

CivilDate civil_from_timestamp(Timestamp ts);
Timestamp timestamp_from_civil(int year, int month, int day, int hour = 0,
                               int minute = 0, int second = 0);

struct QuarterId {
    int year = 0;
    int quarter = 0;  // 1..4

    auto operator<=>(const QuarterId&) const = default;

    QuarterId next() const;
    QuarterId prev() const;
    // "2015Q2"
    std::string str() const;
    static std::optional<QuarterId> parse(const std::string& text);
};

QuarterId assign_quarter(Timestamp ts);

// One laden voyage leg, load port -> discharge port.
struct TradeFlowRecord {
    std::string flow_id;
    std::string voyage_id;
    std::string commodity_group;
    double volume = 0.0;  // metric tons
    double dwt = 0.0;     // deadweight tons

    std::optional<long long> load_port_id;
    std::string load_port_name;
    std::string load_region;
    std::string load_country;

    std::optional<long long> discharge_port_id;
    std::string discharge_port_name;
    std::string discharge_region;
    std::string discharge_country;

    Timestamp load_departed_at = 0;  // binning key, required
    std::optional<Timestamp> discharge_arrived_at;
    std::optional<double> days_total_duration;
    std::string status;

    // Raw value of the configured flow-category column ("" when the input
    // has no such column); cleaning matches it against excluded labels.
    std::string category;
};

struct RejectedRow {
    std::size_t row = 0;  // 1-based data row number (header excluded)
    std::string rule;
};

struct Provenance {
    std::string source;
    std::size_t raw = 0;
    std::size_t kept = 0;
    std::map<std::string, std::size_t> dropped;  // rule -> count
    std::vector<RejectedRow> rejected;           // row-level detail

    std::size_t dropped_total() const;
};

struct FlowTable {
    std::vector<TradeFlowRecord> records;
    Provenance provenance;
};

// Maps logical fields to CSV header names. Defaults follow the trade-flow
// export schema this toolkit ingests.
struct ColumnMapping {
    std::string flow_id = "flow_id";
    std::string voyage_id = "voyage_id";
    std::string commodity_group = "commodity_group";
    std::string volume = "volume";
    std::string dwt = "dwt";
    std::string load_port_id = "load_port_id";
    std::string load_port_name = "load_port_name";
    std::string load_region = "load_region";
    std::string load_country = "load_country";
    std::string discharge_port_id = "discharge_port_id";
    std::string discharge_port_name = "discharge_port_name";
    std::string discharge_region = "discharge_region";
    std::string discharge_country = "discharge_country";
    std::string load_departed_at = "load_port_departed_at";
    std::string discharge_arrived_at = "discharge_port_arrived_at";
    std::string days_total_duration = "days_total_duration";
    std::string status = "status";
    // Optional: rows carry their category only when this column exists.
    std::string category = "flow_type";
};

// Row-rejection rules recorded by parse_flows.
inline constexpr const char* kRuleUnparseableNumber = "unparseable_number";
inline constexpr const char* kRuleUnparseableTimestamp = "unparseable_timestamp";
inline constexpr const char* kRuleMissingTimestamp = "missing_timestamp";
inline constexpr const char* kRuleInvalidValue = "invalid_value";
inline constexpr const char* kRuleDuplicateFlowId = "duplicate_flow_id";
inline constexpr const char* kRuleTimestampOrder = "timestamp_order";
inline constexpr const char* kRuleShortRow = "short_row";

// Drop rules recorded by clean_flows.
inline constexpr const char* kRuleUnknownPort = "unknown_port";
inline constexpr const char* kRuleNonTradeFlow = "non_trade_flow";
inline constexpr const char* kRuleSelfLoop = "self_loop";

// Throws DataError when a required column is missing; malformed rows are
// rejected individually and recorded in provenance.
FlowTable parse_flows(std::istream& source, const ColumnMapping& schema = {},
                      const std::string& source_name = "<stream>");

struct CleaningConfig {
    std::vector<std::string> excluded_categories = {"Transit", "Yard"};
    // A port is unknown when its id is missing or its name equals this
    // sentinel, case-insensitively.
    std::string unknown_port_sentinel = "unknown";
};

FlowTable clean_flows(const FlowTable& table, const CleaningConfig& rules = {});

struct LayerFilter {
    std::optional<std::string> commodity;  // nullopt = ALL

    static LayerFilter all() { return {}; }
    static LayerFilter only(std::string label) { return {std::move(label)}; }
};

struct QuarterWindow {
    std::optional<QuarterId> from;  // inclusive
    std::optional<QuarterId> to;    // inclusive

    static QuarterWindow all() { return {}; }
    bool contains(QuarterId q) const;
};

// Filters by commodity layer and load-departure quarter, preserving order.
// Throws DataError when the layer label is absent from the table.
FlowTable slice(const FlowTable& table, const LayerFilter& layer,
                const QuarterWindow& window);

struct DescriptiveStats {
    std::size_t count = 0;
    double mean = 0, std_dev = 0, min = 0, p25 = 0, p50 = 0, p75 = 0, max = 0;
};

// Stats over days_total_duration; quartiles by linear interpolation.
// Throws DataError when no record carries a duration.
DescriptiveStats duration_stats(const FlowTable& table);

struct YoYRegionEntry {
    int year = 0;
    std::string region;
    double volume = 0.0;
    // Percent change vs the same region's prior-year volume; NaN for the
    // first year or when the prior-year volume is zero.
    double pct_change = 0.0;
    // (This region-year's change) / (total change over the full period).
    double contribution_share = 0.0;
};

struct YoYReport {
    std::string load_country;
    std::vector<int> years;  // ascending
    std::vector<YoYRegionEntry> entries;
    std::map<int, double> total_volume;      // year -> volume
    std::map<int, double> total_pct_change;  // year -> percent change
    double period_total_change = 0.0;        // last-year total - first-year total
};

// Year-on-year export volumes for one load country, grouped by discharge
// region. Throws DataError with "insufficient history" under two years.
YoYReport yoy_volume_change(const FlowTable& table, const std::string& load_country,
                            const LayerFilter& layer = {});

}  // namespace drybulk
