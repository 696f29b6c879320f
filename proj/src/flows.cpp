#include "drybulknet/flows.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "drybulknet/csv.hpp"
#include "drybulknet/errors.hpp"

namespace drybulk {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Days since 1970-01-01 for a civil date (proleptic Gregorian).
long long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const long long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2) / 5 + static_cast<unsigned>(d) - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long long>(doe) - 719468;
}

void civil_from_days(long long z, int& y, int& m, int& d) {
    z += 719468;
    const long long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long long yy = static_cast<long long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

bool parse_int_field(const std::string& s, size_t& pos, int digits, int& out) {
    if (pos + static_cast<size_t>(digits) > s.size()) return false;
    int v = 0;
    for (int i = 0; i < digits; ++i) {
        char c = s[pos + static_cast<size_t>(i)];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    pos += static_cast<size_t>(digits);
    out = v;
    return true;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

bool iequals(const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    }
    return true;
}

std::optional<double> parse_double(const std::string& raw) {
    std::string s = trim(raw);
    if (s.empty()) return std::nullopt;
    double v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
}

std::optional<long long> parse_ll(const std::string& raw) {
    std::string s = trim(raw);
    if (s.empty()) return std::nullopt;
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace

std::optional<Timestamp> parse_timestamp(const std::string& text) {
    std::string s = trim(text);
    if (s.empty()) return std::nullopt;
    size_t pos = 0;
    int y, mo, d, h, mi, se;
    if (!parse_int_field(s, pos, 4, y)) return std::nullopt;
    if (pos >= s.size() || s[pos] != '-') return std::nullopt;
    ++pos;
    if (!parse_int_field(s, pos, 2, mo)) return std::nullopt;
    if (pos >= s.size() || s[pos] != '-') return std::nullopt;
    ++pos;
    if (!parse_int_field(s, pos, 2, d)) return std::nullopt;
    if (mo < 1 || mo > 12 || d < 1 || d > 31) return std::nullopt;
    h = mi = se = 0;
    int off_sign = 0, off_h = 0, off_m = 0;
    if (pos < s.size()) {
        if (s[pos] != 'T' && s[pos] != ' ') return std::nullopt;
        ++pos;
        if (!parse_int_field(s, pos, 2, h)) return std::nullopt;
        if (pos >= s.size() || s[pos] != ':') return std::nullopt;
        ++pos;
        if (!parse_int_field(s, pos, 2, mi)) return std::nullopt;
        if (pos < s.size() && s[pos] == ':') {
            ++pos;
            if (!parse_int_field(s, pos, 2, se)) return std::nullopt;
        }
        if (h > 23 || mi > 59 || se > 60) return std::nullopt;
        if (pos < s.size() && s[pos] == '.') {
            ++pos;  // fractional seconds truncated
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        }
        if (pos < s.size()) {
            char z = s[pos];
            if (z == 'Z' || z == 'z') {
                ++pos;
            } else if (z == '+' || z == '-') {
                off_sign = (z == '+') ? 1 : -1;
                ++pos;
                if (!parse_int_field(s, pos, 2, off_h)) return std::nullopt;
                if (pos < s.size() && s[pos] == ':') ++pos;
                if (pos < s.size()) {
                    if (!parse_int_field(s, pos, 2, off_m)) return std::nullopt;
                }
            } else {
                return std::nullopt;
            }
        }
        if (pos != s.size()) return std::nullopt;
    }
    Timestamp ts = days_from_civil(y, mo, d) * 86400LL + h * 3600LL + mi * 60LL + se;
    ts -= off_sign * (off_h * 3600LL + off_m * 60LL);
    return ts;
}

CivilDate civil_from_timestamp(Timestamp ts) {
    long long days = ts / 86400;
    if (ts % 86400 < 0) --days;
    CivilDate c{};
    civil_from_days(days, c.year, c.month, c.day);
    return c;
}

Timestamp timestamp_from_civil(int year, int month, int day, int hour, int minute, int second) {
    return days_from_civil(year, month, day) * 86400LL + hour * 3600LL + minute * 60LL + second;
}

QuarterId QuarterId::next() const {
    return quarter == 4 ? QuarterId{year + 1, 1} : QuarterId{year, quarter + 1};
}

QuarterId QuarterId::prev() const {
    return quarter == 1 ? QuarterId{year - 1, 4} : QuarterId{year, quarter - 1};
}

std::string QuarterId::str() const {
    return std::to_string(year) + "Q" + std::to_string(quarter);
}

std::optional<QuarterId> QuarterId::parse(const std::string& text) {
    std::string s = trim(text);
    size_t qpos = s.find_first_of("Qq");
    if (qpos == std::string::npos || qpos == 0 || qpos + 1 >= s.size()) return std::nullopt;
    auto y = parse_ll(s.substr(0, qpos));
    auto q = parse_ll(s.substr(qpos + 1));
    if (!y || !q || *q < 1 || *q > 4) return std::nullopt;
    return QuarterId{static_cast<int>(*y), static_cast<int>(*q)};
}

QuarterId assign_quarter(Timestamp ts) {
    CivilDate c = civil_from_timestamp(ts);
    return QuarterId{c.year, (c.month + 2) / 3};
}

std::size_t Provenance::dropped_total() const {
    std::size_t total = 0;
    for (const auto& [rule, n] : dropped) total += n;
    return total;
}

namespace {

struct ColumnIndex {
    int flow_id, voyage_id, commodity_group, volume, dwt;
    int load_port_id, load_port_name, load_region, load_country;
    int discharge_port_id, discharge_port_name, discharge_region, discharge_country;
    int load_departed_at, discharge_arrived_at, days_total_duration, status;
    int category;  // -1 when absent
};

int find_column(const std::vector<std::string>& header, const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (trim(header[i]) == name) return static_cast<int>(i);
    }
    return -1;
}

int require_column(const std::vector<std::string>& header, const std::string& name) {
    int idx = find_column(header, name);
    if (idx < 0) throw DataError("missing required column: " + name);
    return idx;
}

const std::string& field(const std::vector<std::string>& row, int idx) {
    static const std::string empty;
    if (idx < 0 || static_cast<std::size_t>(idx) >= row.size()) return empty;
    return row[static_cast<std::size_t>(idx)];
}

}  // namespace

FlowTable parse_flows(std::istream& source, const ColumnMapping& schema,
                      const std::string& source_name) {
    csv::Reader reader(source);
    std::vector<std::string> header;
    if (!reader.next(header)) throw DataError("empty input: no header row");

    ColumnIndex col{};
    col.flow_id = require_column(header, schema.flow_id);
    col.voyage_id = require_column(header, schema.voyage_id);
    col.commodity_group = require_column(header, schema.commodity_group);
    col.volume = require_column(header, schema.volume);
    col.dwt = require_column(header, schema.dwt);
    col.load_port_id = require_column(header, schema.load_port_id);
    col.load_port_name = require_column(header, schema.load_port_name);
    col.load_region = require_column(header, schema.load_region);
    col.load_country = require_column(header, schema.load_country);
    col.discharge_port_id = require_column(header, schema.discharge_port_id);
    col.discharge_port_name = require_column(header, schema.discharge_port_name);
    col.discharge_region = require_column(header, schema.discharge_region);
    col.discharge_country = require_column(header, schema.discharge_country);
    col.load_departed_at = require_column(header, schema.load_departed_at);
    col.discharge_arrived_at = require_column(header, schema.discharge_arrived_at);
    col.days_total_duration = require_column(header, schema.days_total_duration);
    col.status = require_column(header, schema.status);
    col.category = find_column(header, schema.category);

    FlowTable table;
    table.provenance.source = source_name;
    std::unordered_set<std::string> seen_flow_ids;

    std::vector<std::string> row;
    std::size_t row_number = 0;
    auto reject = [&](const char* rule) {
        table.provenance.dropped[rule]++;
        table.provenance.rejected.push_back({row_number, rule});
    };

    while (reader.next(row)) {
        ++row_number;
        ++table.provenance.raw;
        if (row.size() == 1 && row[0].empty()) {  // blank line
            --table.provenance.raw;
            --row_number;
            continue;
        }
        if (row.size() < header.size()) {
            reject(kRuleShortRow);
            continue;
        }

        TradeFlowRecord rec;
        rec.flow_id = trim(field(row, col.flow_id));
        rec.voyage_id = trim(field(row, col.voyage_id));
        rec.commodity_group = trim(field(row, col.commodity_group));
        rec.status = trim(field(row, col.status));
        rec.category = col.category >= 0 ? trim(field(row, col.category)) : "";

        auto volume = parse_double(field(row, col.volume));
        auto dwt = parse_double(field(row, col.dwt));
        if (!volume || !dwt) {
            reject(kRuleUnparseableNumber);
            continue;
        }
        rec.volume = *volume;
        rec.dwt = *dwt;

        // Port ids may be blank (unknown port, cleaned later) but a
        // non-numeric non-blank id is a malformed row.
        const std::string& lp = field(row, col.load_port_id);
        const std::string& dp = field(row, col.discharge_port_id);
        if (!trim(lp).empty()) {
            rec.load_port_id = parse_ll(lp);
            if (!rec.load_port_id) {
                reject(kRuleUnparseableNumber);
                continue;
            }
        }
        if (!trim(dp).empty()) {
            rec.discharge_port_id = parse_ll(dp);
            if (!rec.discharge_port_id) {
                reject(kRuleUnparseableNumber);
                continue;
            }
        }
        rec.load_port_name = trim(field(row, col.load_port_name));
        rec.load_region = trim(field(row, col.load_region));
        rec.load_country = trim(field(row, col.load_country));
        rec.discharge_port_name = trim(field(row, col.discharge_port_name));
        rec.discharge_region = trim(field(row, col.discharge_region));
        rec.discharge_country = trim(field(row, col.discharge_country));

        const std::string& dep_raw = field(row, col.load_departed_at);
        if (trim(dep_raw).empty()) {
            reject(kRuleMissingTimestamp);
            continue;
        }
        auto departed = parse_timestamp(dep_raw);
        if (!departed) {
            reject(kRuleUnparseableTimestamp);
            continue;
        }
        rec.load_departed_at = *departed;

        const std::string& arr_raw = field(row, col.discharge_arrived_at);
        if (!trim(arr_raw).empty()) {
            auto arrived = parse_timestamp(arr_raw);
            if (!arrived) {
                reject(kRuleUnparseableTimestamp);
                continue;
            }
            rec.discharge_arrived_at = *arrived;
        }

        const std::string& dur_raw = field(row, col.days_total_duration);
        if (!trim(dur_raw).empty()) {
            auto dur = parse_double(dur_raw);
            if (!dur) {
                reject(kRuleUnparseableNumber);
                continue;
            }
            rec.days_total_duration = *dur;
        }

        if (rec.dwt <= 0 || rec.volume < 0 ||
            (rec.days_total_duration && *rec.days_total_duration < 0)) {
            reject(kRuleInvalidValue);
            continue;
        }
        if (rec.discharge_arrived_at && *rec.discharge_arrived_at < rec.load_departed_at) {
            reject(kRuleTimestampOrder);
            continue;
        }
        if (!rec.flow_id.empty() && !seen_flow_ids.insert(rec.flow_id).second) {
            reject(kRuleDuplicateFlowId);
            continue;
        }

        table.records.push_back(std::move(rec));
    }

    table.provenance.kept = table.records.size();
    return table;
}

FlowTable clean_flows(const FlowTable& table, const CleaningConfig& rules) {
    FlowTable out;
    out.provenance.source = table.provenance.source;
    out.provenance.raw = table.records.size();

    auto unknown_port = [&](const std::optional<long long>& id, const std::string& name) {
        return !id.has_value() || iequals(name, rules.unknown_port_sentinel);
    };

    std::size_t row_number = 0;
    for (const auto& rec : table.records) {
        ++row_number;
        const char* rule = nullptr;
        if (unknown_port(rec.load_port_id, rec.load_port_name) ||
            unknown_port(rec.discharge_port_id, rec.discharge_port_name)) {
            rule = kRuleUnknownPort;
        } else if (std::any_of(rules.excluded_categories.begin(), rules.excluded_categories.end(),
                               [&](const std::string& label) { return iequals(rec.category, label); })) {
            rule = kRuleNonTradeFlow;
        } else if (*rec.load_port_id == *rec.discharge_port_id) {
            rule = kRuleSelfLoop;
        }
        if (rule) {
            out.provenance.dropped[rule]++;
            out.provenance.rejected.push_back({row_number, rule});
        } else {
            out.records.push_back(rec);
        }
    }
    out.provenance.kept = out.records.size();
    return out;
}

bool QuarterWindow::contains(QuarterId q) const {
    if (from && q < *from) return false;
    if (to && *to < q) return false;
    return true;
}

FlowTable slice(const FlowTable& table, const LayerFilter& layer, const QuarterWindow& window) {
    if (layer.commodity) {
        std::set<std::string> known;
        for (const auto& rec : table.records) known.insert(rec.commodity_group);
        if (!known.count(*layer.commodity)) {
            std::string msg = "unknown layer label '" + *layer.commodity + "'; known labels:";
            for (const auto& label : known) msg += " '" + label + "'";
            throw DataError(msg);
        }
    }

    FlowTable out;
    out.provenance.source = table.provenance.source;
    out.provenance.raw = table.records.size();
    for (const auto& rec : table.records) {
        if (layer.commodity && rec.commodity_group != *layer.commodity) continue;
        if (!window.contains(assign_quarter(rec.load_departed_at))) continue;
        out.records.push_back(rec);
    }
    out.provenance.kept = out.records.size();
    out.provenance.dropped["sliced_out"] = out.provenance.raw - out.provenance.kept;
    if (out.provenance.dropped["sliced_out"] == 0) out.provenance.dropped.erase("sliced_out");
    return out;
}

DescriptiveStats duration_stats(const FlowTable& table) {
    std::vector<double> durations;
    durations.reserve(table.records.size());
    for (const auto& rec : table.records) {
        if (rec.days_total_duration) durations.push_back(*rec.days_total_duration);
    }
    if (durations.empty()) throw DataError("no durations");

    std::sort(durations.begin(), durations.end());
    const std::size_t n = durations.size();

    auto quantile = [&](double q) {
        // linear interpolation between closest ranks
        double pos = q * static_cast<double>(n - 1);
        std::size_t lo = static_cast<std::size_t>(pos);
        std::size_t hi = std::min(lo + 1, n - 1);
        double frac = pos - static_cast<double>(lo);
        return durations[lo] * (1.0 - frac) + durations[hi] * frac;
    };

    DescriptiveStats s;
    s.count = n;
    double sum = 0;
    for (double d : durations) sum += d;
    s.mean = sum / static_cast<double>(n);
    double ss = 0;
    for (double d : durations) ss += (d - s.mean) * (d - s.mean);
    s.std_dev = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    s.min = durations.front();
    s.max = durations.back();
    s.p25 = quantile(0.25);
    s.p50 = quantile(0.50);
    s.p75 = quantile(0.75);
    return s;
}

YoYReport yoy_volume_change(const FlowTable& table, const std::string& load_country,
                            const LayerFilter& layer) {
    // volume by (year, discharge region)
    std::map<int, std::map<std::string, double>> volumes;
    for (const auto& rec : table.records) {
        if (rec.load_country != load_country) continue;
        if (layer.commodity && rec.commodity_group != *layer.commodity) continue;
        int year = civil_from_timestamp(rec.load_departed_at).year;
        volumes[year][rec.discharge_region] += rec.volume;
    }
    if (volumes.size() < 2) throw DataError("insufficient history: need >= 2 years");

    YoYReport report;
    report.load_country = load_country;
    for (const auto& [year, by_region] : volumes) {
        report.years.push_back(year);
        double total = 0;
        for (const auto& [region, v] : by_region) total += v;
        report.total_volume[year] = total;
    }

    const int first_year = report.years.front();
    const int last_year = report.years.back();
    report.period_total_change = report.total_volume[last_year] - report.total_volume[first_year];

    std::set<std::string> regions;
    for (const auto& [year, by_region] : volumes)
        for (const auto& [region, v] : by_region) regions.insert(region);

    auto volume_of = [&](int year, const std::string& region) {
        auto yit = volumes.find(year);
        if (yit == volumes.end()) return 0.0;
        auto rit = yit->second.find(region);
        return rit == yit->second.end() ? 0.0 : rit->second;
    };

    for (std::size_t i = 0; i < report.years.size(); ++i) {
        int year = report.years[i];
        bool has_prior = i > 0;
        int prior = has_prior ? report.years[i - 1] : 0;
        for (const auto& region : regions) {
            YoYRegionEntry entry;
            entry.year = year;
            entry.region = region;
            entry.volume = volume_of(year, region);
            if (has_prior) {
                double prev = volume_of(prior, region);
                double change = entry.volume - prev;
                entry.pct_change = prev > 0 ? 100.0 * change / prev : kNaN;
                entry.contribution_share = report.period_total_change != 0
                                               ? change / report.period_total_change
                                               : 0.0;
            } else {
                entry.pct_change = kNaN;
                entry.contribution_share = 0.0;
            }
            report.entries.push_back(std::move(entry));
        }
        if (has_prior) {
            double prev_total = report.total_volume[prior];
            report.total_pct_change[year] =
                prev_total > 0 ? 100.0 * (report.total_volume[year] - prev_total) / prev_total : kNaN;
        }
    }
    return report;
}

}  // namespace drybulk
