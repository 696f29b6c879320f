#include "drybulknet/jsonio.hpp"

#include <charconv>
#include <cmath>

#include "drybulknet/csv.hpp"

namespace drybulk {

using nlohmann::json;

std::string fmt_double(double v) {
    if (std::isnan(v)) return "";
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

namespace {

json num_or_null(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

}  // namespace

json to_json(const GlobalCentralityReport& r) {
    return json{{"n", r.n},     {"e", r.e},     {"k", r.k},
                {"phi", r.phi}, {"n_w", r.n_w}, {"p_w", r.p_w},
                {"d_w", r.d_w}, {"n_s", r.n_s}, {"p_s", r.p_s},
                {"d_s", r.d_s}, {"l", r.l},     {"c", r.c},
                {"a", num_or_null(r.a)}};
}

std::string report_csv(const GlobalCentralityReport& r) {
    std::string out = "n,e,k,phi,n_w,p_w,d_w,n_s,p_s,d_s,l,c,a\n";
    out += std::to_string(r.n) + "," + std::to_string(r.e) + "," + fmt_double(r.k) + "," +
           fmt_double(r.phi) + "," + std::to_string(r.n_w) + "," + fmt_double(r.p_w) + "," +
           std::to_string(r.d_w) + "," + std::to_string(r.n_s) + "," + fmt_double(r.p_s) +
           "," + std::to_string(r.d_s) + "," + fmt_double(r.l) + "," + fmt_double(r.c) +
           "," + fmt_double(r.a) + "\n";
    return out;
}

json graph_to_json(const TradeGraph& g) {
    json nodes = json::array();
    for (const auto& port : g.ports()) {
        nodes.push_back({{"port_id", port.id},
                         {"name", port.name},
                         {"region", port.region},
                         {"country", port.country}});
    }
    json edges = json::array();
    const auto& pairs = g.edges();
    const auto& weights = g.edge_weights();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        edges.push_back({{"src", g.port(pairs[i].first).id},
                         {"dst", g.port(pairs[i].second).id},
                         {"frequency", weights[i].frequency},
                         {"dwt_total", weights[i].dwt_total},
                         {"volume_total", weights[i].volume_total}});
    }
    return json{{"layer", g.layer_label()},
                {"window", g.window_label()},
                {"nodes", nodes},
                {"edges", edges}};
}

std::string graph_to_edge_csv(const TradeGraph& g) {
    std::string out = "src,dst,frequency,dwt_total,volume_total\n";
    const auto& pairs = g.edges();
    const auto& weights = g.edge_weights();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        out += std::to_string(g.port(pairs[i].first).id) + "," +
               std::to_string(g.port(pairs[i].second).id) + "," +
               std::to_string(weights[i].frequency) + "," + fmt_double(weights[i].dwt_total) +
               "," + fmt_double(weights[i].volume_total) + "\n";
    }
    return out;
}

std::string rejected_rows_csv(const Provenance& parsed, const Provenance& cleaned) {
    std::string out = "stage,row,rule\n";
    for (const auto& rej : parsed.rejected)
        out += "parse," + std::to_string(rej.row) + "," + rej.rule + "\n";
    for (const auto& rej : cleaned.rejected)
        out += "clean," + std::to_string(rej.row) + "," + rej.rule + "\n";
    return out;
}

json to_json(const DescriptiveStats& s) {
    return json{{"count", s.count}, {"mean", s.mean}, {"std", s.std_dev},
                {"min", s.min},     {"p25", s.p25},   {"p50", s.p50},
                {"p75", s.p75},     {"max", s.max}};
}

json to_json(const YoYReport& r) {
    json entries = json::array();
    for (const auto& e : r.entries) {
        entries.push_back({{"year", e.year},
                           {"region", e.region},
                           {"volume", e.volume},
                           {"pct_change", num_or_null(e.pct_change)},
                           {"contribution_share", num_or_null(e.contribution_share)}});
    }
    json totals = json::object();
    for (const auto& [year, volume] : r.total_volume)
        totals[std::to_string(year)] = volume;
    json total_pct = json::object();
    for (const auto& [year, pct] : r.total_pct_change)
        total_pct[std::to_string(year)] = num_or_null(pct);
    return json{{"load_country", r.load_country},
                {"years", r.years},
                {"entries", entries},
                {"total_volume", totals},
                {"total_pct_change", total_pct},
                {"period_total_change", r.period_total_change}};
}

json to_json(const SmallWorldReport& r) {
    json replicates = json::array();
    for (const auto& rep : r.replicates) {
        replicates.push_back({{"C", rep.C},
                              {"L", rep.dropped ? json(nullptr) : json(rep.L)},
                              {"gscc_n", rep.gscc_n},
                              {"dropped", rep.dropped}});
    }
    return json{{"L", r.L},
                {"L_rand", r.L_rand},
                {"C", r.C},
                {"C_rand", r.C_rand},
                {"C_latt", r.C_latt},
                {"sigma", r.sigma},
                {"omega", r.omega},
                {"n_replicates", r.n_replicates},
                {"n_dropped", r.n_dropped},
                {"seed", r.seed},
                {"swap_attempts", r.swap_attempts},
                {"lattice_k", r.lattice_k},
                {"lattice_k_lowered", r.lattice_k_lowered},
                {"replicates", replicates}};
}

json to_json(const QuarterlyDistanceMatrix& m) {
    json quarters = json::array();
    for (const auto& q : m.quarters) quarters.push_back(q.str());
    json values = json::array();  // row-major, null = missing
    for (const auto& row : m.values)
        for (double v : row) values.push_back(num_or_null(v));
    json usable = json::array();
    for (bool u : m.usable) usable.push_back(u);
    return json{{"quarters", quarters}, {"values", values}, {"usable", usable}};
}

std::string distance_matrix_csv(const QuarterlyDistanceMatrix& m) {
    std::string out = "quarter";
    for (const auto& q : m.quarters) out += "," + q.str();
    out += "\n";
    for (std::size_t i = 0; i < m.quarters.size(); ++i) {
        out += m.quarters[i].str();
        for (std::size_t j = 0; j < m.quarters.size(); ++j)
            out += "," + fmt_double(m.values[i][j]);
        out += "\n";
    }
    return out;
}

json to_json(const Dendrogram& d) {
    json leaves = json::array();
    for (const auto& q : d.leaves) leaves.push_back(q.str());
    json merges = json::array();
    for (const auto& m : d.merges)
        merges.push_back({{"a", m.a}, {"b", m.b}, {"height", m.height}, {"size", m.size}});
    return json{{"leaves", leaves}, {"merges", merges}};
}

json to_json(const BreakReport& r) {
    json quarters = json::array();
    for (const auto& q : r.quarters) quarters.push_back(q.str());
    json breaks = json::array();
    for (const auto& q : r.breaks) breaks.push_back(q.str());
    return json{{"quarters", quarters},
                {"labels", r.labels},
                {"breaks", breaks},
                {"contiguous", r.contiguous}};
}

json partition_to_json(const TradeGraph& g, const Partition& p) {
    json assignment = json::object();
    for (std::size_t v = 0; v < g.node_count(); ++v)
        assignment[std::to_string(g.port(static_cast<int>(v)).id)] = p.community[v];
    const char* weight = p.weight == WeightKind::frequency ? "frequency"
                         : p.weight == WeightKind::dwt     ? "dwt"
                                                           : "volume";
    return json{{"assignment", assignment},
                {"n_communities", p.n_communities},
                {"modularity", p.modularity},
                {"weight", weight},
                {"seed", p.seed},
                {"resolution", p.resolution}};
}

json transitions_to_json(const TransitionTable& t) {
    json nodes = json::array();
    for (const auto& side : t.before) {
        nodes.push_back({{"side", "before"},
                         {"community", side.community},
                         {"size", side.size},
                         {"shared_size", side.shared_size},
                         {"dominant_region", side.dominant_region},
                         {"tie_flag", side.region_tie}});
    }
    for (const auto& side : t.after) {
        nodes.push_back({{"side", "after"},
                         {"community", side.community},
                         {"size", side.size},
                         {"shared_size", side.shared_size},
                         {"dominant_region", side.dominant_region},
                         {"tie_flag", side.region_tie}});
    }
    json links = json::array();
    const std::size_t after_offset = t.before.size();
    for (const auto& link : t.links) {
        links.push_back({{"source", link.before_community},
                         {"target", after_offset + static_cast<std::size_t>(link.after_community)},
                         {"count", link.count}});
    }
    return json{{"nodes", nodes},
                {"links", links},
                {"shared_ports", t.shared_ports},
                {"entering_ports", t.entering_ports},
                {"exiting_ports", t.exiting_ports}};
}

json centralities_to_json(const TradeGraph& g, const std::vector<CentralityVector>& vectors) {
    json out = json::object();
    for (const auto& vec : vectors) {
        json values = json::object();
        for (std::size_t v = 0; v < g.node_count(); ++v)
            values[std::to_string(g.port(static_cast<int>(v)).id)] = num_or_null(vec.values[v]);
        json entry{{"values", values}, {"normalized", vec.normalized}};
        out[measure_name(vec.measure)] = entry;
    }
    return out;
}

std::string centrality_csv(const TradeGraph& g, const CentralityVector& v) {
    std::string out = "port_id,value\n";
    for (std::size_t i = 0; i < g.node_count(); ++i)
        out += std::to_string(g.port(static_cast<int>(i)).id) + "," + fmt_double(v.values[i]) + "\n";
    return out;
}

json to_json(const CorrelationMatrix& m) {
    json measures = json::array();
    for (auto id : m.measures) measures.push_back(measure_name(id));
    json rows = json::array();
    for (const auto& row : m.r) {
        json jrow = json::array();
        for (double v : row) jrow.push_back(num_or_null(v));
        rows.push_back(jrow);
    }
    return json{{"measures", measures}, {"r", rows}};
}

std::string correlations_csv(const CorrelationMatrix& m) {
    std::string out = "measure";
    for (auto id : m.measures) out += std::string(",") + measure_name(id);
    out += "\n";
    for (std::size_t i = 0; i < m.measures.size(); ++i) {
        out += measure_name(m.measures[i]);
        for (double v : m.r[i]) out += "," + fmt_double(v);
        out += "\n";
    }
    return out;
}

json to_json(const PowerLawFit& f) {
    return json{{"gamma", f.gamma}, {"logC", f.logC}, {"r2", f.r2}, {"n_bins", f.n_bins}};
}

}  // namespace drybulk
