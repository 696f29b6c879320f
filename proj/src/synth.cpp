#include "drybulknet/synth.hpp"

#include <cmath>
#include <map>

#include <json.hpp>

#include "drybulknet/csv.hpp"
#include "drybulknet/errors.hpp"

namespace drybulk {

namespace {

using nlohmann::json;

const char* kind_name(SynthKind kind) {
    switch (kind) {
        case SynthKind::two_clique_bridge: return "two_clique_bridge";
        case SynthKind::seasonal: return "seasonal";
        case SynthKind::regime_change: return "regime_change";
        case SynthKind::community_split: return "community_split";
        case SynthKind::power_law: return "power_law";
    }
    return "?";
}

SynthKind kind_from_name(const std::string& name) {
    for (SynthKind kind : {SynthKind::two_clique_bridge, SynthKind::seasonal,
                           SynthKind::regime_change, SynthKind::community_split,
                           SynthKind::power_law}) {
        if (name == kind_name(kind)) return kind;
    }
    throw DataError("unknown synth structure kind: " + name);
}

const char* kRegions[] = {"CONT", "FAREAST", "USEC", "USG", "ECSA",
                          "AG",   "SEA",     "BLACKSEA", "EASTMED", "WESTMED"};
constexpr int kRegionCount = 10;

QuarterId parse_quarter_or_throw(const json& j, const char* field) {
    auto q = QuarterId::parse(j.at(field).get<std::string>());
    if (!q) throw DataError(std::string("bad quarter in synth spec field ") + field);
    return *q;
}

std::string format_ts(Timestamp ts) {
    CivilDate c = civil_from_timestamp(ts);
    long long rem = ts - timestamp_from_civil(c.year, c.month, c.day);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02lld:%02lld:%02lldZ", c.year, c.month,
                  c.day, rem / 3600, (rem / 60) % 60, rem % 60);
    return buf;
}

std::string format_num(double v) {
    if (v == static_cast<long long>(v))
        return std::to_string(static_cast<long long>(v));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct PlannedPort {
    long long id;
    int region_slot;  // index into kRegions
};

struct PlannedFlow {
    long long load;
    long long discharge;
    QuarterId quarter;
};

class RowWriter {
public:
    RowWriter() {
        rows_.push_back(csv::join({"voyage_id", "flow_id", "commodity_group", "dwt", "volume",
                                   "load_port_id", "load_port_name", "load_country",
                                   "load_region", "load_port_departed_at", "discharge_port_id",
                                   "discharge_port_name", "discharge_country",
                                   "discharge_region", "discharge_port_arrived_at",
                                   "days_total_duration", "status"}));
    }

    void add(const std::string& commodity, const PlannedFlow& flow,
             const std::map<long long, PlannedPort>& ports) {
        ++counter_;
        char fid[24], vid[24];
        std::snprintf(fid, sizeof fid, "F%06lld", counter_);
        std::snprintf(vid, sizeof vid, "V%06lld", counter_);

        const auto& lp = ports.at(flow.load);
        const auto& dp = ports.at(flow.discharge);

        const long long i = counter_;
        Timestamp start = timestamp_from_civil(flow.quarter.year,
                                               3 * (flow.quarter.quarter - 1) + 1, 1);
        Timestamp departed = start + ((i * 17) % 89) * 86400 + ((i * 7) % 24) * 3600;
        double duration = 5.0 + static_cast<double>(i % 40);
        Timestamp arrived = departed + static_cast<Timestamp>(duration * 86400);
        double dwt = 10000.0 + static_cast<double>(i % 7) * 1500.0;
        double volume = 5000.0 + static_cast<double>(i % 11) * 500.0;

        rows_.push_back(csv::join(
            {vid, fid, commodity, format_num(dwt), format_num(volume),
             std::to_string(flow.load), "P" + std::to_string(flow.load),
             std::string("Country-") + kRegions[lp.region_slot], kRegions[lp.region_slot],
             format_ts(departed), std::to_string(flow.discharge),
             "P" + std::to_string(flow.discharge),
             std::string("Country-") + kRegions[dp.region_slot], kRegions[dp.region_slot],
             format_ts(arrived), format_num(duration), "Complete"}));
    }

    std::string str() const {
        std::string out;
        for (const auto& row : rows_) {
            out += row;
            out += '\n';
        }
        return out;
    }

    std::size_t data_rows() const { return rows_.size() - 1; }

private:
    std::vector<std::string> rows_;
    long long counter_ = 0;
};

std::vector<QuarterId> quarter_range(QuarterId from, QuarterId to) {
    if (to < from) throw DataError("infeasible spec: window end precedes start");
    std::vector<QuarterId> out;
    for (QuarterId q = from;; q = q.next()) {
        out.push_back(q);
        if (q == to) break;
    }
    return out;
}

}  // namespace

SynthSpec SynthSpec::from_json_text(const std::string& text) {
    json j = json::parse(text);
    SynthSpec spec;
    spec.seed = j.value("seed", 0ULL);
    for (const auto& jl : j.at("layers")) {
        SynthLayer layer;
        layer.commodity = jl.value("commodity", "Coal");
        layer.kind = kind_from_name(jl.at("kind").get<std::string>());
        if (jl.contains("from")) layer.from = parse_quarter_or_throw(jl, "from");
        if (jl.contains("to")) layer.to = parse_quarter_or_throw(jl, "to");
        if (jl.contains("group_sizes"))
            layer.group_sizes = jl.at("group_sizes").get<std::vector<int>>();
        layer.bridges = jl.value("bridges", 1);
        layer.period = jl.value("period", 4);
        layer.edges_per_quarter = jl.value("edges_per_quarter", 12);
        if (jl.contains("break_at")) layer.break_at = parse_quarter_or_throw(jl, "break_at");
        layer.gamma = jl.value("gamma", 1.0);
        layer.c = jl.value("c", 64.0);
        if (jl.contains("degrees")) layer.degrees = jl.at("degrees").get<std::vector<int>>();
        layer.flows_per_edge = jl.value("flows_per_edge", 1);
        spec.layers.push_back(std::move(layer));
    }
    return spec;
}

std::string SynthSpec::to_json_text() const {
    json layers = json::array();
    for (const auto& layer : this->layers) {
        json jl;
        jl["commodity"] = layer.commodity;
        jl["kind"] = kind_name(layer.kind);
        jl["from"] = layer.from.str();
        jl["to"] = layer.to.str();
        jl["group_sizes"] = layer.group_sizes;
        jl["bridges"] = layer.bridges;
        jl["period"] = layer.period;
        jl["edges_per_quarter"] = layer.edges_per_quarter;
        if (layer.break_at) jl["break_at"] = layer.break_at->str();
        jl["gamma"] = layer.gamma;
        jl["c"] = layer.c;
        jl["degrees"] = layer.degrees;
        jl["flows_per_edge"] = layer.flows_per_edge;
        layers.push_back(jl);
    }
    json j;
    j["seed"] = seed;
    j["layers"] = layers;
    return j.dump(2) + "\n";
}

SynthOutput generate_fixture(const SynthSpec& spec) {
    RowWriter writer;
    json truth_layers = json::array();

    long long next_port_base = 1000;
    for (std::size_t li = 0; li < spec.layers.size(); ++li) {
        const SynthLayer& layer = spec.layers[li];
        const long long base = next_port_base;
        next_port_base += 1000;

        std::map<long long, PlannedPort> ports;
        std::vector<PlannedFlow> flows;
        auto quarters = quarter_range(layer.from, layer.to);
        json truth;
        truth["commodity"] = layer.commodity;
        truth["kind"] = kind_name(layer.kind);

        auto add_port = [&](long long id, int region_slot) {
            ports.try_emplace(id, PlannedPort{id, region_slot % kRegionCount});
        };
        auto spread = [&](long long load, long long discharge) {
            // flows for one edge, across the window round-robin
            for (int f = 0; f < layer.flows_per_edge; ++f) {
                std::size_t qi = flows.size() % quarters.size();
                flows.push_back({load, discharge, quarters[qi]});
            }
        };
        auto clique = [&](const std::vector<long long>& ids) {
            for (std::size_t i = 0; i < ids.size(); ++i)
                for (std::size_t j = i + 1; j < ids.size(); ++j) spread(ids[i], ids[j]);
        };

        switch (layer.kind) {
            case SynthKind::two_clique_bridge: {
                if (layer.group_sizes.size() < 2)
                    throw DataError("infeasible spec: need >= 2 groups");
                for (int size : layer.group_sizes)
                    if (size < 2) throw DataError("infeasible spec: group size < 2");
                json communities = json::array();
                std::vector<std::vector<long long>> groups;
                long long id = base;
                for (std::size_t gi = 0; gi < layer.group_sizes.size(); ++gi) {
                    std::vector<long long> group;
                    for (int i = 0; i < layer.group_sizes[gi]; ++i) {
                        add_port(id, static_cast<int>(gi));
                        group.push_back(id++);
                    }
                    clique(group);
                    communities.push_back(group);
                    groups.push_back(std::move(group));
                }
                for (std::size_t gi = 0; gi + 1 < groups.size(); ++gi) {
                    if (layer.bridges >
                        static_cast<int>(std::min(groups[gi].size(), groups[gi + 1].size())))
                        throw DataError("infeasible spec: more bridges than group ports");
                    for (int b = 0; b < layer.bridges; ++b)
                        spread(groups[gi][groups[gi].size() - 1 - static_cast<std::size_t>(b)],
                               groups[gi + 1][static_cast<std::size_t>(b)]);
                }
                truth["communities"] = communities;
                break;
            }
            case SynthKind::seasonal: {
                if (layer.period < 2) throw DataError("infeasible spec: period < 2");
                if (static_cast<int>(quarters.size()) < layer.period)
                    throw DataError("infeasible spec: window shorter than period");
                if (layer.edges_per_quarter < 3)
                    throw DataError("infeasible spec: need >= 3 edges per quarter");
                // one directed cycle per phase, disjoint port ranges
                for (std::size_t qi = 0; qi < quarters.size(); ++qi) {
                    int phase = static_cast<int>(qi) % layer.period;
                    long long pbase = base + phase * 100;
                    int m = layer.edges_per_quarter;
                    for (int i = 0; i < m; ++i) {
                        add_port(pbase + i, phase);
                        add_port(pbase + (i + 1) % m, phase);
                        flows.push_back({pbase + i, pbase + (i + 1) % m, quarters[qi]});
                    }
                }
                truth["period"] = layer.period;
                break;
            }
            case SynthKind::regime_change: {
                if (!layer.break_at) throw DataError("infeasible spec: regime_change needs break_at");
                if (!(layer.from < *layer.break_at) || layer.to < *layer.break_at)
                    throw DataError("infeasible spec: break quarter must split the window");
                if (layer.edges_per_quarter < 3)
                    throw DataError("infeasible spec: need >= 3 edges per quarter");
                int m = layer.edges_per_quarter;
                for (std::size_t qi = 0; qi < quarters.size(); ++qi) {
                    bool after = !(quarters[qi] < *layer.break_at);
                    long long pbase = base + (after ? 500 : 0);
                    for (int i = 0; i < m; ++i) {
                        add_port(pbase + i, after ? 1 : 0);
                        add_port(pbase + (i + 1) % m, after ? 1 : 0);
                        flows.push_back({pbase + i, pbase + (i + 1) % m, quarters[qi]});
                    }
                }
                truth["break_quarter"] = layer.break_at->str();
                break;
            }
            case SynthKind::community_split: {
                if (!layer.break_at)
                    throw DataError("infeasible spec: community_split needs break_at");
                if (!(layer.from < *layer.break_at) || layer.to < *layer.break_at)
                    throw DataError("infeasible spec: break quarter must split the window");
                if (layer.group_sizes.size() != 2)
                    throw DataError("infeasible spec: community_split needs [split, stable] sizes");
                int split_size = layer.group_sizes[0];
                int stable_size = layer.group_sizes[1];
                if (split_size < 4 || split_size % 2 != 0)
                    throw DataError("infeasible spec: split group size must be even and >= 4");
                if (stable_size < 2)
                    throw DataError("infeasible spec: stable group size must be >= 2");

                std::vector<long long> half1, half2, stable;
                long long id = base;
                for (int i = 0; i < split_size / 2; ++i) { add_port(id, 0); half1.push_back(id++); }
                for (int i = 0; i < split_size / 2; ++i) { add_port(id, 1); half2.push_back(id++); }
                for (int i = 0; i < stable_size; ++i) { add_port(id, 2); stable.push_back(id++); }

                std::vector<QuarterId> before, after;
                for (QuarterId q : quarters)
                    (q < *layer.break_at ? before : after).push_back(q);

                auto clique_in = [&](const std::vector<long long>& ids,
                                     const std::vector<QuarterId>& qs) {
                    std::size_t n = 0;
                    for (std::size_t i = 0; i < ids.size(); ++i)
                        for (std::size_t j = i + 1; j < ids.size(); ++j)
                            flows.push_back({ids[i], ids[j], qs[n++ % qs.size()]});
                };

                // before: the split group is one clique over both halves
                std::vector<long long> whole = half1;
                whole.insert(whole.end(), half2.begin(), half2.end());
                clique_in(whole, before);
                clique_in(stable, before);
                flows.push_back({half1.front(), stable.front(), before.front()});

                // after: halves keep only their internal edges
                clique_in(half1, after);
                clique_in(half2, after);
                clique_in(stable, after);
                flows.push_back({half1.front(), stable.front(), after.front()});

                truth["break_quarter"] = layer.break_at->str();
                truth["split_community"] = whole;
                truth["halves"] = json::array({half1, half2});
                truth["stable"] = stable;
                break;
            }
            case SynthKind::power_law: {
                if (layer.degrees.size() < 2)
                    throw DataError("infeasible spec: power_law needs >= 2 degree bins");
                long long pool_size = 0;
                for (int k : layer.degrees) {
                    if (k < 1) throw DataError("infeasible spec: degree < 1");
                    pool_size = std::max<long long>(pool_size, k);
                }
                std::vector<long long> pool;
                long long id = base;
                for (long long i = 0; i < pool_size; ++i) {
                    add_port(id, 1);
                    pool.push_back(id++);
                }
                json bins = json::array();
                for (int k : layer.degrees) {
                    double f = layer.c * std::pow(static_cast<double>(k), -layer.gamma);
                    long long count = std::llround(f);
                    if (count < 1 || std::abs(f - static_cast<double>(count)) > 1e-9)
                        throw DataError("infeasible spec: f(k) not integral at k=" +
                                        std::to_string(k));
                    for (long long c = 0; c < count; ++c) {
                        add_port(id, 0);
                        for (int t = 0; t < k; ++t)
                            spread(id, pool[static_cast<std::size_t>(t)]);
                        ++id;
                    }
                    bins.push_back({{"k", k}, {"f", count}});
                }
                truth["gamma"] = layer.gamma;
                truth["c"] = layer.c;
                truth["bins"] = bins;
                break;
            }
        }

        for (const auto& flow : flows) writer.add(layer.commodity, flow, ports);
        truth_layers.push_back(truth);
    }

    json truth;
    truth["seed"] = spec.seed;
    truth["layers"] = truth_layers;

    SynthOutput out;
    out.csv = writer.str();
    out.ground_truth = truth.dump(2) + "\n";
    out.n_rows = writer.data_rows();
    return out;
}

}  // namespace drybulk
