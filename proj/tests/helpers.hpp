#pragma once

// Shared fixtures and independent oracles for the test suites. Oracles are
// deliberately written against different data structures than the library
// (path enumeration, triple enumeration, pairwise Floyd-Warshall) so they
// can catch algorithmic mistakes, not just re-run them.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "drybulknet/flows.hpp"
#include "drybulknet/graph.hpp"

namespace testutil {

using drybulk::Edge;
using drybulk::EdgeWeights;
using drybulk::FlowTable;
using drybulk::PortInfo;
using drybulk::TradeFlowRecord;
using drybulk::TradeGraph;

inline TradeFlowRecord record(const std::string& flow_id, long long load, long long discharge,
                              const std::string& commodity = "Coal",
                              const std::string& departed = "2020-01-15T00:00:00Z",
                              double volume = 5000, double dwt = 10000) {
    TradeFlowRecord r;
    r.flow_id = flow_id;
    r.voyage_id = "V" + flow_id;
    r.commodity_group = commodity;
    r.volume = volume;
    r.dwt = dwt;
    r.load_port_id = load;
    r.load_port_name = "P" + std::to_string(load);
    r.load_region = "R" + std::to_string(load % 3);
    r.load_country = "C" + std::to_string(load % 2);
    r.discharge_port_id = discharge;
    r.discharge_port_name = "P" + std::to_string(discharge);
    r.discharge_region = "R" + std::to_string(discharge % 3);
    r.discharge_country = "C" + std::to_string(discharge % 2);
    r.load_departed_at = *drybulk::parse_timestamp(departed);
    r.discharge_arrived_at = r.load_departed_at + 12 * 86400;
    r.days_total_duration = 12.0;
    r.status = "Complete";
    return r;
}

inline FlowTable table_of(std::vector<TradeFlowRecord> records) {
    FlowTable t;
    t.records = std::move(records);
    t.provenance.raw = t.provenance.kept = t.records.size();
    return t;
}

// Directed graph straight from (src,dst) port-id pairs, unit weights.
inline TradeGraph graph_of(const std::vector<std::pair<long long, long long>>& id_edges) {
    std::set<long long> ids;
    for (const auto& [u, v] : id_edges) {
        ids.insert(u);
        ids.insert(v);
    }
    std::vector<PortInfo> ports;
    for (long long id : ids)
        ports.push_back({id, "P" + std::to_string(id), "R" + std::to_string(id % 3),
                         "C" + std::to_string(id % 2)});
    auto index_of = [&](long long id) {
        return static_cast<int>(std::distance(ids.begin(), ids.find(id)));
    };
    std::vector<Edge> edges;
    for (const auto& [u, v] : id_edges)
        edges.push_back({index_of(u), index_of(v), EdgeWeights{1, 1.0, 1.0}});
    return TradeGraph::build(std::move(ports), std::move(edges));
}

// Isolated nodes allowed: ids may extend past the edge list.
inline TradeGraph graph_with_nodes(const std::vector<long long>& node_ids,
                                   const std::vector<std::pair<long long, long long>>& id_edges) {
    std::set<long long> ids(node_ids.begin(), node_ids.end());
    for (const auto& [u, v] : id_edges) {
        ids.insert(u);
        ids.insert(v);
    }
    std::vector<PortInfo> ports;
    for (long long id : ids)
        ports.push_back({id, "P" + std::to_string(id), "R" + std::to_string(id % 3),
                         "C" + std::to_string(id % 2)});
    auto index_of = [&](long long id) {
        return static_cast<int>(std::distance(ids.begin(), ids.find(id)));
    };
    std::vector<Edge> edges;
    for (const auto& [u, v] : id_edges)
        edges.push_back({index_of(u), index_of(v), EdgeWeights{1, 1.0, 1.0}});
    return TradeGraph::build(std::move(ports), std::move(edges));
}

// Both directions for every listed pair.
inline TradeGraph bidirectional(const std::vector<std::pair<long long, long long>>& pairs) {
    std::vector<std::pair<long long, long long>> both;
    for (const auto& [u, v] : pairs) {
        both.emplace_back(u, v);
        both.emplace_back(v, u);
    }
    return graph_of(both);
}

inline TradeGraph bidirectional_ring_lattice(int n, int k) {
    std::vector<std::pair<long long, long long>> pairs;
    for (int i = 0; i < n; ++i)
        for (int step = 1; step <= k / 2; ++step) pairs.emplace_back(i, (i + step) % n);
    return bidirectional(pairs);
}

// Random simple digraph; edge count capped by availability.
inline TradeGraph random_digraph(std::mt19937_64& rng, int n, int target_edges) {
    std::set<std::pair<long long, long long>> chosen;
    const long long max_edges = static_cast<long long>(n) * (n - 1);
    target_edges = static_cast<int>(std::min<long long>(target_edges, max_edges));
    std::uniform_int_distribution<int> pick(0, n - 1);
    while (static_cast<int>(chosen.size()) < target_edges) {
        int u = pick(rng), v = pick(rng);
        if (u != v) chosen.insert({u, v});
    }
    return graph_with_nodes(
        [&] {
            std::vector<long long> ids;
            for (int i = 0; i < n; ++i) ids.push_back(i);
            return ids;
        }(),
        {chosen.begin(), chosen.end()});
}

// ---- independent oracles ----

// All-geodesic betweenness via exhaustive simple-path enumeration.
inline std::vector<double> betweenness_by_path_enumeration(const TradeGraph& g) {
    const int n = static_cast<int>(g.node_count());
    std::vector<double> bc(static_cast<std::size_t>(n), 0.0);

    for (int s = 0; s < n; ++s) {
        for (int t = 0; t < n; ++t) {
            if (s == t) continue;
            // collect all simple paths s->t with DFS
            std::vector<std::vector<int>> paths;
            std::vector<int> current{s};
            std::vector<bool> used(static_cast<std::size_t>(n), false);
            used[static_cast<std::size_t>(s)] = true;
            struct StackFrame {
                int node;
                std::size_t next;
            };
            std::vector<StackFrame> stack{{s, 0}};
            while (!stack.empty()) {
                auto& frame = stack.back();
                auto out = g.out_neighbors(frame.node);
                if (frame.node == t) {
                    paths.push_back(current);
                    used[static_cast<std::size_t>(frame.node)] = false;
                    current.pop_back();
                    stack.pop_back();
                    continue;
                }
                if (frame.next >= out.size()) {
                    used[static_cast<std::size_t>(frame.node)] = false;
                    current.pop_back();
                    stack.pop_back();
                    continue;
                }
                int next = out[frame.next++];
                if (!used[static_cast<std::size_t>(next)]) {
                    used[static_cast<std::size_t>(next)] = true;
                    current.push_back(next);
                    stack.push_back({next, 0});
                }
            }
            if (paths.empty()) continue;
            std::size_t shortest = paths.front().size();
            for (const auto& p : paths) shortest = std::min(shortest, p.size());
            std::size_t n_geodesics = 0;
            std::map<int, std::size_t> through;
            for (const auto& p : paths) {
                if (p.size() != shortest) continue;
                ++n_geodesics;
                for (std::size_t i = 1; i + 1 < p.size(); ++i) ++through[p[i]];
            }
            for (const auto& [v, cnt] : through)
                bc[static_cast<std::size_t>(v)] +=
                    static_cast<double>(cnt) / static_cast<double>(n_geodesics);
        }
    }
    return bc;
}

// Transitivity by 3-subset enumeration (3 triples per triangle, 1 per path).
inline double transitivity_by_triples(const TradeGraph& g) {
    drybulk::UndirectedView und(g);
    const int n = static_cast<int>(und.node_count());
    long long triangles = 0, open = 0;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            for (int c = b + 1; c < n; ++c) {
                int edges = und.has_edge(a, b) + und.has_edge(a, c) + und.has_edge(b, c);
                if (edges == 3) ++triangles;
                else if (edges == 2) ++open;
            }
        }
    }
    long long triples = 3 * triangles + open;
    return triples == 0 ? 0.0 : 3.0 * static_cast<double>(triangles) / static_cast<double>(triples);
}

// All-pairs hop distances, Floyd-Warshall (-1 = unreachable).
inline std::vector<std::vector<int>> all_pairs_hops(const TradeGraph& g, bool directed) {
    const int n = static_cast<int>(g.node_count());
    const int inf = 1 << 28;
    std::vector<std::vector<int>> d(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(n), inf));
    for (int v = 0; v < n; ++v) d[static_cast<std::size_t>(v)][static_cast<std::size_t>(v)] = 0;
    for (const auto& [u, v] : g.edges()) {
        d[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
        if (!directed) d[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::min(
                    d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                    d[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
                        d[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
    for (auto& row : d)
        for (auto& v : row)
            if (v >= inf) v = -1;
    return d;
}

// Every set partition of {0..n-1} as restricted-growth strings.
inline std::vector<std::vector<int>> all_partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    for (;;) {
        out.push_back(a);
        // next restricted growth string
        int i = n - 1;
        while (i > 0) {
            int max_prefix = 0;
            for (int j = 0; j < i; ++j) max_prefix = std::max(max_prefix, a[static_cast<std::size_t>(j)]);
            if (a[static_cast<std::size_t>(i)] <= max_prefix) break;
            --i;
        }
        if (i == 0) break;
        ++a[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) a[static_cast<std::size_t>(j)] = 0;
    }
    return out;
}

// Q from the raw double sum over all node pairs of the undirected
// projection (chosen weight summed over both directions).
inline double modularity_by_double_sum(const TradeGraph& g, const std::vector<int>& comm,
                                       drybulk::WeightKind kind) {
    const int n = static_cast<int>(g.node_count());
    std::vector<std::vector<double>> w(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
    const auto& edges = g.edges();
    const auto& weights = g.edge_weights();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        double value = kind == drybulk::WeightKind::frequency
                           ? static_cast<double>(weights[i].frequency)
                       : kind == drybulk::WeightKind::dwt ? weights[i].dwt_total
                                                          : weights[i].volume_total;
        auto [u, v] = edges[i];
        w[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] += value;
        w[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] += value;
    }
    std::vector<double> k(static_cast<std::size_t>(n), 0.0);
    double two_m = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) k[static_cast<std::size_t>(i)] += w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        two_m += k[static_cast<std::size_t>(i)];
    }
    double q = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (comm[static_cast<std::size_t>(i)] != comm[static_cast<std::size_t>(j)]) continue;
            q += w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                 k[static_cast<std::size_t>(i)] * k[static_cast<std::size_t>(j)] / two_m;
        }
    }
    return q / two_m;
}

}  // namespace testutil
