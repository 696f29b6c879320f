#pragma once

#include <span>
#include <string>
#include <vector>

#include "drybulknet/flows.hpp"

namespace drybulk {

struct PortInfo {
    long long id = 0;
    std::string name;
    std::string region;
    std::string country;
};

struct EdgeWeights {
    long long frequency = 0;   // number of flows on the edge
    double dwt_total = 0.0;    // summed deadweight tons
    double volume_total = 0.0; // summed cargo metric tons
};

struct Edge {
    int src = 0;  // node index
    int dst = 0;
    EdgeWeights weights;
};

// Simple directed weighted graph over ports. Nodes are indexed 0..n-1 in
// ascending port-id order; immutable once built.
class TradeGraph {
public:
    TradeGraph() = default;

    // `edges` keyed by node index; must be self-loop free and unique per
    // ordered pair. Throws ComputeError on violations.
    static TradeGraph build(std::vector<PortInfo> ports, std::vector<Edge> edges,
                            std::string layer_label = "", std::string window_label = "");

    std::size_t node_count() const { return ports_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const PortInfo& port(int v) const { return ports_[static_cast<std::size_t>(v)]; }
    const std::vector<PortInfo>& ports() const { return ports_; }
    // -1 when the id is not a node.
    int index_of(long long port_id) const;

    // Edges sorted by (src, dst); weights parallel.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<EdgeWeights>& edge_weights() const { return weights_; }

    bool has_edge(int src, int dst) const;
    const EdgeWeights& weights(int src, int dst) const;  // throws if absent

    std::span<const int> out_neighbors(int v) const;
    std::span<const int> in_neighbors(int v) const;
    std::size_t out_degree(int v) const { return out_neighbors(v).size(); }
    std::size_t in_degree(int v) const { return in_neighbors(v).size(); }

    const std::string& layer_label() const { return layer_label_; }
    const std::string& window_label() const { return window_label_; }

private:
    std::vector<PortInfo> ports_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<EdgeWeights> weights_;
    std::vector<std::vector<int>> out_adj_;
    std::vector<std::vector<int>> in_adj_;
    std::string layer_label_;
    std::string window_label_;
};

// Aggregates flows into a simple digraph: one node per distinct port id,
// one edge per distinct (load, discharge) pair with summed weights. Edges
// come only from individual records (trade-flow, not port-call, semantics).
// Throws ComputeError on a surviving self-loop (invariant breach upstream).
TradeGraph build_graph(const FlowTable& table);

// Undirected simple projection: (u,v) and (v,u) collapse into one edge.
// Used by clustering, assortativity, weak components and community code.
class UndirectedView {
public:
    explicit UndirectedView(const TradeGraph& g);

    std::size_t node_count() const { return adj_.size(); }
    std::size_t edge_count() const { return n_edges_; }
    std::span<const int> neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    std::size_t degree(int v) const { return adj_[static_cast<std::size_t>(v)].size(); }
    bool has_edge(int u, int v) const;

private:
    std::vector<std::vector<int>> adj_;  // sorted neighbor lists
    std::size_t n_edges_ = 0;
};

enum class ComponentKind { weak, strong };

struct ComponentSet {
    ComponentKind kind = ComponentKind::weak;
    // Node-index sets, each sorted ascending; members sorted by size
    // descending, ties by smallest contained index.
    std::vector<std::vector<int>> members;
};

ComponentSet components(const TradeGraph& g, ComponentKind kind);

// Induced subgraph on the largest SCC (ties: lexicographically smallest
// member set). Retains edge weights. Throws ComputeError on an empty graph.
TradeGraph gscc(const TradeGraph& g);

enum class DiameterMode { undirected, directed };

// Longest shortest path over reachable pairs; unweighted hops. The input
// must be connected in the requested mode or ComputeError is thrown.
int diameter(const TradeGraph& g, DiameterMode mode);

// Mean directed hop distance over ordered pairs; requires strong
// connectivity. Single-node graphs yield 0.
double avg_path_length(const TradeGraph& g);

struct GlobalCentralityReport {
    std::size_t n = 0;  // ports
    std::size_t e = 0;  // unique edges
    double k = 0;       // e / n
    double phi = 0;     // e / (n (n - 1))
    std::size_t n_w = 0;  // number of WCCs
    double p_w = 0;       // |GWCC| / n
    int d_w = 0;          // GWCC diameter, undirected projection
    std::size_t n_s = 0;  // number of SCCs
    double p_s = 0;       // |GSCC| / n
    int d_s = 0;          // GSCC diameter, directed (0 when |GSCC| < 2)
    double l = 0;         // average shortest path length on GSCC
    double c = 0;         // transitivity of the undirected projection
    double a = 0;         // degree assortativity (NaN when undefined)
};

GlobalCentralityReport global_report(const TradeGraph& g);

}  // namespace drybulk
