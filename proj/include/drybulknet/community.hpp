#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drybulknet/metrics.hpp"

namespace drybulk {

struct Partition {
    std::vector<int> community;  // node index -> community id, dense 0..c-1
    int n_communities = 0;
    double modularity = 0;
    WeightKind weight = WeightKind::frequency;
    std::uint64_t seed = 0;
    double resolution = 1.0;  // plain modularity

    std::vector<std::vector<int>> groups() const;  // community id -> node indices
};

// Two-phase Louvain on the undirected weighted projection (edge weight =
// sum of both directions' chosen weight): greedy local moves, community
// aggregation, repeat until no modularity gain. Node visit order is
// shuffled deterministically from the seed.
Partition louvain(const TradeGraph& g, WeightKind weight, std::uint64_t seed);

// Q = (1/2m) sum_ij [w_ij - k_i k_j / 2m] delta(c_i, c_j) on the undirected
// weighted projection. Throws ComputeError when total weight is zero.
double modularity(const TradeGraph& g, const Partition& p, WeightKind weight);

struct RegionDominance {
    std::string region;
    bool tie = false;  // modal region shared; lexicographically first kept
};

// Modal port region per community.
std::vector<RegionDominance> dominant_region(const TradeGraph& g, const Partition& p);

struct TransitionLink {
    int before_community = 0;
    int after_community = 0;
    std::size_t count = 0;  // shared ports taking this transition
};

struct TransitionSide {
    int community = 0;
    std::size_t size = 0;         // full community size in its own graph
    std::size_t shared_size = 0;  // ports also present on the other side
    std::string dominant_region;
    bool region_tie = false;
};

struct TransitionTable {
    std::vector<TransitionSide> before;
    std::vector<TransitionSide> after;
    std::vector<TransitionLink> links;
    std::vector<long long> entering_ports;  // only in the after graph
    std::vector<long long> exiting_ports;   // only in the before graph
    std::size_t shared_ports = 0;
};

// Community-to-community flow of the ports present in both graphs. Throws
// ComputeError when the node intersection is empty.
TransitionTable transitions(const TradeGraph& g_before, const TradeGraph& g_after,
                            const Partition& p_before, const Partition& p_after);

}  // namespace drybulk
