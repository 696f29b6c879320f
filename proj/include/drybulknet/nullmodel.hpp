#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "drybulknet/graph.hpp"

namespace drybulk {

enum class RewireScope { full, gscc };

struct RewireConfig {
    std::uint64_t n_swap_attempts = 0;
    std::uint64_t seed = 0;
    RewireScope scope = RewireScope::full;
};

// Degree-preserving randomization by repeated directed double-edge swaps:
// pick edges (v1,v2),(v3,v4), replace with (v1,v4),(v3,v2) unless a
// replacement already exists or would be a self-loop (the round is then
// skipped). Node set, edge count and both degree sequences are preserved.
// Swapped edges carry unit weights; the null model is topology-only.
TradeGraph rewire(const TradeGraph& g, const RewireConfig& cfg);

struct RingLattice {
    TradeGraph graph;       // one directed edge per undirected pair
    int k = 0;              // effective (even) neighbor count
    bool k_lowered = false; // true when an odd request was lowered by one
};

// Ring of n nodes, each joined to k/2 nearest neighbors per side.
// Undirected semantics; used as the clustering reference. Requires n > k
// and k >= 2; an odd k is lowered by one and flagged.
RingLattice ring_lattice(int n, int k);

// sigma = (C / C_rand) / (L / L_rand). All inputs must be positive.
double sigma(double L, double L_rand, double C, double C_rand);

// omega = L_rand / L - C / C_latt. Positive leans random, near zero
// small-world, negative lattice-like.
double omega(double L, double L_rand, double C, double C_latt);

struct ReplicateStats {
    double C = 0;         // transitivity of the rewired graph
    double L = 0;         // average path length on its largest SCC
    std::size_t gscc_n = 0;
    bool dropped = false; // degenerate largest SCC (< 3 nodes)
};

struct SmallWorldReport {
    double L = 0;       // observed, on the GSCC
    double L_rand = 0;  // mean over kept replicates
    double C = 0;       // observed transitivity
    double C_rand = 0;  // mean over kept replicates
    double C_latt = 0;  // measured on the reference ring lattice
    double sigma = 0;
    double omega = 0;
    std::size_t n_replicates = 0;  // requested
    std::size_t n_dropped = 0;
    std::uint64_t seed = 0;
    std::uint64_t swap_attempts = 0;
    int lattice_k = 0;
    bool lattice_k_lowered = false;
    std::vector<ReplicateStats> replicates;
};

struct SmallWorldConfig {
    std::size_t n_replicates = 10;
    std::uint64_t seed = 0;
    // nullopt = default of 10 * |E|; 0 is honored as identity rewiring.
    std::optional<std::uint64_t> swap_attempts;
};

// Small-world test against degree-preserving rewired replicates and a ring
// lattice of matching size and (even-rounded) average degree. L is taken on
// the GSCC of the input and of each replicate; replicates whose largest SCC
// has fewer than 3 nodes are dropped and counted. Throws ComputeError when
// every replicate is dropped.
SmallWorldReport small_world_test(const TradeGraph& g, const SmallWorldConfig& cfg);

}  // namespace drybulk
