#pragma once

#include <vector>

#include "drybulknet/graph.hpp"

namespace drybulk {

struct QuarterlySnapshot {
    QuarterId quarter;
    TradeGraph graph;
    bool empty = false;  // no flows in this quarter
};

// One graph per quarter from the earliest to the latest quarter present in
// the (layer-filtered) table; empty quarters yield empty flagged graphs.
std::vector<QuarterlySnapshot> quarterly_graphs(const FlowTable& table,
                                                const LayerFilter& layer = {});

// 1 - |E_i intersect E_j| / sqrt(|E_i| |E_j|) over directed unweighted edge
// sets keyed by (src, dst) port ids. Throws ComputeError when either graph
// has no edges.
double network_distance(const TradeGraph& gi, const TradeGraph& gj);

struct QuarterlyDistanceMatrix {
    std::vector<QuarterId> quarters;           // ordered
    std::vector<std::vector<double>> values;   // symmetric; NaN = missing
    std::vector<bool> usable;                  // per quarter: has edges
};

// All pairwise distances; entries touching an empty quarter are NaN and the
// quarter is flagged unusable. Throws ComputeError with fewer than 2 usable
// quarters.
QuarterlyDistanceMatrix distance_matrix(const std::vector<QuarterlySnapshot>& snapshots);

struct DendrogramMerge {
    // Cluster ids: 0..n-1 are leaves, n+step is the cluster made by `step`.
    int a = 0;
    int b = 0;
    double height = 0;
    int size = 0;  // leaves in the merged cluster
};

struct Dendrogram {
    std::vector<QuarterId> leaves;  // usable quarters, in temporal order
    std::vector<DendrogramMerge> merges;
};

// Agglomerative clustering of the usable submatrix with the Ward
// Lance-Williams update
//   d(K, I+J) = sqrt(((nI+nK) d_IK^2 + (nJ+nK) d_JK^2 - nK d_IJ^2) / (nI+nJ+nK)),
// deterministic tie-break by smallest leaf index.
Dendrogram ward_cluster(const QuarterlyDistanceMatrix& m);

// Labels leaves into k clusters by undoing the last merges (max-cluster
// criterion); labels 1..k in order of first appearance along the quarter
// sequence. Throws ComputeError when k is out of 1..#leaves.
std::vector<int> cut_clusters(const Dendrogram& d, int k);

struct BreakReport {
    std::vector<QuarterId> quarters;  // usable quarters, temporal order
    std::vector<int> labels;          // parallel to quarters
    std::vector<QuarterId> breaks;    // first quarter of each new regime
    bool contiguous = true;           // false when a cluster recurs non-consecutively
};

BreakReport detect_breaks(const std::vector<QuarterId>& quarters,
                          const std::vector<int>& labels);

}  // namespace drybulk
