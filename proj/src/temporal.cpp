#include "drybulknet/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "drybulknet/errors.hpp"

namespace drybulk {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

std::vector<QuarterlySnapshot> quarterly_graphs(const FlowTable& table, const LayerFilter& layer) {
    FlowTable filtered = slice(table, layer, QuarterWindow::all());

    std::vector<QuarterlySnapshot> out;
    if (filtered.records.empty()) return out;

    QuarterId lo = assign_quarter(filtered.records.front().load_departed_at);
    QuarterId hi = lo;
    for (const auto& rec : filtered.records) {
        QuarterId q = assign_quarter(rec.load_departed_at);
        lo = std::min(lo, q);
        hi = std::max(hi, q);
    }

    for (QuarterId q = lo;; q = q.next()) {
        FlowTable slab = slice(filtered, LayerFilter::all(), QuarterWindow{q, q});
        QuarterlySnapshot snap;
        snap.quarter = q;
        snap.empty = slab.records.empty();
        snap.graph = snap.empty ? TradeGraph() : build_graph(slab);
        out.push_back(std::move(snap));
        if (q == hi) break;
    }
    return out;
}

double network_distance(const TradeGraph& gi, const TradeGraph& gj) {
    if (gi.edge_count() == 0 || gj.edge_count() == 0)
        throw ComputeError("distance undefined: graph with zero edges");

    std::set<std::pair<long long, long long>> ei;
    for (const auto& [u, v] : gi.edges())
        ei.emplace(gi.port(u).id, gi.port(v).id);

    std::size_t common = 0;
    for (const auto& [u, v] : gj.edges())
        if (ei.count({gj.port(u).id, gj.port(v).id})) ++common;

    double denom = std::sqrt(static_cast<double>(gi.edge_count()) *
                             static_cast<double>(gj.edge_count()));
    return 1.0 - static_cast<double>(common) / denom;
}

QuarterlyDistanceMatrix distance_matrix(const std::vector<QuarterlySnapshot>& snapshots) {
    QuarterlyDistanceMatrix m;
    std::size_t usable = 0;
    for (const auto& snap : snapshots) {
        m.quarters.push_back(snap.quarter);
        bool ok = !snap.empty && snap.graph.edge_count() > 0;
        m.usable.push_back(ok);
        if (ok) ++usable;
    }
    if (usable < 2) throw ComputeError("distance matrix needs >= 2 usable quarters");

    const std::size_t n = snapshots.size();
    m.values.assign(n, std::vector<double>(n, kNaN));
    for (std::size_t i = 0; i < n; ++i) {
        if (!m.usable[i]) continue;
        m.values[i][i] = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!m.usable[j]) continue;
            double d = network_distance(snapshots[i].graph, snapshots[j].graph);
            m.values[i][j] = m.values[j][i] = d;
        }
    }
    return m;
}

Dendrogram ward_cluster(const QuarterlyDistanceMatrix& m) {
    // usable leaves only
    std::vector<std::size_t> leaf_rows;
    Dendrogram dend;
    for (std::size_t i = 0; i < m.quarters.size(); ++i) {
        if (m.usable[i]) {
            leaf_rows.push_back(i);
            dend.leaves.push_back(m.quarters[i]);
        }
    }
    const std::size_t n = leaf_rows.size();
    if (n < 2) throw ComputeError("ward clustering needs >= 2 leaves");

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double dij = m.values[leaf_rows[i]][leaf_rows[j]];
            double dji = m.values[leaf_rows[j]][leaf_rows[i]];
            if (std::isnan(dij) || dij != dji)
                throw ComputeError("ward clustering needs a symmetric complete matrix");
        }
    }

    struct Cluster {
        int id;        // scipy-style: leaves 0..n-1, merges n+step
        int size;
        int min_leaf;  // tie-break key
        bool active = true;
    };
    std::vector<Cluster> clusters;
    clusters.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i)
        clusters.push_back({static_cast<int>(i), 1, static_cast<int>(i)});

    // dist[p][q] over cluster slots (grows as merges append new slots)
    std::vector<std::vector<double>> dist(2 * n - 1, std::vector<double>(2 * n - 1, kNaN));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) dist[i][j] = m.values[leaf_rows[i]][leaf_rows[j]];

    for (std::size_t step = 0; step + 1 < n; ++step) {
        // closest active pair; ties by smallest (min_leaf_a, min_leaf_b)
        int best_a = -1, best_b = -1;
        double best_d = 0;
        std::pair<int, int> best_key{0, 0};
        for (std::size_t p = 0; p < clusters.size(); ++p) {
            if (!clusters[p].active) continue;
            for (std::size_t q = p + 1; q < clusters.size(); ++q) {
                if (!clusters[q].active) continue;
                double d = dist[p][q];
                std::pair<int, int> key{std::min(clusters[p].min_leaf, clusters[q].min_leaf),
                                        std::max(clusters[p].min_leaf, clusters[q].min_leaf)};
                if (best_a < 0 || d < best_d || (d == best_d && key < best_key)) {
                    best_a = static_cast<int>(p);
                    best_b = static_cast<int>(q);
                    best_d = d;
                    best_key = key;
                }
            }
        }

        const auto& ca = clusters[static_cast<std::size_t>(best_a)];
        const auto& cb = clusters[static_cast<std::size_t>(best_b)];
        Cluster merged{static_cast<int>(n + step), ca.size + cb.size,
                       std::min(ca.min_leaf, cb.min_leaf)};
        dend.merges.push_back({ca.id, cb.id, best_d, merged.size});

        // Ward update against every other active cluster.
        const std::size_t slot = clusters.size();
        const double ni = ca.size, nj = cb.size, dij2 = best_d * best_d;
        for (std::size_t p = 0; p < clusters.size(); ++p) {
            if (!clusters[p].active || p == static_cast<std::size_t>(best_a) ||
                p == static_cast<std::size_t>(best_b))
                continue;
            double nk = clusters[p].size;
            double dik2 = dist[p][static_cast<std::size_t>(best_a)];
            double djk2 = dist[p][static_cast<std::size_t>(best_b)];
            dik2 *= dik2;
            djk2 *= djk2;
            double d = std::sqrt(((ni + nk) * dik2 + (nj + nk) * djk2 - nk * dij2) /
                                 (ni + nj + nk));
            dist[p][slot] = dist[slot][p] = d;
        }
        clusters[static_cast<std::size_t>(best_a)].active = false;
        clusters[static_cast<std::size_t>(best_b)].active = false;
        clusters.push_back(merged);
    }
    return dend;
}

std::vector<int> cut_clusters(const Dendrogram& d, int k) {
    const int n = static_cast<int>(d.leaves.size());
    if (k < 1 || k > n) throw ComputeError("cut_clusters: k out of range 1..#leaves");

    // Undo the last k-1 merges: apply only the first n-k.
    std::vector<int> parent(static_cast<std::size_t>(2 * n - 1));
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (int step = 0; step < n - k; ++step) {
        const auto& merge = d.merges[static_cast<std::size_t>(step)];
        int target = n + step;
        parent[static_cast<std::size_t>(find(merge.a))] = target;
        parent[static_cast<std::size_t>(find(merge.b))] = target;
    }

    // Labels 1..k in order of first appearance along the quarter sequence.
    std::vector<int> labels(static_cast<std::size_t>(n), 0);
    std::vector<int> seen;  // root -> label by position
    for (int leaf = 0; leaf < n; ++leaf) {
        int root = find(leaf);
        auto it = std::find(seen.begin(), seen.end(), root);
        if (it == seen.end()) {
            seen.push_back(root);
            labels[static_cast<std::size_t>(leaf)] = static_cast<int>(seen.size());
        } else {
            labels[static_cast<std::size_t>(leaf)] = static_cast<int>(it - seen.begin()) + 1;
        }
    }
    return labels;
}

BreakReport detect_breaks(const std::vector<QuarterId>& quarters, const std::vector<int>& labels) {
    if (quarters.size() != labels.size())
        throw ComputeError("detect_breaks: label count mismatch");

    BreakReport report;
    report.quarters = quarters;
    report.labels = labels;
    for (std::size_t i = 1; i < labels.size(); ++i)
        if (labels[i] != labels[i - 1]) report.breaks.push_back(quarters[i]);

    std::set<int> distinct(labels.begin(), labels.end());
    report.contiguous = report.breaks.size() + 1 == distinct.size() || labels.empty();
    return report;
}

}  // namespace drybulk
