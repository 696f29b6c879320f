#include "drybulknet/nullmodel.hpp"

#include <cmath>
#include <random>
#include <unordered_set>

#include "drybulknet/errors.hpp"
#include "drybulknet/metrics.hpp"

namespace drybulk {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Unbiased bounded draw; deterministic for a given engine state.
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        std::uint64_t r = rng();
        if (r >= threshold) return r % n;
    }
}

std::uint64_t edge_key(int u, int v) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}

}  // namespace

TradeGraph rewire(const TradeGraph& g, const RewireConfig& cfg) {
    auto edges = g.edges();
    auto weights = g.edge_weights();
    const std::uint64_t e = edges.size();
    if (cfg.n_swap_attempts > 0 && e < 2)
        throw ComputeError("rewire needs at least 2 edges");

    std::unordered_set<std::uint64_t> present;
    present.reserve(edges.size() * 2);
    for (const auto& [u, v] : edges) present.insert(edge_key(u, v));

    const EdgeWeights unit{1, 1.0, 1.0};
    std::mt19937_64 rng(cfg.seed);
    for (std::uint64_t attempt = 0; attempt < cfg.n_swap_attempts; ++attempt) {
        std::uint64_t i = uniform_index(rng, e);
        std::uint64_t j = uniform_index(rng, e - 1);
        if (j >= i) ++j;

        const auto [a, b] = edges[i];
        const auto [c, d] = edges[j];
        // (a,b),(c,d) -> (a,d),(c,b); skipped rounds still count as attempts.
        if (a == d || c == b) continue;
        if (present.count(edge_key(a, d)) || present.count(edge_key(c, b))) continue;

        present.erase(edge_key(a, b));
        present.erase(edge_key(c, d));
        present.insert(edge_key(a, d));
        present.insert(edge_key(c, b));
        edges[i] = {a, d};
        edges[j] = {c, b};
        weights[i] = unit;
        weights[j] = unit;
    }

    std::vector<Edge> rebuilt;
    rebuilt.reserve(edges.size());
    for (std::size_t idx = 0; idx < edges.size(); ++idx)
        rebuilt.push_back({edges[idx].first, edges[idx].second, weights[idx]});
    return TradeGraph::build(std::vector<PortInfo>(g.ports()), std::move(rebuilt),
                             g.layer_label(), g.window_label());
}

RingLattice ring_lattice(int n, int k) {
    RingLattice out;
    out.k = k;
    if (k % 2 != 0) {
        out.k = k - 1;
        out.k_lowered = true;
    }
    if (out.k < 2) throw ComputeError("ring lattice needs k >= 2");
    if (n <= out.k) throw ComputeError("ring lattice needs n > k");

    std::vector<PortInfo> ports;
    ports.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        ports.push_back({i, "L" + std::to_string(i), "", ""});

    // One directed edge per undirected pair; neighbors up to k/2 steps away.
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(out.k / 2));
    for (int i = 0; i < n; ++i) {
        for (int step = 1; step <= out.k / 2; ++step) {
            int j = (i + step) % n;
            edges.push_back({i, j, {1, 1.0, 1.0}});
        }
    }
    out.graph = TradeGraph::build(std::move(ports), std::move(edges));
    return out;
}

double sigma(double L, double L_rand, double C, double C_rand) {
    if (L <= 0 || L_rand <= 0 || C <= 0 || C_rand <= 0)
        throw ComputeError("sigma needs positive L, L_rand, C, C_rand");
    return (C / C_rand) / (L / L_rand);
}

double omega(double L, double L_rand, double C, double C_latt) {
    if (L <= 0) throw ComputeError("omega needs positive L");
    if (C_latt <= 0) throw ComputeError("omega needs positive C_latt");
    return L_rand / L - C / C_latt;
}

SmallWorldReport small_world_test(const TradeGraph& g, const SmallWorldConfig& cfg) {
    if (g.node_count() == 0) throw ComputeError("small-world test on empty graph");
    if (cfg.n_replicates == 0) throw ComputeError("small-world test needs >= 1 replicate");

    SmallWorldReport report;
    report.n_replicates = cfg.n_replicates;
    report.seed = cfg.seed;
    report.swap_attempts = cfg.swap_attempts.value_or(10 * g.edge_count());

    report.C = transitivity(g);
    TradeGraph core = gscc(g);
    if (core.node_count() < 2)
        throw ComputeError("small-world test: GSCC too small for path lengths");
    report.L = avg_path_length(core);

    double c_sum = 0, l_sum = 0;
    std::size_t kept = 0;
    for (std::size_t r = 0; r < cfg.n_replicates; ++r) {
        RewireConfig rc;
        rc.n_swap_attempts = report.swap_attempts;
        rc.seed = splitmix64(cfg.seed + r);
        TradeGraph randomized = rewire(g, rc);

        ReplicateStats stats;
        stats.C = transitivity(randomized);
        TradeGraph rcore = gscc(randomized);
        stats.gscc_n = rcore.node_count();
        if (rcore.node_count() < 3) {
            stats.dropped = true;
            ++report.n_dropped;
        } else {
            stats.L = avg_path_length(rcore);
            c_sum += stats.C;
            l_sum += stats.L;
            ++kept;
        }
        report.replicates.push_back(stats);
    }
    if (kept == 0) throw ComputeError("small-world test: every replicate degenerate");

    report.C_rand = c_sum / static_cast<double>(kept);
    report.L_rand = l_sum / static_cast<double>(kept);

    // Lattice reference: same n, average degree rounded to the nearest even.
    double k_avg = static_cast<double>(g.edge_count()) / static_cast<double>(g.node_count());
    int k_even = 2 * static_cast<int>(std::llround(k_avg / 2.0));
    if (k_even < 2) k_even = 2;
    int n = static_cast<int>(g.node_count());
    if (k_even >= n) k_even = n % 2 == 0 ? n - 2 : n - 1;  // largest even < n
    if (k_even < 2) throw ComputeError("small-world test: graph too small for lattice reference");
    RingLattice latt = ring_lattice(n, k_even);
    report.lattice_k = latt.k;
    report.lattice_k_lowered = latt.k_lowered;
    report.C_latt = transitivity(latt.graph);

    report.sigma = sigma(report.L, report.L_rand, report.C, report.C_rand);
    report.omega = omega(report.L, report.L_rand, report.C, report.C_latt);
    return report;
}

}  // namespace drybulk
