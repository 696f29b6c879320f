#include "drybulknet/community.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <unordered_map>

#include "drybulknet/errors.hpp"

namespace drybulk {

namespace {

double edge_weight_of(const EdgeWeights& w, WeightKind kind) {
    switch (kind) {
        case WeightKind::frequency: return static_cast<double>(w.frequency);
        case WeightKind::dwt: return w.dwt_total;
        case WeightKind::volume: return w.volume_total;
    }
    return 0;
}

// Undirected weighted adjacency: weight(u,v) = sum of both directions'
// chosen weight. Self-values (used by aggregated levels) are kept apart
// and count twice in degrees, matrix convention W_vv = self[v].
struct WorkGraph {
    std::vector<std::vector<std::pair<int, double>>> adj;
    std::vector<double> self;  // W_vv
    std::vector<double> degree;
    double two_m = 0;

    std::size_t size() const { return adj.size(); }

    void finish() {
        degree.assign(size(), 0.0);
        two_m = 0;
        for (std::size_t v = 0; v < size(); ++v) {
            double k = self[v];
            for (const auto& [u, w] : adj[v]) k += w;
            degree[v] = k;
            two_m += k;
        }
    }
};

WorkGraph project(const TradeGraph& g, WeightKind kind) {
    WorkGraph wg;
    wg.adj.assign(g.node_count(), {});
    wg.self.assign(g.node_count(), 0.0);

    std::map<std::pair<int, int>, double> sym;
    const auto& edges = g.edges();
    const auto& weights = g.edge_weights();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto [u, v] = edges[i];
        if (u > v) std::swap(u, v);
        sym[{u, v}] += edge_weight_of(weights[i], kind);
    }
    for (const auto& [key, w] : sym) {
        wg.adj[static_cast<std::size_t>(key.first)].emplace_back(key.second, w);
        wg.adj[static_cast<std::size_t>(key.second)].emplace_back(key.first, w);
    }
    wg.finish();
    return wg;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        std::uint64_t r = rng();
        if (r >= threshold) return r % n;
    }
}

// Portable Fisher-Yates (std::shuffle is implementation-defined).
void shuffle_indices(std::vector<int>& order, std::mt19937_64& rng) {
    for (std::size_t i = order.size(); i > 1; --i) {
        std::size_t j = uniform_index(rng, i);
        std::swap(order[i - 1], order[j]);
    }
}

constexpr double kGainEps = 1e-12;

// One local-moving phase; returns the (dense) node -> community map and
// whether any node moved.
bool one_level(const WorkGraph& wg, std::mt19937_64& rng, std::vector<int>& community) {
    const std::size_t n = wg.size();
    community.resize(n);
    for (std::size_t v = 0; v < n; ++v) community[v] = static_cast<int>(v);

    std::vector<double> tot(wg.degree);  // sum of degrees per community
    std::vector<int> order(n);
    for (std::size_t v = 0; v < n; ++v) order[v] = static_cast<int>(v);
    shuffle_indices(order, rng);

    bool any_move = false;
    bool moved = true;
    while (moved) {
        moved = false;
        for (int v : order) {
            const std::size_t sv = static_cast<std::size_t>(v);
            const int old_com = community[sv];
            const double kv = wg.degree[sv];

            // weight from v to each neighboring community
            std::map<int, double> links;
            links[old_com] += 0.0;
            for (const auto& [u, w] : wg.adj[sv]) {
                if (u == v) continue;
                links[community[static_cast<std::size_t>(u)]] += w;
            }

            tot[static_cast<std::size_t>(old_com)] -= kv;

            // gain(c) ~ links_vc - tot_c * kv / 2m; stay on ties, otherwise
            // smallest community id wins among tied candidates
            int best_com = old_com;
            double best_gain = links[old_com] - tot[static_cast<std::size_t>(old_com)] * kv / wg.two_m;
            for (const auto& [com, w] : links) {
                if (com == old_com) continue;
                double gain = w - tot[static_cast<std::size_t>(com)] * kv / wg.two_m;
                if (gain > best_gain + kGainEps) {
                    best_gain = gain;
                    best_com = com;
                }
            }

            tot[static_cast<std::size_t>(best_com)] += kv;
            if (best_com != old_com) {
                community[sv] = best_com;
                moved = true;
                any_move = true;
            }
        }
    }
    return any_move;
}

void densify(std::vector<int>& community) {
    std::unordered_map<int, int> remap;
    for (int& c : community) {
        auto [it, inserted] = remap.try_emplace(c, static_cast<int>(remap.size()));
        c = it->second;
    }
}

WorkGraph aggregate(const WorkGraph& wg, const std::vector<int>& community, int n_comms) {
    WorkGraph out;
    out.adj.assign(static_cast<std::size_t>(n_comms), {});
    out.self.assign(static_cast<std::size_t>(n_comms), 0.0);

    std::map<std::pair<int, int>, double> cross;
    for (std::size_t v = 0; v < wg.size(); ++v) {
        int cv = community[v];
        out.self[static_cast<std::size_t>(cv)] += wg.self[v];
        for (const auto& [u, w] : wg.adj[v]) {
            int cu = community[static_cast<std::size_t>(u)];
            if (cu == cv) {
                out.self[static_cast<std::size_t>(cv)] += w;  // both orientations visited
            } else if (cv < cu) {
                cross[{cv, cu}] += w;  // visited once per orientation; keep one
            }
        }
    }
    for (const auto& [key, w] : cross) {
        out.adj[static_cast<std::size_t>(key.first)].emplace_back(key.second, w);
        out.adj[static_cast<std::size_t>(key.second)].emplace_back(key.first, w);
    }
    out.finish();
    return out;
}

}  // namespace

std::vector<std::vector<int>> Partition::groups() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(n_communities));
    for (std::size_t v = 0; v < community.size(); ++v)
        out[static_cast<std::size_t>(community[v])].push_back(static_cast<int>(v));
    return out;
}

Partition louvain(const TradeGraph& g, WeightKind weight, std::uint64_t seed) {
    Partition p;
    p.weight = weight;
    p.seed = seed;

    const std::size_t n = g.node_count();
    p.community.assign(n, 0);
    for (std::size_t v = 0; v < n; ++v) p.community[v] = static_cast<int>(v);

    WorkGraph wg = project(g, weight);
    if (wg.two_m <= 0) {
        // no edges: singleton communities, modularity undefined -> 0
        p.n_communities = static_cast<int>(n);
        p.modularity = 0.0;
        return p;
    }

    std::mt19937_64 rng(splitmix64(seed));
    for (;;) {
        std::vector<int> level;
        bool improved = one_level(wg, rng, level);
        densify(level);
        int n_comms = level.empty() ? 0 : 1 + *std::max_element(level.begin(), level.end());
        for (auto& c : p.community) c = level[static_cast<std::size_t>(c)];
        if (!improved || n_comms == static_cast<int>(wg.size())) break;
        wg = aggregate(wg, level, n_comms);
    }

    // densify in order of first appearance by node index
    densify(p.community);
    p.n_communities = p.community.empty()
                          ? 0
                          : 1 + *std::max_element(p.community.begin(), p.community.end());
    p.modularity = modularity(g, p, weight);
    return p;
}

double modularity(const TradeGraph& g, const Partition& p, WeightKind weight) {
    if (p.community.size() != g.node_count())
        throw ComputeError("partition does not cover the graph");

    WorkGraph wg = project(g, weight);
    if (wg.two_m <= 0) throw ComputeError("modularity undefined: total weight is zero");

    int n_comms = 0;
    for (int c : p.community) n_comms = std::max(n_comms, c + 1);
    std::vector<double> internal(static_cast<std::size_t>(n_comms), 0.0);
    std::vector<double> tot(static_cast<std::size_t>(n_comms), 0.0);

    for (std::size_t v = 0; v < wg.size(); ++v) {
        int cv = p.community[v];
        tot[static_cast<std::size_t>(cv)] += wg.degree[v];
        internal[static_cast<std::size_t>(cv)] += wg.self[v];
        for (const auto& [u, w] : wg.adj[v]) {
            if (p.community[static_cast<std::size_t>(u)] == cv) internal[static_cast<std::size_t>(cv)] += w;
        }
    }

    double q = 0;
    for (int c = 0; c < n_comms; ++c) {
        double frac_in = internal[static_cast<std::size_t>(c)] / wg.two_m;
        double frac_tot = tot[static_cast<std::size_t>(c)] / wg.two_m;
        q += frac_in - frac_tot * frac_tot;
    }
    return q;
}

std::vector<RegionDominance> dominant_region(const TradeGraph& g, const Partition& p) {
    if (p.community.size() != g.node_count())
        throw ComputeError("partition does not cover the graph");

    std::vector<std::map<std::string, int>> counts(static_cast<std::size_t>(p.n_communities));
    for (std::size_t v = 0; v < g.node_count(); ++v)
        counts[static_cast<std::size_t>(p.community[v])][g.port(static_cast<int>(v)).region]++;

    std::vector<RegionDominance> out;
    out.reserve(counts.size());
    for (const auto& by_region : counts) {
        RegionDominance dom;
        int best = -1;
        for (const auto& [region, cnt] : by_region) {  // map order = lexicographic
            if (cnt > best) {
                best = cnt;
                dom.region = region;
                dom.tie = false;
            } else if (cnt == best) {
                dom.tie = true;
            }
        }
        out.push_back(std::move(dom));
    }
    return out;
}

TransitionTable transitions(const TradeGraph& g_before, const TradeGraph& g_after,
                            const Partition& p_before, const Partition& p_after) {
    if (p_before.community.size() != g_before.node_count() ||
        p_after.community.size() != g_after.node_count())
        throw ComputeError("partition does not cover its graph");

    TransitionTable table;

    std::set<long long> before_ids, after_ids;
    for (const auto& port : g_before.ports()) before_ids.insert(port.id);
    for (const auto& port : g_after.ports()) after_ids.insert(port.id);

    std::map<std::pair<int, int>, std::size_t> link_counts;
    std::vector<std::size_t> shared_before(static_cast<std::size_t>(p_before.n_communities), 0);
    std::vector<std::size_t> shared_after(static_cast<std::size_t>(p_after.n_communities), 0);

    for (long long id : before_ids) {
        if (!after_ids.count(id)) {
            table.exiting_ports.push_back(id);
            continue;
        }
        int vb = g_before.index_of(id);
        int va = g_after.index_of(id);
        int cb = p_before.community[static_cast<std::size_t>(vb)];
        int ca = p_after.community[static_cast<std::size_t>(va)];
        link_counts[{cb, ca}]++;
        shared_before[static_cast<std::size_t>(cb)]++;
        shared_after[static_cast<std::size_t>(ca)]++;
        ++table.shared_ports;
    }
    for (long long id : after_ids)
        if (!before_ids.count(id)) table.entering_ports.push_back(id);

    if (table.shared_ports == 0) throw ComputeError("no comparable ports");

    for (const auto& [key, count] : link_counts)
        table.links.push_back({key.first, key.second, count});

    auto sides = [](const TradeGraph& g, const Partition& p,
                    const std::vector<std::size_t>& shared) {
        std::vector<TransitionSide> out;
        auto dominance = dominant_region(g, p);
        auto groups = p.groups();
        for (int c = 0; c < p.n_communities; ++c) {
            TransitionSide side;
            side.community = c;
            side.size = groups[static_cast<std::size_t>(c)].size();
            side.shared_size = shared[static_cast<std::size_t>(c)];
            side.dominant_region = dominance[static_cast<std::size_t>(c)].region;
            side.region_tie = dominance[static_cast<std::size_t>(c)].tie;
            out.push_back(std::move(side));
        }
        return out;
    };
    table.before = sides(g_before, p_before, shared_before);
    table.after = sides(g_after, p_after, shared_after);
    return table;
}

}  // namespace drybulk
