#include "drybulknet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>

#include "drybulknet/errors.hpp"
#include "drybulknet/metrics.hpp"

namespace drybulk {

TradeGraph TradeGraph::build(std::vector<PortInfo> ports, std::vector<Edge> edges,
                             std::string layer_label, std::string window_label) {
    TradeGraph g;
    g.ports_ = std::move(ports);
    g.layer_label_ = std::move(layer_label);
    g.window_label_ = std::move(window_label);

    const int n = static_cast<int>(g.ports_.size());
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return std::pair(a.src, a.dst) < std::pair(b.src, b.dst);
    });

    g.edges_.reserve(edges.size());
    g.weights_.reserve(edges.size());
    g.out_adj_.assign(static_cast<std::size_t>(n), {});
    g.in_adj_.assign(static_cast<std::size_t>(n), {});
    for (const auto& e : edges) {
        if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n)
            throw ComputeError("edge endpoint outside node set");
        if (e.src == e.dst)
            throw ComputeError("self-loop edge in simple digraph");
        if (!g.edges_.empty() && g.edges_.back() == std::pair(e.src, e.dst))
            throw ComputeError("duplicate edge in simple digraph");
        g.edges_.emplace_back(e.src, e.dst);
        g.weights_.push_back(e.weights);
        g.out_adj_[static_cast<std::size_t>(e.src)].push_back(e.dst);
        g.in_adj_[static_cast<std::size_t>(e.dst)].push_back(e.src);
    }
    for (auto& nbrs : g.in_adj_) std::sort(nbrs.begin(), nbrs.end());
    return g;
}

int TradeGraph::index_of(long long port_id) const {
    auto it = std::lower_bound(ports_.begin(), ports_.end(), port_id,
                               [](const PortInfo& p, long long id) { return p.id < id; });
    if (it == ports_.end() || it->id != port_id) return -1;
    return static_cast<int>(it - ports_.begin());
}

bool TradeGraph::has_edge(int src, int dst) const {
    return std::binary_search(edges_.begin(), edges_.end(), std::pair(src, dst));
}

const EdgeWeights& TradeGraph::weights(int src, int dst) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair(src, dst));
    if (it == edges_.end() || *it != std::pair(src, dst))
        throw ComputeError("no such edge");
    return weights_[static_cast<std::size_t>(it - edges_.begin())];
}

std::span<const int> TradeGraph::out_neighbors(int v) const {
    return out_adj_[static_cast<std::size_t>(v)];
}

std::span<const int> TradeGraph::in_neighbors(int v) const {
    return in_adj_[static_cast<std::size_t>(v)];
}

TradeGraph build_graph(const FlowTable& table) {
    std::map<long long, PortInfo> ports;
    for (const auto& rec : table.records) {
        if (!rec.load_port_id || !rec.discharge_port_id)
            throw ComputeError("record with unknown port survived cleaning");
        if (*rec.load_port_id == *rec.discharge_port_id)
            throw ComputeError("self-loop record survived cleaning: flow " + rec.flow_id);
        ports.try_emplace(*rec.load_port_id,
                          PortInfo{*rec.load_port_id, rec.load_port_name, rec.load_region,
                                   rec.load_country});
        ports.try_emplace(*rec.discharge_port_id,
                          PortInfo{*rec.discharge_port_id, rec.discharge_port_name,
                                   rec.discharge_region, rec.discharge_country});
    }

    std::vector<PortInfo> port_list;
    port_list.reserve(ports.size());
    for (auto& [id, info] : ports) port_list.push_back(std::move(info));

    auto index_of = [&](long long id) {
        auto it = std::lower_bound(port_list.begin(), port_list.end(), id,
                                   [](const PortInfo& p, long long key) { return p.id < key; });
        return static_cast<int>(it - port_list.begin());
    };

    // Edges only from the (load, discharge) pair of each record.
    std::map<std::pair<int, int>, EdgeWeights> agg;
    for (const auto& rec : table.records) {
        auto& w = agg[{index_of(*rec.load_port_id), index_of(*rec.discharge_port_id)}];
        w.frequency += 1;
        w.dwt_total += rec.dwt;
        w.volume_total += rec.volume;
    }

    std::vector<Edge> edges;
    edges.reserve(agg.size());
    for (const auto& [key, w] : agg) edges.push_back({key.first, key.second, w});
    return TradeGraph::build(std::move(port_list), std::move(edges));
}

UndirectedView::UndirectedView(const TradeGraph& g) {
    adj_.assign(g.node_count(), {});
    for (const auto& [u, v] : g.edges()) {
        adj_[static_cast<std::size_t>(u)].push_back(v);
        adj_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& nbrs : adj_) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
        n_edges_ += nbrs.size();
    }
    n_edges_ /= 2;
}

bool UndirectedView::has_edge(int u, int v) const {
    const auto& nbrs = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

namespace {

std::vector<std::vector<int>> weak_components(const TradeGraph& g) {
    const int n = static_cast<int>(g.node_count());
    UndirectedView und(g);
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<int>> members;
    for (int s = 0; s < n; ++s) {
        if (comp[static_cast<std::size_t>(s)] >= 0) continue;
        int id = static_cast<int>(members.size());
        members.emplace_back();
        std::queue<int> q;
        q.push(s);
        comp[static_cast<std::size_t>(s)] = id;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            members[static_cast<std::size_t>(id)].push_back(v);
            for (int w : und.neighbors(v)) {
                if (comp[static_cast<std::size_t>(w)] < 0) {
                    comp[static_cast<std::size_t>(w)] = id;
                    q.push(w);
                }
            }
        }
    }
    return members;
}

// Iterative Tarjan; components come out in reverse topological order.
std::vector<std::vector<int>> strong_components(const TradeGraph& g) {
    const int n = static_cast<int>(g.node_count());
    std::vector<int> index(static_cast<std::size_t>(n), -1);
    std::vector<int> lowlink(static_cast<std::size_t>(n), 0);
    std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
    std::vector<int> stack;
    std::vector<std::vector<int>> members;
    int next_index = 0;

    struct Frame {
        int v;
        std::size_t child;
    };
    std::vector<Frame> call_stack;

    for (int root = 0; root < n; ++root) {
        if (index[static_cast<std::size_t>(root)] >= 0) continue;
        call_stack.push_back({root, 0});
        while (!call_stack.empty()) {
            auto& frame = call_stack.back();
            int v = frame.v;
            if (frame.child == 0) {
                index[static_cast<std::size_t>(v)] = lowlink[static_cast<std::size_t>(v)] = next_index++;
                stack.push_back(v);
                on_stack[static_cast<std::size_t>(v)] = true;
            }
            auto out = g.out_neighbors(v);
            bool descended = false;
            while (frame.child < out.size()) {
                int w = out[frame.child++];
                if (index[static_cast<std::size_t>(w)] < 0) {
                    call_stack.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[static_cast<std::size_t>(w)]) {
                    lowlink[static_cast<std::size_t>(v)] =
                        std::min(lowlink[static_cast<std::size_t>(v)], index[static_cast<std::size_t>(w)]);
                }
            }
            if (descended) continue;
            if (lowlink[static_cast<std::size_t>(v)] == index[static_cast<std::size_t>(v)]) {
                std::vector<int> comp;
                for (;;) {
                    int w = stack.back();
                    stack.pop_back();
                    on_stack[static_cast<std::size_t>(w)] = false;
                    comp.push_back(w);
                    if (w == v) break;
                }
                members.push_back(std::move(comp));
            }
            call_stack.pop_back();
            if (!call_stack.empty()) {
                auto& parent = call_stack.back();
                lowlink[static_cast<std::size_t>(parent.v)] =
                    std::min(lowlink[static_cast<std::size_t>(parent.v)],
                             lowlink[static_cast<std::size_t>(v)]);
            }
        }
    }
    return members;
}

void order_components(std::vector<std::vector<int>>& members) {
    for (auto& m : members) std::sort(m.begin(), m.end());
    std::sort(members.begin(), members.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a.front() < b.front();
    });
}

}  // namespace

ComponentSet components(const TradeGraph& g, ComponentKind kind) {
    ComponentSet set;
    set.kind = kind;
    set.members = kind == ComponentKind::weak ? weak_components(g) : strong_components(g);
    order_components(set.members);
    return set;
}

TradeGraph gscc(const TradeGraph& g) {
    if (g.node_count() == 0) throw ComputeError("gscc of empty graph");
    auto strong = components(g, ComponentKind::strong);
    const auto& giant = strong.members.front();

    std::vector<int> old_to_new(g.node_count(), -1);
    std::vector<PortInfo> ports;
    ports.reserve(giant.size());
    for (std::size_t i = 0; i < giant.size(); ++i) {
        old_to_new[static_cast<std::size_t>(giant[i])] = static_cast<int>(i);
        ports.push_back(g.port(giant[i]));
    }

    std::vector<Edge> edges;
    const auto& all = g.edges();
    for (std::size_t i = 0; i < all.size(); ++i) {
        int u = old_to_new[static_cast<std::size_t>(all[i].first)];
        int v = old_to_new[static_cast<std::size_t>(all[i].second)];
        if (u >= 0 && v >= 0) edges.push_back({u, v, g.edge_weights()[i]});
    }
    return TradeGraph::build(std::move(ports), std::move(edges), g.layer_label(),
                             g.window_label());
}

namespace {

// BFS eccentricity; -1 when some node is unreachable.
template <typename NeighborFn>
int bfs_eccentricity(int n, int source, NeighborFn&& neighbors) {
    std::vector<int> dist(static_cast<std::size_t>(n), -1);
    std::queue<int> q;
    dist[static_cast<std::size_t>(source)] = 0;
    q.push(source);
    int reached = 1, ecc = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : neighbors(v)) {
            if (dist[static_cast<std::size_t>(w)] < 0) {
                dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                ecc = std::max(ecc, dist[static_cast<std::size_t>(w)]);
                ++reached;
                q.push(w);
            }
        }
    }
    return reached == n ? ecc : -1;
}

}  // namespace

int diameter(const TradeGraph& g, DiameterMode mode) {
    const int n = static_cast<int>(g.node_count());
    if (n == 0) throw ComputeError("diameter of empty graph");
    if (n == 1) return 0;

    int diam = 0;
    if (mode == DiameterMode::undirected) {
        UndirectedView und(g);
        for (int s = 0; s < n; ++s) {
            int ecc = bfs_eccentricity(n, s, [&](int v) { return und.neighbors(v); });
            if (ecc < 0) throw ComputeError("diameter: graph not connected (undirected)");
            diam = std::max(diam, ecc);
        }
    } else {
        for (int s = 0; s < n; ++s) {
            int ecc = bfs_eccentricity(n, s, [&](int v) { return g.out_neighbors(v); });
            if (ecc < 0) throw ComputeError("diameter: graph not strongly connected");
            diam = std::max(diam, ecc);
        }
    }
    return diam;
}

double avg_path_length(const TradeGraph& g) {
    const int n = static_cast<int>(g.node_count());
    if (n == 0) throw ComputeError("avg_path_length of empty graph");
    if (n == 1) return 0.0;

    long long total = 0;
    for (int s = 0; s < n; ++s) {
        std::vector<int> dist(static_cast<std::size_t>(n), -1);
        std::queue<int> q;
        dist[static_cast<std::size_t>(s)] = 0;
        q.push(s);
        int reached = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            total += dist[static_cast<std::size_t>(v)];
            for (int w : g.out_neighbors(v)) {
                if (dist[static_cast<std::size_t>(w)] < 0) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                    ++reached;
                    q.push(w);
                }
            }
        }
        if (reached != n) throw ComputeError("avg_path_length: graph not strongly connected");
    }
    return static_cast<double>(total) / (static_cast<double>(n) * (n - 1));
}

GlobalCentralityReport global_report(const TradeGraph& g) {
    if (g.node_count() == 0) throw ComputeError("global_report of empty graph");

    GlobalCentralityReport r;
    r.n = g.node_count();
    r.e = g.edge_count();
    r.k = static_cast<double>(r.e) / static_cast<double>(r.n);
    r.phi = r.n > 1 ? static_cast<double>(r.e) /
                          (static_cast<double>(r.n) * static_cast<double>(r.n - 1))
                    : 0.0;

    auto weak = components(g, ComponentKind::weak);
    r.n_w = weak.members.size();
    r.p_w = static_cast<double>(weak.members.front().size()) / static_cast<double>(r.n);

    auto strong = components(g, ComponentKind::strong);
    r.n_s = strong.members.size();
    r.p_s = static_cast<double>(strong.members.front().size()) / static_cast<double>(r.n);

    // GWCC diameter on the undirected projection of the giant weak component.
    {
        std::vector<int> old_to_new(g.node_count(), -1);
        const auto& giant = weak.members.front();
        std::vector<PortInfo> ports;
        for (std::size_t i = 0; i < giant.size(); ++i) {
            old_to_new[static_cast<std::size_t>(giant[i])] = static_cast<int>(i);
            ports.push_back(g.port(giant[i]));
        }
        std::vector<Edge> edges;
        const auto& all = g.edges();
        for (std::size_t i = 0; i < all.size(); ++i) {
            int u = old_to_new[static_cast<std::size_t>(all[i].first)];
            int v = old_to_new[static_cast<std::size_t>(all[i].second)];
            if (u >= 0 && v >= 0) edges.push_back({u, v, g.edge_weights()[i]});
        }
        TradeGraph gw = TradeGraph::build(std::move(ports), std::move(edges));
        r.d_w = diameter(gw, DiameterMode::undirected);
    }

    TradeGraph gs = gscc(g);
    if (gs.node_count() >= 2) {
        r.d_s = diameter(gs, DiameterMode::directed);
        r.l = avg_path_length(gs);
    } else {
        r.d_s = 0;
        r.l = 0.0;
    }

    r.c = transitivity(g);
    try {
        r.a = assortativity(g);
    } catch (const ComputeError&) {
        r.a = std::numeric_limits<double>::quiet_NaN();
    }
    return r;
}

}  // namespace drybulk
