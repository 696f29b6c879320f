#include "drybulknet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>

#include "drybulknet/errors.hpp"

namespace drybulk {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0 || syy == 0) return kNaN;
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

const char* measure_name(MeasureId id) {
    switch (id) {
        case MeasureId::k_i: return "k_i";
        case MeasureId::s_i_f: return "s_i_f";
        case MeasureId::s_i_d: return "s_i_d";
        case MeasureId::s_i_t: return "s_i_t";
        case MeasureId::k_o: return "k_o";
        case MeasureId::s_o_f: return "s_o_f";
        case MeasureId::s_o_d: return "s_o_d";
        case MeasureId::s_o_t: return "s_o_t";
        case MeasureId::betweenness: return "betweenness";
    }
    return "?";
}

CentralityVector degree_centrality(const TradeGraph& g, Direction dir, bool normalized) {
    const std::size_t n = g.node_count();
    if (normalized && n < 2)
        throw ComputeError("normalized degree undefined for n < 2");

    CentralityVector out;
    out.measure = dir == Direction::in ? MeasureId::k_i : MeasureId::k_o;
    out.normalized = normalized;
    out.values.resize(n);
    const double scale = normalized ? 1.0 / static_cast<double>(n - 1) : 1.0;
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t deg = dir == Direction::in ? g.in_degree(static_cast<int>(v))
                                               : g.out_degree(static_cast<int>(v));
        out.values[v] = static_cast<double>(deg) * scale;
    }
    return out;
}

CentralityVector strength_centrality(const TradeGraph& g, Direction dir, WeightKind weight) {
    CentralityVector out;
    if (dir == Direction::in) {
        out.measure = weight == WeightKind::frequency ? MeasureId::s_i_f
                      : weight == WeightKind::dwt     ? MeasureId::s_i_d
                                                      : MeasureId::s_i_t;
    } else {
        out.measure = weight == WeightKind::frequency ? MeasureId::s_o_f
                      : weight == WeightKind::dwt     ? MeasureId::s_o_d
                                                      : MeasureId::s_o_t;
    }
    out.values.assign(g.node_count(), 0.0);

    const auto& edges = g.edges();
    const auto& weights = g.edge_weights();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        double w = weight == WeightKind::frequency ? static_cast<double>(weights[i].frequency)
                   : weight == WeightKind::dwt     ? weights[i].dwt_total
                                                   : weights[i].volume_total;
        int endpoint = dir == Direction::in ? edges[i].second : edges[i].first;
        out.values[static_cast<std::size_t>(endpoint)] += w;
    }
    return out;
}

CentralityVector betweenness(const TradeGraph& g, bool normalized) {
    const int n = static_cast<int>(g.node_count());
    if (normalized && n < 3)
        throw ComputeError("normalized betweenness undefined for n < 3");

    std::vector<double> bc(static_cast<std::size_t>(n), 0.0);

    // Brandes: one BFS per source with pair-dependency accumulation.
    std::vector<long long> sigma(static_cast<std::size_t>(n));
    std::vector<int> dist(static_cast<std::size_t>(n));
    std::vector<double> delta(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> preds(static_cast<std::size_t>(n));
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));

    for (int s = 0; s < n; ++s) {
        std::fill(sigma.begin(), sigma.end(), 0);
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& p : preds) p.clear();
        order.clear();

        sigma[static_cast<std::size_t>(s)] = 1;
        dist[static_cast<std::size_t>(s)] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            order.push_back(v);
            for (int w : g.out_neighbors(v)) {
                if (dist[static_cast<std::size_t>(w)] < 0) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                    q.push(w);
                }
                if (dist[static_cast<std::size_t>(w)] == dist[static_cast<std::size_t>(v)] + 1) {
                    sigma[static_cast<std::size_t>(w)] += sigma[static_cast<std::size_t>(v)];
                    preds[static_cast<std::size_t>(w)].push_back(v);
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int w = *it;
            for (int v : preds[static_cast<std::size_t>(w)]) {
                delta[static_cast<std::size_t>(v)] +=
                    static_cast<double>(sigma[static_cast<std::size_t>(v)]) /
                    static_cast<double>(sigma[static_cast<std::size_t>(w)]) *
                    (1.0 + delta[static_cast<std::size_t>(w)]);
            }
            if (w != s) bc[static_cast<std::size_t>(w)] += delta[static_cast<std::size_t>(w)];
        }
    }

    CentralityVector out;
    out.measure = MeasureId::betweenness;
    out.normalized = normalized;
    if (normalized) {
        const double scale = 1.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
        for (auto& v : bc) v *= scale;
    }
    out.values = std::move(bc);
    return out;
}

double transitivity(const UndirectedView& und) {
    const int n = static_cast<int>(und.node_count());
    long long triangles3 = 0;  // 3 * triangle count (each counted per corner pair)
    long long triples = 0;
    for (int v = 0; v < n; ++v) {
        auto nbrs = und.neighbors(v);
        long long d = static_cast<long long>(nbrs.size());
        triples += d * (d - 1) / 2;
        // closed triples centered at v: adjacent neighbor pairs
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
                if (und.has_edge(nbrs[i], nbrs[j])) ++triangles3;
            }
        }
    }
    if (triples == 0) return 0.0;
    return static_cast<double>(triangles3) / static_cast<double>(triples);
}

double transitivity(const TradeGraph& g) {
    return transitivity(UndirectedView(g));
}

double assortativity(const TradeGraph& g) {
    UndirectedView und(g);
    if (und.edge_count() < 2)
        throw ComputeError("undefined assortativity: fewer than 2 edges");

    // Pearson over edge endpoint degrees, both orientations per edge.
    std::vector<double> x, y;
    x.reserve(und.edge_count() * 2);
    y.reserve(und.edge_count() * 2);
    const int n = static_cast<int>(und.node_count());
    for (int u = 0; u < n; ++u) {
        for (int v : und.neighbors(u)) {
            x.push_back(static_cast<double>(und.degree(u)));
            y.push_back(static_cast<double>(und.degree(v)));
        }
    }
    double r = pearson(x, y);
    if (std::isnan(r)) throw ComputeError("undefined assortativity: zero degree variance");
    return r;
}

CorrelationMatrix centrality_correlations(const TradeGraph& g) {
    if (g.node_count() < 3)
        throw ComputeError("centrality correlations need n >= 3");

    std::vector<CentralityVector> vectors;
    vectors.push_back(degree_centrality(g, Direction::in, false));
    vectors.push_back(strength_centrality(g, Direction::in, WeightKind::frequency));
    vectors.push_back(strength_centrality(g, Direction::in, WeightKind::dwt));
    vectors.push_back(strength_centrality(g, Direction::in, WeightKind::volume));
    vectors.push_back(degree_centrality(g, Direction::out, false));
    vectors.push_back(strength_centrality(g, Direction::out, WeightKind::frequency));
    vectors.push_back(strength_centrality(g, Direction::out, WeightKind::dwt));
    vectors.push_back(strength_centrality(g, Direction::out, WeightKind::volume));

    CorrelationMatrix m;
    for (const auto& v : vectors) m.measures.push_back(v.measure);
    m.r.assign(vectors.size(), std::vector<double>(vectors.size(), 0.0));
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        m.r[i][i] = 1.0;
        for (std::size_t j = i + 1; j < vectors.size(); ++j) {
            double r = pearson(vectors[i].values, vectors[j].values);
            m.r[i][j] = m.r[j][i] = r;
        }
    }
    return m;
}

PowerLawFit fit_power_law_histogram(const std::vector<std::pair<double, double>>& histogram) {
    std::vector<double> lx, ly;
    for (const auto& [k, f] : histogram) {
        if (k < 1 || f < 1) continue;
        lx.push_back(std::log(k));
        ly.push_back(std::log(f));
    }
    // distinct k with nonzero frequency
    if (lx.size() < 2) throw ComputeError("power-law fit needs >= 2 usable bins");

    const std::size_t n = lx.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx == 0) throw ComputeError("power-law fit needs >= 2 distinct degree values");

    PowerLawFit fit;
    const double slope = sxy / sxx;
    fit.gamma = -slope;
    fit.logC = my - slope * mx;
    fit.n_bins = n;
    if (syy == 0) {
        fit.r2 = 1.0;  // all frequencies equal and exactly fit by slope 0
    } else {
        double ss_res = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double pred = fit.logC + slope * lx[i];
            ss_res += (ly[i] - pred) * (ly[i] - pred);
        }
        fit.r2 = 1.0 - ss_res / syy;
    }
    return fit;
}

PowerLawFit fit_power_law(const TradeGraph& g, DegreeKind which) {
    std::map<long long, double> counts;
    const int n = static_cast<int>(g.node_count());
    for (int v = 0; v < n; ++v) {
        long long k = 0;
        if (which == DegreeKind::in) k = static_cast<long long>(g.in_degree(v));
        else if (which == DegreeKind::out) k = static_cast<long long>(g.out_degree(v));
        else k = static_cast<long long>(g.in_degree(v) + g.out_degree(v));
        if (k >= 1) counts[k] += 1.0;
    }
    std::vector<std::pair<double, double>> histogram;
    histogram.reserve(counts.size());
    for (const auto& [k, f] : counts) histogram.emplace_back(static_cast<double>(k), f);
    return fit_power_law_histogram(histogram);
}

std::vector<CountryScore> rank_countries(const TradeGraph& g, const CentralityVector& measure,
                                         std::size_t top_k) {
    std::map<std::string, double> by_country;
    for (std::size_t v = 0; v < g.node_count(); ++v)
        by_country[g.port(static_cast<int>(v)).country] += measure.values[v];

    std::vector<CountryScore> scores;
    scores.reserve(by_country.size());
    for (const auto& [country, score] : by_country) scores.push_back({country, score});
    std::stable_sort(scores.begin(), scores.end(), [](const CountryScore& a, const CountryScore& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.country < b.country;
    });
    if (top_k > 0 && scores.size() > top_k) scores.resize(top_k);
    return scores;
}

}  // namespace drybulk
