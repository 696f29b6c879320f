#include <doctest.h>

#include <cmath>
#include <random>

#include "drybulknet/errors.hpp"
#include "drybulknet/graph.hpp"
#include "helpers.hpp"

using namespace drybulk;
using testutil::graph_of;
using testutil::record;
using testutil::table_of;

TEST_CASE("build_graph aggregates repeated routes into one edge") {
    auto t = table_of({record("F1", 1, 2, "Coal", "2020-01-01T00:00:00Z", 5000, 10000),
                       record("F2", 1, 2, "Coal", "2020-02-01T00:00:00Z", 4500, 12000)});
    auto g = build_graph(t);
    CHECK(g.node_count() == 2);
    CHECK(g.edge_count() == 1);
    const auto& w = g.weights(g.index_of(1), g.index_of(2));
    CHECK(w.frequency == 2);
    CHECK(w.dwt_total == doctest::Approx(22000));
    CHECK(w.volume_total == doctest::Approx(9500));
}

TEST_CASE("build_graph keeps trade-flow semantics: no inferred port-call edges") {
    // a ship loading at X and discharging at Y and Z yields X->Y and X->Z only
    auto t = table_of({record("F1", 100, 200), record("F2", 100, 300)});
    auto g = build_graph(t);
    CHECK(g.edge_count() == 2);
    int x = g.index_of(100), y = g.index_of(200), z = g.index_of(300);
    CHECK(g.has_edge(x, y));
    CHECK(g.has_edge(x, z));
    CHECK(!g.has_edge(y, z));
    CHECK(g.out_degree(x) == 2);
    CHECK(g.in_degree(x) == 0);
    CHECK(g.in_degree(y) == 1);
    CHECK(g.in_degree(z) == 1);
}

TEST_CASE("build_graph: edge frequencies sum to the record count") {
    std::vector<TradeFlowRecord> records;
    for (int i = 0; i < 57; ++i)
        records.push_back(record("F" + std::to_string(i), 1 + i % 7, 10 + (i * 3) % 5));
    auto g = build_graph(table_of(records));
    long long total = 0;
    for (const auto& w : g.edge_weights()) total += w.frequency;
    CHECK(total == 57);
}

TEST_CASE("build_graph rejects surviving self-loops") {
    CHECK_THROWS_AS(build_graph(table_of({record("F1", 5, 5)})), ComputeError);
}

TEST_CASE("average-degree and density arithmetic at published scale") {
    // k = e/n and phi = e/(n(n-1)) replayed from the published n, e
    auto check_row = [](double n, double e, double k, double phi) {
        CHECK(e / n == doctest::Approx(k).epsilon(0.001));
        CHECK(e / (n * (n - 1)) == doctest::Approx(phi).margin(0.001));
    };
    check_row(2748, 171631, 62.46, 0.023);
    check_row(1459, 22966, 15.74, 0.011);
}

TEST_CASE("components: strongly connected pair and singletons") {
    auto g = graph_of({{1, 2}, {2, 1}, {3, 4}});
    auto strong = components(g, ComponentKind::strong);
    REQUIRE(strong.members.size() == 3);
    CHECK(strong.members[0].size() == 2);  // {1,2}
    CHECK(strong.members[1].size() == 1);
    CHECK(strong.members[2].size() == 1);

    auto weak = components(g, ComponentKind::weak);
    CHECK(weak.members.size() == 2);
}

TEST_CASE("components: directed path is one WCC, three SCCs") {
    auto g = graph_of({{1, 2}, {2, 3}});
    CHECK(components(g, ComponentKind::weak).members.size() == 1);
    CHECK(components(g, ComponentKind::strong).members.size() == 3);
}

TEST_CASE("component ordering is deterministic: size desc then smallest id") {
    auto g = graph_of({{1, 2}, {2, 1}, {5, 6}, {6, 5}, {3, 4}, {4, 3}});
    auto strong = components(g, ComponentKind::strong);
    REQUIRE(strong.members.size() == 3);
    // equal sizes: ordered by smallest member index
    CHECK(g.port(strong.members[0][0]).id == 1);
    CHECK(g.port(strong.members[1][0]).id == 3);
    CHECK(g.port(strong.members[2][0]).id == 5);
}

TEST_CASE("every node lies in exactly one WCC and one SCC; SCC refines WCC") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = testutil::random_digraph(rng, 12, 20);
        for (auto kind : {ComponentKind::weak, ComponentKind::strong}) {
            auto set = components(g, kind);
            std::vector<int> seen(g.node_count(), 0);
            for (const auto& members : set.members)
                for (int v : members) seen[static_cast<std::size_t>(v)]++;
            for (int count : seen) CHECK(count == 1);
        }
        // refinement: each SCC is inside one WCC
        auto weak = components(g, ComponentKind::weak);
        std::vector<int> wcc_of(g.node_count());
        for (std::size_t wi = 0; wi < weak.members.size(); ++wi)
            for (int v : weak.members[wi]) wcc_of[static_cast<std::size_t>(v)] = static_cast<int>(wi);
        for (const auto& scc : components(g, ComponentKind::strong).members) {
            for (int v : scc) CHECK(wcc_of[static_cast<std::size_t>(v)] == wcc_of[static_cast<std::size_t>(scc[0])]);
        }
    }
}

TEST_CASE("gscc extracts the 2-cycle from a pendant configuration") {
    auto g = graph_of({{1, 2}, {2, 1}, {2, 3}});
    auto core = gscc(g);
    CHECK(core.node_count() == 2);
    CHECK(core.edge_count() == 2);
    CHECK(core.index_of(3) == -1);
    // gscc output is strongly connected
    CHECK(components(core, ComponentKind::strong).members.size() == 1);
}

TEST_CASE("gscc of an acyclic graph is a single node") {
    auto g = graph_of({{1, 2}, {2, 3}, {1, 3}});
    CHECK(gscc(g).node_count() == 1);
}

TEST_CASE("gscc keeps edge weights") {
    auto t = table_of({record("F1", 1, 2), record("F2", 2, 1), record("F3", 1, 2),
                       record("F4", 2, 3)});
    auto core = gscc(build_graph(t));
    CHECK(core.weights(core.index_of(1), core.index_of(2)).frequency == 2);
}

TEST_CASE("gscc density arithmetic matches the published grain row") {
    // n=489, e=10985 -> phi = 0.046, printed as 0.05
    double phi = 10985.0 / (489.0 * 488.0);
    CHECK(phi == doctest::Approx(0.046).margin(0.001));
    CHECK(std::round(phi * 100) / 100 == doctest::Approx(0.05));
}

TEST_CASE("diameter on small shapes") {
    auto path = testutil::bidirectional({{1, 2}, {2, 3}, {3, 4}});
    CHECK(diameter(path, DiameterMode::undirected) == 3);

    auto cycle = graph_of({{1, 2}, {2, 3}, {3, 1}});
    CHECK(diameter(cycle, DiameterMode::directed) == 2);

    std::vector<std::pair<long long, long long>> complete;
    for (long long i = 0; i < 5; ++i)
        for (long long j = 0; j < 5; ++j)
            if (i != j) complete.emplace_back(i, j);
    CHECK(diameter(graph_of(complete), DiameterMode::directed) == 1);
}

TEST_CASE("diameter demands connectivity in the requested mode") {
    auto disconnected = graph_of({{1, 2}, {3, 4}});
    CHECK_THROWS_AS(diameter(disconnected, DiameterMode::undirected), ComputeError);
    auto acyclic = graph_of({{1, 2}});
    CHECK_THROWS_AS(diameter(acyclic, DiameterMode::directed), ComputeError);
}

TEST_CASE("avg_path_length on closed forms") {
    auto cycle = graph_of({{1, 2}, {2, 3}, {3, 1}});
    CHECK(avg_path_length(cycle) == doctest::Approx(1.5));

    std::vector<std::pair<long long, long long>> complete;
    for (long long i = 0; i < 4; ++i)
        for (long long j = 0; j < 4; ++j)
            if (i != j) complete.emplace_back(i, j);
    CHECK(avg_path_length(graph_of(complete)) == doctest::Approx(1.0));

    // bidirectional star on 4 nodes: hub pairs at 1, leaf-leaf at 2
    auto star = testutil::bidirectional({{0, 1}, {0, 2}, {0, 3}});
    CHECK(avg_path_length(star) == doctest::Approx(1.5));
}

TEST_CASE("avg_path_length agrees with Floyd-Warshall on random strongly connected graphs") {
    std::mt19937_64 rng(99);
    int tested = 0;
    while (tested < 10) {
        auto g = testutil::random_digraph(rng, 9, 30);
        if (components(g, ComponentKind::strong).members.size() != 1) continue;
        ++tested;
        auto d = testutil::all_pairs_hops(g, true);
        double sum = 0;
        int n = static_cast<int>(g.node_count());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) sum += d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        CHECK(avg_path_length(g) == doctest::Approx(sum / (n * (n - 1))).epsilon(1e-12));
    }
}

TEST_CASE("avg_path_length requires strong connectivity") {
    CHECK_THROWS_AS(avg_path_length(graph_of({{1, 2}})), ComputeError);
}

TEST_CASE("undirected distances never exceed directed distances") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 25; ++trial) {
        auto g = testutil::random_digraph(rng, 10, 18);
        auto directed = testutil::all_pairs_hops(g, true);
        auto undirected = testutil::all_pairs_hops(g, false);
        for (std::size_t i = 0; i < g.node_count(); ++i) {
            for (std::size_t j = 0; j < g.node_count(); ++j) {
                if (directed[i][j] < 0) continue;
                REQUIRE(undirected[i][j] >= 0);
                CHECK(undirected[i][j] <= directed[i][j]);
            }
        }
    }
}

TEST_CASE("undirected projection collapses reciprocal edges and keeps the node set") {
    auto g = graph_of({{1, 2}, {2, 1}, {2, 3}});
    UndirectedView und(g);
    CHECK(und.node_count() == g.node_count());
    CHECK(und.edge_count() == 2);
    CHECK(und.has_edge(g.index_of(1), g.index_of(2)));
    CHECK(und.has_edge(g.index_of(2), g.index_of(1)));
}

TEST_CASE("global_report on a single edge") {
    auto r = global_report(graph_of({{1, 2}}));
    CHECK(r.n == 2);
    CHECK(r.e == 1);
    CHECK(r.k == doctest::Approx(0.5));
    CHECK(r.phi == doctest::Approx(0.5));
    CHECK(r.n_w == 1);
    CHECK(r.n_s == 2);
    CHECK(r.c == 0.0);
    CHECK(std::isnan(r.a));  // degenerate degree variance
    CHECK(r.d_s == 0);       // GSCC is a single node
    CHECK(r.l == 0.0);
}

TEST_CASE("global_report on a directed triangle") {
    auto r = global_report(graph_of({{1, 2}, {2, 3}, {3, 1}}));
    CHECK(r.n_s == 1);
    CHECK(r.p_s == doctest::Approx(1.0));
    CHECK(r.l == doctest::Approx(1.5));
    CHECK(r.d_s == 2);
    CHECK(r.d_w == 1);
    CHECK(r.c == doctest::Approx(1.0));
}

TEST_CASE("global_report k and phi replay the published grain row") {
    // build any graph with n=5, e=8 and verify the identities the table uses
    auto g = graph_of({{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}, {1, 3}, {2, 4}, {3, 5}});
    auto r = global_report(g);
    CHECK(r.k == doctest::Approx(static_cast<double>(r.e) / r.n));
    CHECK(r.phi == doctest::Approx(static_cast<double>(r.e) / (r.n * (r.n - 1.0))));
    CHECK(22966.0 / 1459 == doctest::Approx(15.74).epsilon(0.001));
    CHECK(22966.0 / (1459.0 * 1458.0) == doctest::Approx(0.0108).margin(0.0002));
}

TEST_CASE("graph export round-trips through the edge list") {
    auto t = table_of({record("F1", 7, 9), record("F2", 9, 7), record("F3", 7, 11)});
    auto g = build_graph(t);
    CHECK(g.node_count() == 3);
    // ids survive into ports
    CHECK(g.port(g.index_of(11)).id == 11);
    CHECK(g.index_of(8) == -1);
}
