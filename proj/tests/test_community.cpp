#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "drybulknet/community.hpp"
#include "drybulknet/errors.hpp"
#include "helpers.hpp"

using namespace drybulk;
using testutil::graph_of;
using testutil::graph_with_nodes;

namespace {

// Exhaustive modularity maximum over all partitions (n <= 6 fixtures).
double best_modularity_exhaustive(const TradeGraph& g, WeightKind kind) {
    double best = -1.0;
    for (const auto& partition : testutil::all_partitions(static_cast<int>(g.node_count())))
        best = std::max(best, testutil::modularity_by_double_sum(g, partition, kind));
    return best;
}

std::set<std::set<long long>> community_id_sets(const TradeGraph& g, const Partition& p) {
    std::set<std::set<long long>> out;
    for (const auto& group : p.groups()) {
        std::set<long long> ids;
        for (int v : group) ids.insert(g.port(v).id);
        out.insert(ids);
    }
    return out;
}

TradeGraph two_cliques_bridged() {
    return graph_of({{0, 1}, {0, 2}, {1, 2},    // clique A
                     {3, 4}, {3, 5}, {4, 5},    // clique B
                     {2, 3}});                  // bridge
}

TradeGraph two_cliques_disjoint() {
    return graph_of({{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
}

}  // namespace

TEST_CASE("louvain separates two bridged cliques") {
    auto g = two_cliques_bridged();
    auto p = louvain(g, WeightKind::frequency, 1);
    CHECK(p.n_communities == 2);
    std::set<std::set<long long>> expected{{0, 1, 2}, {3, 4, 5}};
    CHECK(community_id_sets(g, p) == expected);
    // greedy result matches the exhaustive maximum here
    CHECK(p.modularity ==
          doctest::Approx(best_modularity_exhaustive(g, WeightKind::frequency)).epsilon(1e-9));
}

TEST_CASE("louvain merges a single edge into one community") {
    auto g = graph_of({{1, 2}});
    auto p = louvain(g, WeightKind::frequency, 3);
    CHECK(p.n_communities == 1);
    CHECK(p.modularity == doctest::Approx(0.0));
}

TEST_CASE("louvain leaves isolated nodes as singletons") {
    auto g = graph_with_nodes({1, 2, 3, 4}, {});
    auto p = louvain(g, WeightKind::frequency, 5);
    CHECK(p.n_communities == 4);
    CHECK(p.modularity == 0.0);
}

TEST_CASE("louvain matches the exhaustive optimum on small fixtures") {
    std::vector<TradeGraph> fixtures;
    fixtures.push_back(two_cliques_bridged());
    fixtures.push_back(two_cliques_disjoint());
    fixtures.push_back(graph_of({{1, 2}}));
    fixtures.push_back(graph_of({{0, 1}, {1, 2}, {2, 3}, {3, 0}}));  // 4-cycle
    fixtures.push_back(graph_of({{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}}));
    for (const auto& g : fixtures) {
        auto p = louvain(g, WeightKind::frequency, 17);
        double best = best_modularity_exhaustive(g, WeightKind::frequency);
        CHECK(p.modularity == doctest::Approx(best).epsilon(1e-9));
    }
}

TEST_CASE("louvain is deterministic per (graph, weight, seed)") {
    std::mt19937_64 rng(8);
    auto g = testutil::random_digraph(rng, 20, 50);
    auto a = louvain(g, WeightKind::frequency, 42);
    auto b = louvain(g, WeightKind::frequency, 42);
    CHECK(a.community == b.community);
    CHECK(a.modularity == b.modularity);
}

TEST_CASE("louvain never scores below the all-singletons partition") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = testutil::random_digraph(rng, 12, 24);
        auto p = louvain(g, WeightKind::frequency, trial);
        std::vector<int> singletons(g.node_count());
        for (std::size_t v = 0; v < g.node_count(); ++v) singletons[v] = static_cast<int>(v);
        double q0 = testutil::modularity_by_double_sum(g, singletons, WeightKind::frequency);
        CHECK(p.modularity >= q0 - 1e-12);
    }
}

TEST_CASE("modularity: own-clique partition of two disjoint cliques scores 0.5") {
    auto g = two_cliques_disjoint();
    Partition p;
    p.community = {0, 0, 0, 1, 1, 1};
    p.n_communities = 2;
    CHECK(modularity(g, p, WeightKind::frequency) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("modularity: everything in one community scores 0") {
    auto g = two_cliques_bridged();
    Partition p;
    p.community.assign(6, 0);
    p.n_communities = 1;
    CHECK(modularity(g, p, WeightKind::frequency) == doctest::Approx(0.0));
}

TEST_CASE("modularity: all singletons on an edged graph is negative") {
    auto g = two_cliques_bridged();
    Partition p;
    p.community = {0, 1, 2, 3, 4, 5};
    p.n_communities = 6;
    CHECK(modularity(g, p, WeightKind::frequency) < 0.0);
}

TEST_CASE("modularity agrees with the raw double-sum oracle") {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 15; ++trial) {
        auto g = testutil::random_digraph(rng, 8, 18);
        auto p = louvain(g, WeightKind::frequency, trial);
        double direct = testutil::modularity_by_double_sum(g, p.community, WeightKind::frequency);
        CHECK(modularity(g, p, WeightKind::frequency) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("modularity requires positive total weight") {
    auto g = graph_with_nodes({1, 2}, {});
    Partition p;
    p.community = {0, 1};
    p.n_communities = 2;
    CHECK_THROWS_AS(modularity(g, p, WeightKind::frequency), ComputeError);
}

TEST_CASE("weight scaling leaves assignment and modularity unchanged") {
    using testutil::record;
    using testutil::table_of;
    std::vector<TradeFlowRecord> records;
    int id = 0;
    for (auto [u, v] : std::vector<std::pair<long long, long long>>{
             {0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {2, 3}})
        records.push_back(record("F" + std::to_string(id++), u, v, "Coal",
                                 "2020-01-01T00:00:00Z", 100, 200));
    auto g1 = build_graph(table_of(records));
    for (auto& r : records) {
        r.volume *= 9.0;
        r.dwt *= 9.0;
    }
    auto g2 = build_graph(table_of(records));

    auto p1 = louvain(g1, WeightKind::volume, 4);
    auto p2 = louvain(g2, WeightKind::volume, 4);
    CHECK(p1.community == p2.community);
    CHECK(p1.modularity == doctest::Approx(p2.modularity).epsilon(1e-12));
}

TEST_CASE("dominant_region picks the modal region and flags ties") {
    // regions cycle R0,R1,R2 by port id; ids 0,3,6 share R0
    auto g = graph_of({{0, 3}, {3, 6}, {6, 0}, {1, 2}});
    Partition p;
    p.community.assign(g.node_count(), 0);
    p.community[static_cast<std::size_t>(g.index_of(1))] = 1;
    p.community[static_cast<std::size_t>(g.index_of(2))] = 1;
    p.n_communities = 2;
    auto regions = dominant_region(g, p);
    REQUIRE(regions.size() == 2);
    CHECK(regions[0].region == "R0");
    CHECK(!regions[0].tie);
    // community {1, 2} has regions R1 and R2: tie, lexicographically first
    CHECK(regions[1].region == "R1");
    CHECK(regions[1].tie);
}

TEST_CASE("dominant_region of a singleton community is its port's region") {
    auto g = graph_of({{1, 2}});
    Partition p;
    p.community = {0, 1};
    p.n_communities = 2;
    auto regions = dominant_region(g, p);
    CHECK(regions[0].region == g.port(0).region);
    CHECK(regions[1].region == g.port(1).region);
}

TEST_CASE("transitions: identical graphs and partitions stay on the diagonal") {
    auto g = two_cliques_bridged();
    auto p = louvain(g, WeightKind::frequency, 2);
    auto table = transitions(g, g, p, p);
    CHECK(table.shared_ports == g.node_count());
    CHECK(table.entering_ports.empty());
    CHECK(table.exiting_ports.empty());
    for (const auto& link : table.links) {
        CHECK(link.before_community == link.after_community);
        CHECK(link.count == table.before[static_cast<std::size_t>(link.before_community)].size);
    }
}

TEST_CASE("transitions: one moved port creates one off-diagonal link") {
    auto g = two_cliques_disjoint();
    Partition before;
    before.community = {0, 0, 0, 1, 1, 1};
    before.n_communities = 2;
    Partition after = before;
    after.community[2] = 1;  // port 2 moves
    auto table = transitions(g, g, before, after);
    std::size_t off_diagonal = 0;
    for (const auto& link : table.links) {
        if (link.before_community != link.after_community) {
            ++off_diagonal;
            CHECK(link.count == 1);
        }
    }
    CHECK(off_diagonal == 1);
}

TEST_CASE("transitions conserve shared ports across rows and columns") {
    std::mt19937_64 rng(21);
    auto g_before = testutil::random_digraph(rng, 14, 30);
    auto g_after = testutil::random_digraph(rng, 14, 26);
    auto p_before = louvain(g_before, WeightKind::frequency, 1);
    auto p_after = louvain(g_after, WeightKind::frequency, 2);
    auto table = transitions(g_before, g_after, p_before, p_after);

    std::size_t link_total = 0;
    std::vector<std::size_t> row_sums(table.before.size(), 0);
    std::vector<std::size_t> col_sums(table.after.size(), 0);
    for (const auto& link : table.links) {
        link_total += link.count;
        row_sums[static_cast<std::size_t>(link.before_community)] += link.count;
        col_sums[static_cast<std::size_t>(link.after_community)] += link.count;
    }
    CHECK(link_total == table.shared_ports);
    for (std::size_t c = 0; c < table.before.size(); ++c)
        CHECK(row_sums[c] == table.before[c].shared_size);
    for (std::size_t c = 0; c < table.after.size(); ++c)
        CHECK(col_sums[c] == table.after[c].shared_size);
}

TEST_CASE("transitions report entries and exits separately") {
    auto g_before = graph_of({{1, 2}, {2, 1}});
    auto g_after = graph_of({{2, 3}, {3, 2}});
    auto p_before = louvain(g_before, WeightKind::frequency, 0);
    auto p_after = louvain(g_after, WeightKind::frequency, 0);
    auto table = transitions(g_before, g_after, p_before, p_after);
    CHECK(table.shared_ports == 1);
    CHECK(table.exiting_ports == std::vector<long long>{1});
    CHECK(table.entering_ports == std::vector<long long>{3});
}

TEST_CASE("transitions with no shared ports fail loudly") {
    auto g_before = graph_of({{1, 2}});
    auto g_after = graph_of({{3, 4}});
    auto p_before = louvain(g_before, WeightKind::frequency, 0);
    auto p_after = louvain(g_after, WeightKind::frequency, 0);
    CHECK_THROWS_AS(transitions(g_before, g_after, p_before, p_after), ComputeError);
}

TEST_CASE("a community whose internal edges vanish splits into successors") {
    // before: one 6-clique (ids 0..5) plus a separate pair {8,9}
    std::vector<std::pair<long long, long long>> before_edges{{8, 9}};
    for (long long i = 0; i < 6; ++i)
        for (long long j = i + 1; j < 6; ++j) before_edges.emplace_back(i, j);
    auto g_before = graph_of(before_edges);

    // after: the 0..2 / 3..5 halves lose every cross-half edge
    std::vector<std::pair<long long, long long>> after_edges{
        {0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {8, 9}};
    auto g_after = graph_of(after_edges);

    auto p_before = louvain(g_before, WeightKind::frequency, 3);
    auto p_after = louvain(g_after, WeightKind::frequency, 3);
    auto table = transitions(g_before, g_after, p_before, p_after);

    // the clique community fans out into >= 2 successor communities
    int clique_before = p_before.community[static_cast<std::size_t>(g_before.index_of(0))];
    std::set<int> successors;
    for (const auto& link : table.links)
        if (link.before_community == clique_before) successors.insert(link.after_community);
    CHECK(successors.size() >= 2);
}
