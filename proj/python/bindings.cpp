#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include <json.hpp>

#include "drybulknet/community.hpp"
#include "drybulknet/errors.hpp"
#include "drybulknet/jsonio.hpp"
#include "drybulknet/synth.hpp"
#include "drybulknet/temporal.hpp"

namespace py = pybind11;
using namespace drybulk;
using nlohmann::json;

namespace {

py::object to_py(const json& j) {
    switch (j.type()) {
        case json::value_t::null: return py::none();
        case json::value_t::boolean: return py::bool_(j.get<bool>());
        case json::value_t::number_integer: return py::int_(j.get<long long>());
        case json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
        case json::value_t::number_float: return py::float_(j.get<double>());
        case json::value_t::string: return py::str(j.get<std::string>());
        case json::value_t::array: {
            py::list out;
            for (const auto& item : j) out.append(to_py(item));
            return out;
        }
        case json::value_t::object: {
            py::dict out;
            for (auto it = j.begin(); it != j.end(); ++it)
                out[py::str(it.key())] = to_py(it.value());
            return out;
        }
        default: return py::none();
    }
}

Direction direction_of(const std::string& name) {
    if (name == "in") return Direction::in;
    if (name == "out") return Direction::out;
    throw UsageError("direction wants 'in' or 'out'");
}

WeightKind weight_of(const std::string& name) {
    if (name == "frequency") return WeightKind::frequency;
    if (name == "dwt") return WeightKind::dwt;
    if (name == "volume") return WeightKind::volume;
    throw UsageError("weight wants 'frequency', 'dwt' or 'volume'");
}

DegreeKind degree_kind_of(const std::string& name) {
    if (name == "in") return DegreeKind::in;
    if (name == "out") return DegreeKind::out;
    if (name == "total") return DegreeKind::total;
    throw UsageError("degree kind wants 'in', 'out' or 'total'");
}

LayerFilter layer_of(const py::object& layer) {
    if (layer.is_none()) return LayerFilter::all();
    return LayerFilter::only(layer.cast<std::string>());
}

QuarterWindow window_of(const py::object& from, const py::object& to) {
    QuarterWindow w;
    if (!from.is_none()) {
        auto q = QuarterId::parse(from.cast<std::string>());
        if (!q) throw UsageError("bad quarter: " + from.cast<std::string>());
        w.from = *q;
    }
    if (!to.is_none()) {
        auto q = QuarterId::parse(to.cast<std::string>());
        if (!q) throw UsageError("bad quarter: " + to.cast<std::string>());
        w.to = *q;
    }
    return w;
}

py::dict centrality_by_port(const TradeGraph& g, const CentralityVector& vec) {
    py::dict out;
    for (std::size_t v = 0; v < g.node_count(); ++v)
        out[py::int_(g.port(static_cast<int>(v)).id)] = vec.values[v];
    return out;
}

Partition partition_from_dict(const TradeGraph& g, const py::dict& assignment) {
    Partition p;
    p.community.assign(g.node_count(), -1);
    for (auto item : assignment) {
        long long port_id = item.first.cast<long long>();
        int v = g.index_of(port_id);
        if (v < 0) throw UsageError("assignment names a port not in the graph: " +
                                    std::to_string(port_id));
        p.community[static_cast<std::size_t>(v)] = item.second.cast<int>();
    }
    int max_c = -1;
    for (int c : p.community) {
        if (c < 0) throw UsageError("assignment must cover every port in the graph");
        max_c = std::max(max_c, c);
    }
    p.n_communities = max_c + 1;
    return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Dry-bulk trade-flow network analytics (C++ core)";

    py::register_exception<UsageError>(m, "UsageError");
    py::register_exception<DataError>(m, "DataError");
    py::register_exception<ComputeError>(m, "ComputeError");

    py::class_<FlowTable>(m, "FlowTable")
        .def("__len__", [](const FlowTable& t) { return t.records.size(); })
        .def_property_readonly("provenance",
                               [](const FlowTable& t) {
                                   json j{{"source", t.provenance.source},
                                          {"raw", t.provenance.raw},
                                          {"kept", t.provenance.kept},
                                          {"dropped", t.provenance.dropped}};
                                   return to_py(j);
                               })
        .def("commodities", [](const FlowTable& t) {
            py::set out;
            for (const auto& rec : t.records) out.add(py::str(rec.commodity_group));
            return out;
        });

    py::class_<TradeGraph>(m, "TradeGraph")
        .def_property_readonly("node_count", &TradeGraph::node_count)
        .def_property_readonly("edge_count", &TradeGraph::edge_count)
        .def("ports", [](const TradeGraph& g) { return to_py(graph_to_json(g)["nodes"]); })
        .def("edges", [](const TradeGraph& g) { return to_py(graph_to_json(g)["edges"]); });

    m.def("parse_flows", [](const std::string& csv_text) {
        std::istringstream in(csv_text);
        return parse_flows(in, ColumnMapping{}, "<python>");
    }, py::arg("csv_text"), "Parse trade-flow CSV text into a FlowTable");

    m.def("clean_flows", [](const FlowTable& t) { return clean_flows(t); }, py::arg("table"));

    m.def("slice", [](const FlowTable& t, const py::object& layer, const py::object& from,
                      const py::object& to) {
        return slice(t, layer_of(layer), window_of(from, to));
    }, py::arg("table"), py::arg("layer") = py::none(), py::arg("from_quarter") = py::none(),
       py::arg("to_quarter") = py::none());

    m.def("assign_quarter", [](const std::string& ts) {
        auto parsed = parse_timestamp(ts);
        if (!parsed) throw UsageError("bad timestamp: " + ts);
        return assign_quarter(*parsed).str();
    }, py::arg("timestamp"));

    m.def("duration_stats",
          [](const FlowTable& t) { return to_py(to_json(duration_stats(t))); },
          py::arg("table"));

    m.def("yoy_volume_change", [](const FlowTable& t, const std::string& country,
                                  const py::object& layer) {
        return to_py(to_json(yoy_volume_change(t, country, layer_of(layer))));
    }, py::arg("table"), py::arg("load_country"), py::arg("layer") = py::none());

    m.def("build_graph", &build_graph, py::arg("table"));
    m.def("gscc", &gscc, py::arg("graph"));
    m.def("transitivity", py::overload_cast<const TradeGraph&>(&transitivity), py::arg("graph"));
    m.def("assortativity", &assortativity, py::arg("graph"));
    m.def("avg_path_length", &avg_path_length, py::arg("graph"));
    m.def("diameter", [](const TradeGraph& g, const std::string& mode) {
        if (mode == "undirected") return diameter(g, DiameterMode::undirected);
        if (mode == "directed") return diameter(g, DiameterMode::directed);
        throw UsageError("mode wants 'undirected' or 'directed'");
    }, py::arg("graph"), py::arg("mode") = "undirected");

    m.def("global_report",
          [](const TradeGraph& g) { return to_py(to_json(global_report(g))); },
          py::arg("graph"));

    m.def("degree_centrality", [](const TradeGraph& g, const std::string& direction,
                                  bool normalized) {
        return centrality_by_port(g, degree_centrality(g, direction_of(direction), normalized));
    }, py::arg("graph"), py::arg("direction"), py::arg("normalized") = false);

    m.def("strength_centrality", [](const TradeGraph& g, const std::string& direction,
                                    const std::string& weight) {
        return centrality_by_port(g, strength_centrality(g, direction_of(direction), weight_of(weight)));
    }, py::arg("graph"), py::arg("direction"), py::arg("weight") = "frequency");

    m.def("betweenness", [](const TradeGraph& g, bool normalized) {
        return centrality_by_port(g, betweenness(g, normalized));
    }, py::arg("graph"), py::arg("normalized") = false);

    m.def("centrality_correlations",
          [](const TradeGraph& g) { return to_py(to_json(centrality_correlations(g))); },
          py::arg("graph"));

    m.def("fit_power_law", [](const TradeGraph& g, const std::string& which) {
        return to_py(to_json(fit_power_law(g, degree_kind_of(which))));
    }, py::arg("graph"), py::arg("which") = "total");

    m.def("fit_power_law_histogram",
          [](const std::vector<std::pair<double, double>>& histogram) {
              return to_py(to_json(fit_power_law_histogram(histogram)));
          },
          py::arg("histogram"));

    m.def("rewire", [](const TradeGraph& g, std::uint64_t attempts, std::uint64_t seed) {
        RewireConfig cfg;
        cfg.n_swap_attempts = attempts;
        cfg.seed = seed;
        return rewire(g, cfg);
    }, py::arg("graph"), py::arg("attempts"), py::arg("seed") = 0);

    m.def("ring_lattice", [](int n, int k) { return ring_lattice(n, k).graph; },
          py::arg("n"), py::arg("k"));

    m.def("sigma", &sigma, py::arg("L"), py::arg("L_rand"), py::arg("C"), py::arg("C_rand"));
    m.def("omega", &omega, py::arg("L"), py::arg("L_rand"), py::arg("C"), py::arg("C_latt"));

    m.def("small_world_test", [](const TradeGraph& g, std::size_t replicates, std::uint64_t seed,
                                 const py::object& attempts) {
        SmallWorldConfig cfg;
        cfg.n_replicates = replicates;
        cfg.seed = seed;
        if (!attempts.is_none()) cfg.swap_attempts = attempts.cast<std::uint64_t>();
        return to_py(to_json(small_world_test(g, cfg)));
    }, py::arg("graph"), py::arg("replicates") = 10, py::arg("seed") = 0,
       py::arg("attempts") = py::none());

    m.def("network_distance", &network_distance, py::arg("graph_a"), py::arg("graph_b"));

    m.def("temporal_breaks", [](const FlowTable& t, const py::object& layer, int k) {
        auto snapshots = quarterly_graphs(t, layer_of(layer));
        auto matrix = distance_matrix(snapshots);
        auto dend = ward_cluster(matrix);
        auto labels = cut_clusters(dend, k);
        auto breaks = detect_breaks(dend.leaves, labels);
        json j{{"distance_matrix", to_json(matrix)},
               {"dendrogram", to_json(dend)},
               {"breaks", to_json(breaks)}};
        return to_py(j);
    }, py::arg("table"), py::arg("layer") = py::none(), py::arg("k") = 2,
       "Quarterly distance matrix, Ward dendrogram and structural breaks");

    m.def("louvain", [](const TradeGraph& g, const std::string& weight, std::uint64_t seed) {
        return to_py(partition_to_json(g, louvain(g, weight_of(weight), seed)));
    }, py::arg("graph"), py::arg("weight") = "frequency", py::arg("seed") = 0);

    m.def("modularity", [](const TradeGraph& g, const py::dict& assignment,
                           const std::string& weight) {
        return modularity(g, partition_from_dict(g, assignment), weight_of(weight));
    }, py::arg("graph"), py::arg("assignment"), py::arg("weight") = "frequency");

    m.def("transitions", [](const TradeGraph& g_before, const TradeGraph& g_after,
                            const py::dict& before, const py::dict& after) {
        return to_py(transitions_to_json(transitions(g_before, g_after,
                                                     partition_from_dict(g_before, before),
                                                     partition_from_dict(g_after, after))));
    }, py::arg("graph_before"), py::arg("graph_after"), py::arg("assignment_before"),
       py::arg("assignment_after"));

    m.def("generate_fixture", [](const std::string& spec_json) {
        SynthOutput out = generate_fixture(SynthSpec::from_json_text(spec_json));
        return py::make_tuple(out.csv, out.ground_truth);
    }, py::arg("spec_json"), "Deterministic fixture CSV plus ground-truth JSON");
}
