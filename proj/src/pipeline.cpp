#include "drybulknet/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "drybulknet/community.hpp"
#include "drybulknet/errors.hpp"
#include "drybulknet/jsonio.hpp"
#include "drybulknet/synth.hpp"
#include "drybulknet/temporal.hpp"

namespace drybulk {

namespace fs = std::filesystem;
using nlohmann::json;

LayerFilter layer_filter_from_label(const std::string& label) {
    if (label == "all" || label.empty()) return LayerFilter::all();
    if (label == "grains") return LayerFilter::only("Grains");
    if (label == "coal") return LayerFilter::only("Coal");
    if (label == "iron-ore") return LayerFilter::only("Iron Ore");
    return LayerFilter::only(label);
}

void atomic_write(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write " + tmp);
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw DataError("write failed: " + tmp);
    }
    fs::rename(tmp, path);
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open input: " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
    return (fs::path(cfg.out_dir) / name).string();
}

const char* weight_name(WeightKind w) {
    switch (w) {
        case WeightKind::frequency: return "frequency";
        case WeightKind::dwt: return "dwt";
        case WeightKind::volume: return "volume";
    }
    return "?";
}

// Artifacts that fail a precondition (tiny graphs, degenerate fits) are
// skipped, not fatal; the manifest records why.
class Manifest {
public:
    explicit Manifest(const RunConfig& cfg) {
        j_["command"] = cfg.command;
        j_["input"] = cfg.input;
        j_["layer"] = cfg.layer;
        j_["from"] = cfg.from ? json(cfg.from->str()) : json(nullptr);
        j_["to"] = cfg.to ? json(cfg.to->str()) : json(nullptr);
        j_["seed"] = cfg.seed;
        j_["replicates"] = cfg.replicates;
        j_["attempts"] = cfg.attempts ? json(*cfg.attempts) : json(nullptr);
        j_["k"] = cfg.k;
        j_["out_dir"] = cfg.out_dir;
        j_["format"] = cfg.format;
        j_["scope"] = cfg.scope == RewireScope::full ? "full" : "gscc";
        j_["break_quarter"] = cfg.break_quarter ? json(cfg.break_quarter->str()) : json(nullptr);
        j_["weight"] = weight_name(cfg.weight);
        j_["skipped"] = json::object();
    }

    void skipped(const std::string& artifact, const std::string& why) {
        j_["skipped"][artifact] = why;
    }

    void write(const RunConfig& cfg) {
        atomic_write(out_path(cfg, "manifest.json"), j_.dump(2) + "\n");
    }

private:
    json j_;
};

void ensure_out_dir(const RunConfig& cfg) {
    fs::create_directories(cfg.out_dir);
}

}  // namespace

LoadedFlows load_and_clean(const RunConfig& cfg) {
    std::string bytes = read_file(cfg.input);
    std::istringstream in(bytes);
    LoadedFlows loaded;
    loaded.parsed = parse_flows(in, ColumnMapping{}, cfg.input);
    loaded.cleaned = clean_flows(loaded.parsed);
    return loaded;
}

void run_report(const RunConfig& cfg) {
    ensure_out_dir(cfg);
    Manifest manifest(cfg);

    LoadedFlows loaded = load_and_clean(cfg);
    FlowTable sliced =
        slice(loaded.cleaned, layer_filter_from_label(cfg.layer), QuarterWindow{cfg.from, cfg.to});
    if (sliced.records.empty()) throw DataError("empty selection");

    TradeGraph g = build_graph(sliced);
    GlobalCentralityReport report = global_report(g);

    atomic_write(out_path(cfg, "report.json"), to_json(report).dump(2) + "\n");
    if (cfg.format == "csv")
        atomic_write(out_path(cfg, "report.csv"), report_csv(report));
    atomic_write(out_path(cfg, "graph.json"), graph_to_json(g).dump(2) + "\n");
    atomic_write(out_path(cfg, "edges.csv"), graph_to_edge_csv(g));
    atomic_write(out_path(cfg, "rejected_rows.csv"),
                 rejected_rows_csv(loaded.parsed.provenance, loaded.cleaned.provenance));

    try {
        atomic_write(out_path(cfg, "durations.json"),
                     to_json(duration_stats(sliced)).dump(2) + "\n");
    } catch (const std::runtime_error& e) {
        manifest.skipped("durations.json", e.what());
    }

    std::vector<CentralityVector> vectors;
    vectors.push_back(degree_centrality(g, Direction::in, false));
    vectors.push_back(strength_centrality(g, Direction::in, WeightKind::frequency));
    vectors.push_back(strength_centrality(g, Direction::in, WeightKind::dwt));
    vectors.push_back(strength_centrality(g, Direction::in, WeightKind::volume));
    vectors.push_back(degree_centrality(g, Direction::out, false));
    vectors.push_back(strength_centrality(g, Direction::out, WeightKind::frequency));
    vectors.push_back(strength_centrality(g, Direction::out, WeightKind::dwt));
    vectors.push_back(strength_centrality(g, Direction::out, WeightKind::volume));
    vectors.push_back(betweenness(g, false));
    atomic_write(out_path(cfg, "centralities.json"),
                 centralities_to_json(g, vectors).dump(2) + "\n");
    if (cfg.format == "csv") {
        for (const auto& vec : vectors) {
            atomic_write(out_path(cfg, std::string("centrality_") + measure_name(vec.measure) + ".csv"),
                         centrality_csv(g, vec));
        }
    }

    try {
        CorrelationMatrix corr = centrality_correlations(g);
        atomic_write(out_path(cfg, "correlations.csv"), correlations_csv(corr));
        atomic_write(out_path(cfg, "correlations.json"), to_json(corr).dump(2) + "\n");
    } catch (const std::runtime_error& e) {
        manifest.skipped("correlations", e.what());
    }

    json powerlaw = json::object();
    bool any_fit = false;
    for (auto [kind, name] : {std::pair{DegreeKind::total, "total"},
                              std::pair{DegreeKind::in, "in"},
                              std::pair{DegreeKind::out, "out"}}) {
        try {
            powerlaw[name] = to_json(fit_power_law(g, kind));
            any_fit = true;
        } catch (const std::runtime_error& e) {
            manifest.skipped(std::string("powerlaw.") + name, e.what());
        }
    }
    if (any_fit)
        atomic_write(out_path(cfg, "powerlaw.json"), powerlaw.dump(2) + "\n");

    try {
        json countries = json::object();
        auto rank_to_json = [&](const CentralityVector& vec) {
            json arr = json::array();
            for (const auto& score : rank_countries(g, vec, 8))
                arr.push_back({{"country", score.country}, {"score", score.score}});
            return arr;
        };
        countries["out_degree"] = rank_to_json(degree_centrality(g, Direction::out, true));
        countries["in_degree"] = rank_to_json(degree_centrality(g, Direction::in, true));
        countries["betweenness"] = rank_to_json(betweenness(g, true));
        atomic_write(out_path(cfg, "countries.json"), countries.dump(2) + "\n");
    } catch (const std::runtime_error& e) {
        manifest.skipped("countries.json", e.what());
    }

    manifest.write(cfg);
}

void run_smallworld(const RunConfig& cfg) {
    ensure_out_dir(cfg);
    Manifest manifest(cfg);

    LoadedFlows loaded = load_and_clean(cfg);
    FlowTable sliced =
        slice(loaded.cleaned, layer_filter_from_label(cfg.layer), QuarterWindow{cfg.from, cfg.to});
    if (sliced.records.empty()) throw DataError("empty selection");

    TradeGraph g = build_graph(sliced);
    if (cfg.scope == RewireScope::gscc) g = gscc(g);

    SmallWorldConfig sw;
    sw.n_replicates = cfg.replicates;
    sw.seed = cfg.seed;
    sw.swap_attempts = cfg.attempts;
    SmallWorldReport report = small_world_test(g, sw);

    atomic_write(out_path(cfg, "smallworld.json"), to_json(report).dump(2) + "\n");
    manifest.write(cfg);
}

void run_temporal(const RunConfig& cfg) {
    ensure_out_dir(cfg);
    Manifest manifest(cfg);

    LoadedFlows loaded = load_and_clean(cfg);
    FlowTable sliced =
        slice(loaded.cleaned, layer_filter_from_label(cfg.layer), QuarterWindow{cfg.from, cfg.to});
    if (sliced.records.empty()) throw DataError("empty selection");

    auto snapshots = quarterly_graphs(sliced);
    QuarterlyDistanceMatrix matrix = distance_matrix(snapshots);
    Dendrogram dend = ward_cluster(matrix);
    std::vector<int> labels = cut_clusters(dend, cfg.k);
    BreakReport breaks = detect_breaks(dend.leaves, labels);

    atomic_write(out_path(cfg, "distance_matrix.json"), to_json(matrix).dump(2) + "\n");
    atomic_write(out_path(cfg, "distance_matrix.csv"), distance_matrix_csv(matrix));
    atomic_write(out_path(cfg, "dendrogram.json"), to_json(dend).dump(2) + "\n");
    atomic_write(out_path(cfg, "breaks.json"), to_json(breaks).dump(2) + "\n");
    manifest.write(cfg);
}

void run_communities(const RunConfig& cfg) {
    if (!cfg.break_quarter) throw UsageError("communities needs --break <quarter>");
    ensure_out_dir(cfg);
    Manifest manifest(cfg);

    LoadedFlows loaded = load_and_clean(cfg);
    FlowTable sliced =
        slice(loaded.cleaned, layer_filter_from_label(cfg.layer), QuarterWindow{cfg.from, cfg.to});
    if (sliced.records.empty()) throw DataError("empty selection");

    // break quarter belongs to the "after" aggregate
    FlowTable before = slice(sliced, LayerFilter::all(),
                             QuarterWindow{std::nullopt, cfg.break_quarter->prev()});
    FlowTable after =
        slice(sliced, LayerFilter::all(), QuarterWindow{*cfg.break_quarter, std::nullopt});
    if (before.records.empty()) throw DataError("empty selection before the break quarter");
    if (after.records.empty()) throw DataError("empty selection from the break quarter on");

    TradeGraph g_before = build_graph(before);
    TradeGraph g_after = build_graph(after);
    Partition p_before = louvain(g_before, cfg.weight, cfg.seed);
    Partition p_after = louvain(g_after, cfg.weight, cfg.seed);
    TransitionTable table = transitions(g_before, g_after, p_before, p_after);

    atomic_write(out_path(cfg, "partition_before.json"),
                 partition_to_json(g_before, p_before).dump(2) + "\n");
    atomic_write(out_path(cfg, "partition_after.json"),
                 partition_to_json(g_after, p_after).dump(2) + "\n");
    atomic_write(out_path(cfg, "transitions.json"), transitions_to_json(table).dump(2) + "\n");
    manifest.write(cfg);
}

void run_synth(const RunConfig& cfg) {
    ensure_out_dir(cfg);
    Manifest manifest(cfg);

    SynthSpec spec = SynthSpec::from_json_text(read_file(cfg.input));
    if (cfg.seed != 0) spec.seed = cfg.seed;
    SynthOutput output = generate_fixture(spec);

    atomic_write(out_path(cfg, "fixture.csv"), output.csv);
    atomic_write(out_path(cfg, "ground_truth.json"), output.ground_truth);
    manifest.write(cfg);
}

}  // namespace drybulk
