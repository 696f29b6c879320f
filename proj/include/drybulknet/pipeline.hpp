#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "drybulknet/flows.hpp"
#include "drybulknet/metrics.hpp"
#include "drybulknet/nullmodel.hpp"

namespace drybulk {

// Fully resolved configuration of one CLI run; echoed into the output
// manifest so any run can be reproduced from its artifacts.
struct RunConfig {
    std::string command;
    std::string input;          // flow CSV (synth: spec JSON)
    std::string layer = "all";  // all | grains | coal | iron-ore | <label>
    std::optional<QuarterId> from;
    std::optional<QuarterId> to;
    std::uint64_t seed = 0;
    std::size_t replicates = 10;
    std::optional<std::uint64_t> attempts;  // nullopt = 10 * |E|
    int k = 2;
    std::string out_dir = "out";
    std::string format = "json";  // json | csv (csv adds tabular mirrors)
    RewireScope scope = RewireScope::full;
    std::optional<QuarterId> break_quarter;  // communities
    WeightKind weight = WeightKind::frequency;
};

// Maps CLI layer labels (all/grains/coal/iron-ore/free-form) to a filter.
LayerFilter layer_filter_from_label(const std::string& label);

// Each command runs the bound pipeline and writes its artifacts plus
// manifest.json under cfg.out_dir. Files are written whole-then-renamed so
// error paths never leave partial results. Errors surface as the
// exceptions from errors.hpp; the CLI maps them to exit codes.
void run_report(const RunConfig& cfg);
void run_smallworld(const RunConfig& cfg);
void run_temporal(const RunConfig& cfg);
void run_communities(const RunConfig& cfg);
void run_synth(const RunConfig& cfg);

// Shared helpers.
struct LoadedFlows {
    FlowTable parsed;
    FlowTable cleaned;
};
LoadedFlows load_and_clean(const RunConfig& cfg);
void atomic_write(const std::string& path, const std::string& contents);

}  // namespace drybulk
