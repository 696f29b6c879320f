#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "drybulknet/errors.hpp"
#include "drybulknet/pipeline.hpp"

namespace {

using drybulk::QuarterId;
using drybulk::RunConfig;

struct RawArgs {
    std::string from, to, break_quarter;
    std::string scope = "full";
    std::string weight = "frequency";
};

void add_common(CLI::App* cmd, RunConfig& cfg, RawArgs& raw) {
    cmd->add_option("--input", cfg.input, "input CSV of trade-flow records")
        ->required()
        ->envname("DRYBULKNET_INPUT");
    cmd->add_option("--layer", cfg.layer, "all | grains | coal | iron-ore | <label>")
        ->envname("DRYBULKNET_LAYER");
    cmd->add_option("--from", raw.from, "first quarter, e.g. 2015Q1")->envname("DRYBULKNET_FROM");
    cmd->add_option("--to", raw.to, "last quarter, e.g. 2023Q4")->envname("DRYBULKNET_TO");
    cmd->add_option("--out", cfg.out_dir, "output directory")->envname("DRYBULKNET_OUT");
    cmd->add_option("--format", cfg.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->envname("DRYBULKNET_FORMAT");
    cmd->add_option("--seed", cfg.seed, "random seed")->envname("DRYBULKNET_SEED");
}

QuarterId parse_quarter_arg(const std::string& text, const char* flag) {
    auto q = QuarterId::parse(text);
    if (!q) throw drybulk::UsageError(std::string(flag) + " wants a quarter like 2015Q1, got '" + text + "'");
    return *q;
}

void finalize(RunConfig& cfg, const RawArgs& raw) {
    if (!raw.from.empty()) cfg.from = parse_quarter_arg(raw.from, "--from");
    if (!raw.to.empty()) cfg.to = parse_quarter_arg(raw.to, "--to");
    if (!raw.break_quarter.empty())
        cfg.break_quarter = parse_quarter_arg(raw.break_quarter, "--break");
    if (raw.scope == "gscc") cfg.scope = drybulk::RewireScope::gscc;
    else if (raw.scope != "full") throw drybulk::UsageError("--scope wants full or gscc");
    if (raw.weight == "frequency") cfg.weight = drybulk::WeightKind::frequency;
    else if (raw.weight == "dwt") cfg.weight = drybulk::WeightKind::dwt;
    else if (raw.weight == "volume") cfg.weight = drybulk::WeightKind::volume;
    else throw drybulk::UsageError("--weight wants frequency, dwt or volume");
}

int fail(int code, const std::string& kind, const std::string& message) {
    nlohmann::json err{{"error", {{"code", code}, {"kind", kind}, {"message", message}}}};
    std::cerr << err.dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"drybulknet: dry-bulk trade-flow network analytics"};
    app.require_subcommand(1);

    RunConfig cfg;
    RawArgs raw;

    auto* report = app.add_subcommand("report", "global network centrality report");
    add_common(report, cfg, raw);

    auto* smallworld = app.add_subcommand("smallworld", "small-world test against null models");
    add_common(smallworld, cfg, raw);
    smallworld->add_option("--replicates", cfg.replicates, "rewired replicates")
        ->envname("DRYBULKNET_REPLICATES");
    std::uint64_t attempts_arg = 0;
    auto* attempts_opt =
        smallworld->add_option("--attempts", attempts_arg, "swap attempts (default 10|E|)")
            ->envname("DRYBULKNET_ATTEMPTS");
    smallworld->add_option("--scope", raw.scope, "full | gscc")->envname("DRYBULKNET_SCOPE");

    auto* temporal = app.add_subcommand("temporal", "distance matrix, dendrogram, breaks");
    add_common(temporal, cfg, raw);
    temporal->add_option("--k", cfg.k, "cluster count for the cut")->envname("DRYBULKNET_K");

    auto* communities = app.add_subcommand("communities", "before/after community transitions");
    add_common(communities, cfg, raw);
    communities->add_option("--break", raw.break_quarter, "break quarter, e.g. 2020Q1")
        ->required()
        ->envname("DRYBULKNET_BREAK");
    communities->add_option("--weight", raw.weight, "frequency | dwt | volume")
        ->envname("DRYBULKNET_WEIGHT");

    auto* synth = app.add_subcommand("synth", "generate a fixture CSV from a spec");
    synth->add_option("--input", cfg.input, "synth spec JSON")->required()
        ->envname("DRYBULKNET_INPUT");
    synth->add_option("--out", cfg.out_dir, "output directory")->envname("DRYBULKNET_OUT");
    synth->add_option("--seed", cfg.seed, "seed override")->envname("DRYBULKNET_SEED");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return fail(drybulk::UsageError::exit_code, "usage", e.what());
    }

    try {
        finalize(cfg, raw);
        if (attempts_opt->count() > 0) cfg.attempts = attempts_arg;

        if (report->parsed()) {
            cfg.command = "report";
            drybulk::run_report(cfg);
        } else if (smallworld->parsed()) {
            cfg.command = "smallworld";
            drybulk::run_smallworld(cfg);
        } else if (temporal->parsed()) {
            cfg.command = "temporal";
            drybulk::run_temporal(cfg);
        } else if (communities->parsed()) {
            cfg.command = "communities";
            drybulk::run_communities(cfg);
        } else if (synth->parsed()) {
            cfg.command = "synth";
            drybulk::run_synth(cfg);
        }
    } catch (const drybulk::UsageError& e) {
        return fail(drybulk::UsageError::exit_code, "usage", e.what());
    } catch (const drybulk::DataError& e) {
        return fail(drybulk::DataError::exit_code, "data", e.what());
    } catch (const drybulk::ComputeError& e) {
        return fail(drybulk::ComputeError::exit_code, "compute", e.what());
    } catch (const std::exception& e) {
        return fail(drybulk::ComputeError::exit_code, "internal", e.what());
    }
    return 0;
}
