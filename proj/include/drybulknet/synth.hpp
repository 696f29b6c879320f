#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "drybulknet/flows.hpp"

namespace drybulk {

// Planted structures the fixture generator can emit. Every generator is
// deterministic in (spec, seed) down to the output bytes.
enum class SynthKind {
    two_clique_bridge,  // two cliques joined by bridge edges
    seasonal,           // edge sets alternating with a fixed period
    regime_change,      // disjoint edge regimes before/after a break quarter
    community_split,    // one community loses its internal glue post-break
    power_law,          // exact out-degree histogram f(k) = C k^-gamma
};

struct SynthLayer {
    std::string commodity = "Coal";
    SynthKind kind = SynthKind::two_clique_bridge;
    QuarterId from{2019, 1};
    QuarterId to{2019, 4};

    // two_clique_bridge / community_split
    std::vector<int> group_sizes = {3, 3};
    int bridges = 1;

    // seasonal
    int period = 4;
    int edges_per_quarter = 12;

    // regime_change / community_split
    std::optional<QuarterId> break_at;

    // power_law: f(k) = c * k^-gamma must be integral at every listed degree
    double gamma = 1.0;
    double c = 64;
    std::vector<int> degrees = {1, 2, 4, 8};

    int flows_per_edge = 1;
};

struct SynthSpec {
    std::uint64_t seed = 0;
    std::vector<SynthLayer> layers;

    static SynthSpec from_json_text(const std::string& text);
    std::string to_json_text() const;
};

struct SynthOutput {
    std::string csv;          // Supplement-style flow rows, header included
    std::string ground_truth; // planted facts as JSON text
    std::size_t n_rows = 0;
};

// Throws DataError("infeasible spec: ...") when a layer cannot be realized.
SynthOutput generate_fixture(const SynthSpec& spec);

}  // namespace drybulk
