#pragma once

#include <string>

#include <json.hpp>

#include "drybulknet/community.hpp"
#include "drybulknet/flows.hpp"
#include "drybulknet/graph.hpp"
#include "drybulknet/metrics.hpp"
#include "drybulknet/nullmodel.hpp"
#include "drybulknet/temporal.hpp"

namespace drybulk {

// Shortest round-trip decimal text for a double ("" for NaN in CSV cells).
std::string fmt_double(double v);

nlohmann::json to_json(const GlobalCentralityReport& r);
std::string report_csv(const GlobalCentralityReport& r);

nlohmann::json graph_to_json(const TradeGraph& g);
// "src,dst,frequency,dwt_total,volume_total"
std::string graph_to_edge_csv(const TradeGraph& g);

// "(row, rule)" rejection report covering the parse and clean stages.
std::string rejected_rows_csv(const Provenance& parsed, const Provenance& cleaned);

nlohmann::json to_json(const DescriptiveStats& s);
nlohmann::json to_json(const YoYReport& r);

nlohmann::json to_json(const SmallWorldReport& r);

nlohmann::json to_json(const QuarterlyDistanceMatrix& m);
std::string distance_matrix_csv(const QuarterlyDistanceMatrix& m);
nlohmann::json to_json(const Dendrogram& d);
nlohmann::json to_json(const BreakReport& r);

nlohmann::json partition_to_json(const TradeGraph& g, const Partition& p);
// Sankey-ready: nodes [{side, community, size, dominant_region, tie_flag}],
// links [{source, target, count}] with indices into the node list.
nlohmann::json transitions_to_json(const TransitionTable& t);

nlohmann::json centralities_to_json(const TradeGraph& g,
                                    const std::vector<CentralityVector>& vectors);
// "port_id,value"
std::string centrality_csv(const TradeGraph& g, const CentralityVector& v);
nlohmann::json to_json(const CorrelationMatrix& m);
std::string correlations_csv(const CorrelationMatrix& m);
nlohmann::json to_json(const PowerLawFit& f);

}  // namespace drybulk
