#pragma once

#include <string>
#include <vector>

#include "drybulknet/graph.hpp"

namespace drybulk {

enum class Direction { in, out };
enum class WeightKind { frequency, dwt, volume };
enum class DegreeKind { in, out, total };

enum class MeasureId { k_i, s_i_f, s_i_d, s_i_t, k_o, s_o_f, s_o_d, s_o_t, betweenness };

const char* measure_name(MeasureId id);

struct CentralityVector {
    MeasureId measure = MeasureId::k_i;
    std::vector<double> values;  // by node index
    bool normalized = false;
};

// In/out degree per node; normalized divides by (n-1). Normalization on a
// graph with n < 2 throws ComputeError.
CentralityVector degree_centrality(const TradeGraph& g, Direction dir, bool normalized);

// Sum of the chosen edge weight over incident in- or out-edges.
CentralityVector strength_centrality(const TradeGraph& g, Direction dir, WeightKind weight);

// Directed shortest-path betweenness (Brandes accumulation); normalized
// divides by (n-1)(n-2). Normalization with n < 3 throws ComputeError.
CentralityVector betweenness(const TradeGraph& g, bool normalized);

// Global transitivity of the undirected projection:
// 3 * triangles / connected triples; 0 when the graph has no triples.
double transitivity(const TradeGraph& g);
double transitivity(const UndirectedView& g);

// Pearson correlation of endpoint total degrees over the undirected
// projection's edges, both orientations counted. Throws ComputeError when
// degenerate (fewer than 2 edges or zero degree variance).
double assortativity(const TradeGraph& g);

struct CorrelationMatrix {
    std::vector<MeasureId> measures;
    // Pearson coefficients; NaN rows/columns mark constant vectors.
    std::vector<std::vector<double>> r;
};

// Correlations across nodes among the eight degree/strength measures.
CorrelationMatrix centrality_correlations(const TradeGraph& g);

struct PowerLawFit {
    double gamma = 0;  // exponent, = -slope of the log-log fit
    double logC = 0;   // intercept (natural log)
    double r2 = 0;
    std::size_t n_bins = 0;
};

// OLS of log f(k) on log k over the degree histogram, k >= 1 and f(k) >= 1.
// Throws ComputeError with fewer than 2 usable bins.
PowerLawFit fit_power_law(const TradeGraph& g, DegreeKind which);

// Same regression on an explicit (k, f) histogram; test and replication
// entry point shared by fit_power_law.
PowerLawFit fit_power_law_histogram(const std::vector<std::pair<double, double>>& histogram);

struct CountryScore {
    std::string country;
    double score = 0;
};

// Country score = sum of its ports' values; descending, ties by name.
std::vector<CountryScore> rank_countries(const TradeGraph& g, const CentralityVector& measure,
                                         std::size_t top_k);

}  // namespace drybulk
