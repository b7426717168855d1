#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spohn/graph.hpp"
#include "spohn/polyring.hpp"

namespace spohn {

// Closed-form invariants of Spohn / Spohn-CI / Nash-CI varieties for generic
// games. Everything here is a statement about a generic game of the given
// format, never about a particular payoff instance; the certificate strings
// say which rule produced each field.

enum class VarietyKind { Spohn, SpohnCI, NashCI, GraphicalModel };
enum class EmptinessStatus { NonEmpty, Empty, Unknown };

struct VarietyReport {
    VarietyKind kind;
    EmptinessStatus status = EmptinessStatus::Unknown;
    std::optional<long> dimension;
    std::optional<Int> degree;
    std::optional<RingPoly> chow_class;
    std::vector<std::string> certificate;
};

std::string kind_name(VarietyKind k);
std::string status_name(EmptinessStatus s);

// (codim, degree) of the Spohn variety of a generic game: (sum d_i - n, prod d_i).
std::pair<long, Int> spohn_codim_degree(const GameFormat& format);

// dim M_G - (sum d_i - n); meaningful only when the variety is nonempty.
long spohn_ci_dimension(const GameFormat& format, const Graph& g);

// D_1+...+D_k - S_1-...-S_k + n - k.
long nash_ci_dimension(const GameFormat& format, const ClusterStructure& cluster);

// The Chow ring of M_G for a cluster graph with k components.
RingDesc chow_ring(const ClusterStructure& cluster);

// Class of the Nash CI variety in ZZ[x_1..x_k]/<x_i^{D_i}>:
//   prod_{i isolated} (sum_{u != i} x_u)^{d_i - 1}
//   * prod_{i not isolated} prod_j sum_{l=0}^{d_{i,j}-1} x_i^l (sum_u x_u)^{d_{i,j}-1-l}.
// Homogeneous of degree sum S_i - n, or identically zero.
RingPoly chow_class(const GameFormat& format, const ClusterStructure& cluster);

// Coefficient of x_1^{D_1-1}...x_k^{D_k-1} in chow_class * (sum x_u)^dim;
// zero exactly when the variety is empty.
Int nash_ci_degree(const GameFormat& format, const ClusterStructure& cluster);

// Closed alternating-binomial formula for 3 players whose only edge joins
// players 2 and 3 (1-based).
Int one_edge_3player_degree(int d1, int d2, int d3);

// True iff some isolated vertex i violates 2(d_i - 1) <= sum_l (D_l - 1).
bool is_empty_cluster(const GameFormat& format, const ClusterStructure& cluster);

// Totally mixed Nash existence for a generic game: d_i <= 2 - n + sum_{j != i} d_j.
bool nash_no_edge_nonempty(const GameFormat& format);

struct EmptinessResult {
    EmptinessStatus status;
    std::vector<std::string> certificate;
};

// Squeeze between cluster sub- and supergraphs plus the direct nonemptiness
// rules; Unknown is a legitimate outcome.
EmptinessResult general_graph_emptiness(const GameFormat& format, const Graph& g);

// The aggregated per-graph report backing the CLI `invariants` command.
VarietyReport variety_report(const GameFormat& format, const Graph& g);

}  // namespace spohn
