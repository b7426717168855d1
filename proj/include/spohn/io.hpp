#pragma once

#include <string>

#include "spohn/equilibria.hpp"
#include "spohn/game.hpp"
#include "spohn/graph.hpp"
#include "spohn/invariants.hpp"

namespace spohn {

// Game JSON: {"format":[d1,...,dn], "payoffs":[[...],...]}, flat arrays in
// the fixed index order; rationals as "a/b" strings or plain numbers.
Game parse_game_json(const std::string& text);
std::string game_to_json(const Game& game);

// MixedProfile JSON: {"format":[...], "p":[...]}.
MixedProfile<Rat> parse_profile_json(const std::string& text);
std::string profile_to_json(const MixedProfile<Rat>& p);

// Graph JSON: {"vertices": n, "edges": [[i,j],...]} with 1-based vertices.
Graph parse_graph_json(const std::string& text);
std::string graph_to_json(const Graph& g);

// Inline graph syntax for the CLI: "edges:2-3,3-4", "none", or "complete";
// the vertex count comes from the format.
Graph parse_graph_inline(const std::string& text, int vertices);

std::string report_to_json(const VarietyReport& report);
std::string report_to_json(const VerificationReport& report, const NashReport& nash);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace spohn
