#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spohn/graph.hpp"
#include "spohn/polyring.hpp"

namespace spohn {

// Dimension and degree of the graphical-model variety M_G: the dimension from
// the exact rank of the parametrization matrix, the degree from the recursive
// calculus over disjoint unions (Segre products, multinomial rule) and joins
// with cliques (power rule). Graphs outside that calculus are reported as
// NotDecomposable, which is an honest outcome rather than an error.

struct DecompositionNode;
using DecompositionTree = std::shared_ptr<const DecompositionNode>;

struct DecompositionNode {
    enum class Kind { DisjointUnion, CliquePeel, BaseComplete, NotDecomposable };

    Kind kind;
    std::vector<int> vertices;              // original vertex ids, ascending
    std::vector<DecompositionTree> children;  // union parts, or the single peel child
    std::vector<int> peel_clique;           // CliquePeel only: the universal vertices
};

DecompositionTree decompose(const Graph& g);

// Textbook-style rendering, e.g. "K2 v (K2 u K2 u K1)" with the join and
// disjoint-union glyphs.
std::string render_decomposition(const DecompositionTree& tree);

// Exact integer rank via fraction-free (Bareiss) elimination.
long bareiss_rank(std::vector<std::vector<Int>> m);

// rank(A_G) - 1.
long model_dim(const Graph& g, const GameFormat& format);

struct NotDecomposableError : std::runtime_error {
    std::vector<int> subgraph_vertices;
    explicit NotDecomposableError(std::vector<int> vs)
        : std::runtime_error("graph is outside the union/join degree calculus"),
          subgraph_vertices(std::move(vs)) {}
};

// Degree of M_G through the decomposition recursion; throws
// NotDecomposableError when some leaf is not reachable by union/peel steps.
Int model_degree(const Graph& g, const GameFormat& format);
std::optional<Int> try_model_degree(const Graph& g, const GameFormat& format);

// Dimension through the same recursion (sum over unions,
// D_peel*(child+1)-1 over peels); agrees with model_dim on decomposable graphs.
long recursion_dim(const DecompositionTree& tree, const GameFormat& format);

// Closed star-graph formula: multinomial(leaf d_i - 1) ^ d_center.
Int star_degree(const GameFormat& format, int center);

// deg(Y x Z) = C(dim Y + dim Z, dim Y) deg(Y) deg(Z).
Int product_degree(long dim1, const Int& deg1, long dim2, const Int& deg2);

}  // namespace spohn
