#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "spohn/tensor.hpp"

namespace spohn {

// Undirected simple graph on vertices {0,...,n-1}. All algorithms here are
// desk scale: clique enumeration requires n <= 20 and uses bitset adjacency.
class Graph {
public:
    Graph() : n_(0) {}
    explicit Graph(int n) : n_(n), adj_(static_cast<size_t>(n), 0) {
        if (n < 0) throw FormatError("negative vertex count");
        if (n > 63) throw SizeLimitError("graph too large");
    }
    Graph(int n, const std::vector<std::pair<int, int>>& edges) : Graph(n) {
        for (auto [a, b] : edges) add_edge(a, b);
    }

    int vertices() const { return n_; }

    void add_edge(int a, int b) {
        check_vertex(a);
        check_vertex(b);
        if (a == b) throw FormatError("self-loops are not allowed");
        adj_[a] |= bit(b);
        adj_[b] |= bit(a);
    }

    bool has_edge(int a, int b) const {
        check_vertex(a);
        check_vertex(b);
        return a != b && (adj_[a] & bit(b));
    }

    std::uint64_t neighbors_mask(int v) const { return adj_[v]; }

    int edge_count() const {
        int c = 0;
        for (int v = 0; v < n_; ++v) c += __builtin_popcountll(adj_[v]);
        return c / 2;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int a = 0; a < n_; ++a)
            for (int b = a + 1; b < n_; ++b)
                if (adj_[a] & bit(b)) out.emplace_back(a, b);
        return out;
    }

    // Induced subgraph on `keep` (ascending); vertex i of the result is keep[i].
    Graph induced(const std::vector<int>& keep) const {
        Graph g(static_cast<int>(keep.size()));
        for (size_t i = 0; i < keep.size(); ++i)
            for (size_t j = i + 1; j < keep.size(); ++j)
                if (has_edge(keep[i], keep[j])) g.add_edge(static_cast<int>(i), static_cast<int>(j));
        return g;
    }

    std::vector<std::vector<int>> connected_components() const;

    bool is_connected() const { return n_ <= 1 || connected_components().size() == 1; }

    bool is_clique(const std::vector<int>& vs) const {
        for (size_t i = 0; i < vs.size(); ++i)
            for (size_t j = i + 1; j < vs.size(); ++j)
                if (!has_edge(vs[i], vs[j])) return false;
        return true;
    }

    bool is_complete() const {
        return edge_count() == n_ * (n_ - 1) / 2;
    }

    bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

    static std::uint64_t bit(int v) { return std::uint64_t(1) << v; }

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= n_) throw FormatError("vertex out of range");
    }

    int n_;
    std::vector<std::uint64_t> adj_;
};

struct NotClusterError : std::runtime_error {
    std::vector<int> offending_component;  // 0-based vertices
    explicit NotClusterError(std::vector<int> comp)
        : std::runtime_error("graph is not a cluster graph: component is not complete"),
          offending_component(std::move(comp)) {}
};

// Every maximal clique, each sorted ascending; the list is ordered by
// (min vertex, size, lexicographic) so downstream layouts are reproducible.
std::vector<std::vector<int>> maximal_cliques(const Graph& g);

// True iff every A-B path meets C. A, B, C must be pairwise disjoint.
bool separates(const Graph& g, const std::vector<int>& A, const std::vector<int>& B,
               const std::vector<int>& C);

struct MarkovStatement {
    int i;
    int j;
    std::vector<int> rest;
};

// One statement X_i _||_ X_j | X_{rest} per non-adjacent pair i < j.
std::vector<MarkovStatement> pairwise_markov_statements(const Graph& g);

struct ClusterStructure {
    std::vector<std::vector<int>> components;  // cliques, sorted by min vertex
    std::vector<int> sizes;                    // n_i
    std::vector<long> state_products;          // D_i
    std::vector<long> strategy_sums;           // S_i
    std::vector<int> isolated;                 // indices into components with n_i == 1
};

// Throws NotClusterError when some connected component is not complete.
ClusterStructure cluster_structure(const Graph& g, const GameFormat& format);
std::optional<ClusterStructure> try_cluster_structure(const Graph& g, const GameFormat& format);
bool is_cluster_graph(const Graph& g);

struct ParamMatrix {
    std::vector<std::string> row_labels;  // "C{c}:{1-based clique state}"
    std::vector<std::string> col_labels;  // 1-based global state
    std::vector<std::vector<std::int8_t>> entries;

    size_t rows() const { return entries.size(); }
    size_t cols() const { return entries.empty() ? 0 : entries[0].size(); }
};

// Rows: (clique, clique state) blocks in canonical clique order, states
// lexicographic last-fastest. Columns: global states in flat order. The
// entry is 1 iff the clique state agrees with the global state on the clique.
ParamMatrix parametrization_matrix(const Graph& g, const GameFormat& format);

std::string render_param_matrix(const ParamMatrix& m);

// Vertices adjacent to everything else (they form a clique), plus the induced
// graph on the rest. nullopt when no vertex is universal.
struct CliquePeel {
    std::vector<int> clique;     // universal vertices, ascending
    std::vector<int> remainder;  // the rest, ascending
    Graph remainder_graph;       // induced on `remainder`
};
std::optional<CliquePeel> universal_clique_peel(const Graph& g);

// Smallest cluster graph containing G: complete every connected component.
Graph cluster_supergraph(const Graph& g);

// A cluster graph contained in G: greedy clique partition that repeatedly
// extracts the largest clique containing the highest-d uncovered vertex.
Graph cluster_subgraph(const Graph& g, const GameFormat& format);

Graph complete_graph(int n);
Graph empty_graph(int n);

}  // namespace spohn
