#include "spohn/model_degree.hpp"

#include <algorithm>
#include <sstream>

namespace spohn {

namespace {

DecompositionTree make_node(DecompositionNode n) {
    return std::make_shared<const DecompositionNode>(std::move(n));
}

// `vertices` maps local ids of g to original ids.
DecompositionTree decompose_rec(const Graph& g, const std::vector<int>& vertices) {
    DecompositionNode node;
    node.vertices = vertices;

    auto comps = g.connected_components();
    if (comps.size() > 1) {
        node.kind = DecompositionNode::Kind::DisjointUnion;
        for (const auto& comp : comps) {
            std::vector<int> orig;
            for (int lv : comp) orig.push_back(vertices[lv]);
            node.children.push_back(decompose_rec(g.induced(comp), orig));
        }
        return make_node(std::move(node));
    }

    if (g.is_complete()) {
        node.kind = DecompositionNode::Kind::BaseComplete;
        return make_node(std::move(node));
    }

    if (auto peel = universal_clique_peel(g)) {
        node.kind = DecompositionNode::Kind::CliquePeel;
        for (int lv : peel->clique) node.peel_clique.push_back(vertices[lv]);
        std::vector<int> orig;
        for (int lv : peel->remainder) orig.push_back(vertices[lv]);
        node.children.push_back(decompose_rec(peel->remainder_graph, orig));
        return make_node(std::move(node));
    }

    node.kind = DecompositionNode::Kind::NotDecomposable;
    return make_node(std::move(node));
}

std::string render_rec(const DecompositionTree& t, bool parenthesize) {
    switch (t->kind) {
        case DecompositionNode::Kind::BaseComplete:
            return "K" + std::to_string(t->vertices.size());
        case DecompositionNode::Kind::NotDecomposable: {
            std::string s = "G{";
            for (size_t i = 0; i < t->vertices.size(); ++i) {
                if (i) s += ',';
                s += std::to_string(t->vertices[i] + 1);
            }
            return s + "}";
        }
        case DecompositionNode::Kind::DisjointUnion: {
            std::string s;
            for (size_t i = 0; i < t->children.size(); ++i) {
                if (i) s += " ⊎ ";  // disjoint-union glyph
                s += render_rec(t->children[i], true);
            }
            return parenthesize ? "(" + s + ")" : s;
        }
        case DecompositionNode::Kind::CliquePeel: {
            std::string s = "K" + std::to_string(t->peel_clique.size()) + " ∨ " +
                            render_rec(t->children[0], true);
            return parenthesize ? "(" + s + ")" : s;
        }
    }
    return "";
}

struct DimDeg {
    long dim;
    Int deg;
};

DimDeg degree_rec(const DecompositionTree& t, const GameFormat& format) {
    switch (t->kind) {
        case DecompositionNode::Kind::BaseComplete: {
            long D = 1;
            for (int v : t->vertices) D *= format.d[v];
            return {D - 1, Int(1)};
        }
        case DecompositionNode::Kind::DisjointUnion: {
            std::vector<long> dims;
            Int deg(1);
            long dim = 0;
            for (const auto& c : t->children) {
                DimDeg dd = degree_rec(c, format);
                dims.push_back(dd.dim);
                deg *= dd.deg;
                dim += dd.dim;
            }
            return {dim, multinomial(dims) * deg};
        }
        case DecompositionNode::Kind::CliquePeel: {
            DimDeg child = degree_rec(t->children[0], format);
            long Dp = 1;
            for (int v : t->peel_clique) Dp *= format.d[v];
            Int deg(1);
            for (long i = 0; i < Dp; ++i) deg *= child.deg;
            return {Dp * (child.dim + 1) - 1, deg};
        }
        case DecompositionNode::Kind::NotDecomposable:
            throw NotDecomposableError(t->vertices);
    }
    throw std::logic_error("unreachable");
}

}  // namespace

DecompositionTree decompose(const Graph& g) {
    std::vector<int> ids(static_cast<size_t>(g.vertices()));
    for (int v = 0; v < g.vertices(); ++v) ids[v] = v;
    return decompose_rec(g, ids);
}

std::string render_decomposition(const DecompositionTree& tree) { return render_rec(tree, false); }

long bareiss_rank(std::vector<std::vector<Int>> m) {
    if (m.empty()) return 0;
    const size_t rows = m.size(), cols = m[0].size();
    Int prev_pivot(1);
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t pivot_row = rank;
        while (pivot_row < rows && m[pivot_row][col] == 0) ++pivot_row;
        if (pivot_row == rows) continue;
        std::swap(m[rank], m[pivot_row]);
        const Int pivot = m[rank][col];
        for (size_t i = rank + 1; i < rows; ++i) {
            for (size_t j = col + 1; j < cols; ++j)
                m[i][j] = (pivot * m[i][j] - m[i][col] * m[rank][j]) / prev_pivot;
            m[i][col] = 0;
        }
        prev_pivot = pivot;
        ++rank;
    }
    return static_cast<long>(rank);
}

long model_dim(const Graph& g, const GameFormat& format) {
    ParamMatrix A = parametrization_matrix(g, format);
    std::vector<std::vector<Int>> m(A.rows(), std::vector<Int>(A.cols()));
    for (size_t i = 0; i < A.rows(); ++i)
        for (size_t j = 0; j < A.cols(); ++j) m[i][j] = static_cast<long>(A.entries[i][j]);
    return bareiss_rank(std::move(m)) - 1;
}

Int model_degree(const Graph& g, const GameFormat& format) {
    if (g.vertices() != format.players())
        throw FormatError("graph vertex count does not match player count");
    return degree_rec(decompose(g), format).deg;
}

std::optional<Int> try_model_degree(const Graph& g, const GameFormat& format) {
    try {
        return model_degree(g, format);
    } catch (const NotDecomposableError&) {
        return std::nullopt;
    }
}

long recursion_dim(const DecompositionTree& tree, const GameFormat& format) {
    return degree_rec(tree, format).dim;
}

Int star_degree(const GameFormat& format, int center) {
    if (center < 0 || center >= format.players()) throw FormatError("center out of range");
    std::vector<long> parts;
    for (int v = 0; v < format.players(); ++v)
        if (v != center) parts.push_back(format.d[v] - 1);
    Int base = multinomial(parts);
    Int deg(1);
    for (int i = 0; i < format.d[center]; ++i) deg *= base;
    return deg;
}

Int product_degree(long dim1, const Int& deg1, long dim2, const Int& deg2) {
    return binomial(dim1 + dim2, dim1) * deg1 * deg2;
}

}  // namespace spohn
