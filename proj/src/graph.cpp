#include "spohn/graph.hpp"

#include <algorithm>
#include <sstream>

namespace spohn {

namespace {

void bron_kerbosch(const Graph& g, std::uint64_t R, std::uint64_t P, std::uint64_t X,
                   std::vector<std::uint64_t>& out) {
    if (P == 0 && X == 0) {
        out.push_back(R);
        return;
    }
    // Pivot on the vertex of P|X with the most neighbors in P.
    std::uint64_t PX = P | X;
    int pivot = -1, best = -1;
    for (std::uint64_t m = PX; m;) {
        int v = __builtin_ctzll(m);
        m &= m - 1;
        int cnt = __builtin_popcountll(P & g.neighbors_mask(v));
        if (cnt > best) {
            best = cnt;
            pivot = v;
        }
    }
    std::uint64_t cand = P & ~g.neighbors_mask(pivot);
    for (std::uint64_t m = cand; m;) {
        int v = __builtin_ctzll(m);
        m &= m - 1;
        std::uint64_t vb = Graph::bit(v);
        bron_kerbosch(g, R | vb, P & g.neighbors_mask(v), X & g.neighbors_mask(v), out);
        P &= ~vb;
        X |= vb;
    }
}

std::vector<int> mask_to_vertices(std::uint64_t m) {
    std::vector<int> vs;
    while (m) {
        vs.push_back(__builtin_ctzll(m));
        m &= m - 1;
    }
    return vs;
}

}  // namespace

std::vector<std::vector<int>> Graph::connected_components() const {
    std::vector<std::vector<int>> comps;
    std::uint64_t seen = 0;
    for (int s = 0; s < n_; ++s) {
        if (seen & bit(s)) continue;
        std::uint64_t comp = bit(s);
        std::uint64_t frontier = comp;
        while (frontier) {
            std::uint64_t next = 0;
            for (std::uint64_t m = frontier; m;) {
                int v = __builtin_ctzll(m);
                m &= m - 1;
                next |= adj_[v];
            }
            frontier = next & ~comp;
            comp |= next;
        }
        seen |= comp;
        comps.push_back(mask_to_vertices(comp));
    }
    return comps;
}

std::vector<std::vector<int>> maximal_cliques(const Graph& g) {
    if (g.vertices() > 20) throw SizeLimitError("clique enumeration limited to 20 vertices");
    if (g.vertices() == 0) return {};
    std::vector<std::uint64_t> masks;
    std::uint64_t all = (g.vertices() == 64) ? ~std::uint64_t(0)
                                             : (Graph::bit(g.vertices()) - 1);
    bron_kerbosch(g, 0, all, 0, masks);
    std::vector<std::vector<int>> cliques;
    cliques.reserve(masks.size());
    for (std::uint64_t m : masks) cliques.push_back(mask_to_vertices(m));
    std::sort(cliques.begin(), cliques.end(), [](const auto& a, const auto& b) {
        if (a.front() != b.front()) return a.front() < b.front();
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return cliques;
}

bool separates(const Graph& g, const std::vector<int>& A, const std::vector<int>& B,
               const std::vector<int>& C) {
    std::uint64_t am = 0, bm = 0, cm = 0;
    for (int v : A) am |= Graph::bit(v);
    for (int v : B) bm |= Graph::bit(v);
    for (int v : C) cm |= Graph::bit(v);
    if ((am & bm) || (am & cm) || (bm & cm))
        throw FormatError("separates: sets must be pairwise disjoint");

    // Reachability from A in G minus C.
    std::uint64_t reach = am & ~cm;
    std::uint64_t frontier = reach;
    while (frontier) {
        std::uint64_t next = 0;
        for (std::uint64_t m = frontier; m;) {
            int v = __builtin_ctzll(m);
            m &= m - 1;
            next |= g.neighbors_mask(v);
        }
        next &= ~cm;
        frontier = next & ~reach;
        reach |= next;
    }
    return (reach & bm) == 0;
}

std::vector<MarkovStatement> pairwise_markov_statements(const Graph& g) {
    std::vector<MarkovStatement> out;
    for (int i = 0; i < g.vertices(); ++i)
        for (int j = i + 1; j < g.vertices(); ++j) {
            if (g.has_edge(i, j)) continue;
            MarkovStatement s;
            s.i = i;
            s.j = j;
            for (int v = 0; v < g.vertices(); ++v)
                if (v != i && v != j) s.rest.push_back(v);
            out.push_back(std::move(s));
        }
    return out;
}

std::optional<ClusterStructure> try_cluster_structure(const Graph& g, const GameFormat& format) {
    if (g.vertices() != format.players())
        throw FormatError("graph vertex count does not match player count");
    ClusterStructure cs;
    for (const auto& comp : g.connected_components()) {
        if (!g.is_clique(comp)) return std::nullopt;
        long D = 1, S = 0;
        for (int v : comp) {
            D *= format.d[v];
            S += format.d[v];
        }
        if (comp.size() == 1) cs.isolated.push_back(static_cast<int>(cs.components.size()));
        cs.components.push_back(comp);
        cs.sizes.push_back(static_cast<int>(comp.size()));
        cs.state_products.push_back(D);
        cs.strategy_sums.push_back(S);
    }
    return cs;
}

ClusterStructure cluster_structure(const Graph& g, const GameFormat& format) {
    if (auto cs = try_cluster_structure(g, format)) return *cs;
    for (const auto& comp : g.connected_components())
        if (!g.is_clique(comp)) throw NotClusterError(comp);
    throw NotClusterError({});
}

bool is_cluster_graph(const Graph& g) {
    for (const auto& comp : g.connected_components())
        if (!g.is_clique(comp)) return false;
    return true;
}

ParamMatrix parametrization_matrix(const Graph& g, const GameFormat& format) {
    if (g.vertices() != format.players())
        throw FormatError("graph vertex count does not match player count");
    auto cliques = maximal_cliques(g);
    long rows = 0;
    for (const auto& c : cliques) {
        long dc = 1;
        for (int v : c) dc *= format.d[v];
        rows += dc;
    }
    long cols = format.states();
    if (rows * cols > 2000000) throw SizeLimitError("parametrization matrix exceeds size limit");

    ParamMatrix m;
    m.entries.assign(static_cast<size_t>(rows), std::vector<std::int8_t>(static_cast<size_t>(cols), 0));

    std::vector<int> gstate(format.players(), 0);
    long col = 0;
    do {
        m.col_labels.push_back(state_label(gstate));
        long row = 0;
        for (const auto& c : cliques) {
            long dc = 1, idx = 0;
            for (int v : c) {
                dc *= format.d[v];
                idx = idx * format.d[v] + gstate[v];
            }
            m.entries[row + idx][col] = 1;
            row += dc;
        }
        ++col;
    } while (format.next_state(gstate));

    for (size_t ci = 0; ci < cliques.size(); ++ci) {
        std::vector<int> sub_d;
        for (int v : cliques[ci]) sub_d.push_back(format.d[v]);
        GameFormat sub(sub_d);
        std::vector<int> st(sub_d.size(), 0);
        do {
            m.row_labels.push_back("C" + std::to_string(ci + 1) + ":" + state_label(st));
        } while (sub.next_state(st));
    }
    return m;
}

std::string render_param_matrix(const ParamMatrix& m) {
    std::ostringstream os;
    os << "rows";
    for (const auto& r : m.row_labels) os << ' ' << r;
    os << " | cols";
    for (const auto& c : m.col_labels) os << ' ' << c;
    os << '\n';
    for (const auto& row : m.entries) {
        for (size_t j = 0; j < row.size(); ++j) {
            if (j) os << ' ';
            os << static_cast<int>(row[j]);
        }
        os << '\n';
    }
    return os.str();
}

std::optional<CliquePeel> universal_clique_peel(const Graph& g) {
    CliquePeel peel;
    for (int v = 0; v < g.vertices(); ++v) {
        if (__builtin_popcountll(g.neighbors_mask(v)) == g.vertices() - 1)
            peel.clique.push_back(v);
        else
            peel.remainder.push_back(v);
    }
    if (peel.clique.empty()) return std::nullopt;
    peel.remainder_graph = g.induced(peel.remainder);
    return peel;
}

Graph cluster_supergraph(const Graph& g) {
    Graph out(g.vertices());
    for (const auto& comp : g.connected_components())
        for (size_t i = 0; i < comp.size(); ++i)
            for (size_t j = i + 1; j < comp.size(); ++j) out.add_edge(comp[i], comp[j]);
    return out;
}

Graph cluster_subgraph(const Graph& g, const GameFormat& format) {
    if (g.vertices() != format.players())
        throw FormatError("graph vertex count does not match player count");
    Graph out(g.vertices());
    std::vector<bool> covered(static_cast<size_t>(g.vertices()), false);
    int left = g.vertices();
    while (left > 0) {
        // Highest-d uncovered vertex, smallest index on ties.
        int pick = -1;
        for (int v = 0; v < g.vertices(); ++v)
            if (!covered[v] && (pick < 0 || format.d[v] > format.d[pick])) pick = v;

        std::vector<int> uncovered;
        for (int v = 0; v < g.vertices(); ++v)
            if (!covered[v]) uncovered.push_back(v);
        Graph sub = g.induced(uncovered);
        int pick_local = static_cast<int>(std::lower_bound(uncovered.begin(), uncovered.end(), pick) -
                                          uncovered.begin());

        // Largest maximal clique through `pick` in the uncovered part,
        // lexicographically smallest on ties.
        std::vector<int> best;
        for (const auto& c : maximal_cliques(sub)) {
            if (std::find(c.begin(), c.end(), pick_local) == c.end()) continue;
            if (best.empty() || c.size() > best.size()) best = c;
        }
        if (best.empty()) best = {pick_local};

        std::vector<int> chosen;
        for (int lv : best) chosen.push_back(uncovered[lv]);
        for (size_t i = 0; i < chosen.size(); ++i) {
            covered[chosen[i]] = true;
            --left;
            for (size_t j = i + 1; j < chosen.size(); ++j) out.add_edge(chosen[i], chosen[j]);
        }
    }
    return out;
}

Graph complete_graph(int n) {
    Graph g(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) g.add_edge(a, b);
    return g;
}

Graph empty_graph(int n) { return Graph(n); }

}  // namespace spohn
