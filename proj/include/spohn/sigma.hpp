#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spohn/game.hpp"
#include "spohn/graph.hpp"

namespace spohn {

// Sparse exponent list: (variable, exponent) pairs sorted by variable, all
// exponents positive. Terms are ordered graded-lexicographically, matching
// the dense order on exponent vectors.
using SparseExp = std::vector<std::pair<int, int>>;

struct SparseGrlexLess {
    bool operator()(const SparseExp& a, const SparseExp& b) const;
};

// Sparse multivariate polynomial with exact rational coefficients. Used both
// for polynomials in the joint-probability coordinates p_j and in the clique
// coordinates sigma^{(C)}_{j_C}.
class QPoly {
public:
    QPoly() : nvars_(0) {}
    explicit QPoly(int nvars) : nvars_(nvars) {}

    static QPoly constant(int nvars, Rat c);
    static QPoly monomial(int nvars, SparseExp e, Rat c);
    static QPoly variable(int nvars, int v);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<SparseExp, Rat, SparseGrlexLess>& terms() const { return terms_; }

    void add_term(const SparseExp& e, const Rat& c);

    QPoly operator+(const QPoly& o) const;
    QPoly operator-(const QPoly& o) const;
    QPoly operator-() const;
    QPoly operator*(const QPoly& o) const;
    QPoly operator*(const Rat& c) const;

    bool operator==(const QPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const QPoly& o) const { return !(*this == o); }

    QPoly derivative(int v) const;

    // Substitutes exact values for the variables present in `values`
    // (var -> value); the result lives in the same variable space.
    QPoly substitute(const std::map<int, Rat>& values) const;

    template <typename T>
    T eval(const std::vector<T>& point) const {
        T total(0);
        for (const auto& [e, c] : terms_) {
            T term = scalar_cast<T>(c);
            for (auto [v, exp] : e)
                for (int i = 0; i < exp; ++i) term *= point[v];
            total += term;
        }
        return total;
    }

    // Exact division; nullopt when the quotient is not a polynomial.
    static std::optional<QPoly> divide_exact(const QPoly& num, const QPoly& den);

    // Canonical text, terms in descending graded-lex order.
    std::string str(const std::function<std::string(int)>& var_name) const;

private:
    int nvars_;
    std::map<SparseExp, Rat, SparseGrlexLess> terms_;
};

// Variable layout for the Segre coordinates attached to the maximal cliques
// of a graph: clique c contributes one variable per state of its players,
// states in flat order. Names are "s{c}_{digits}", 1-based.
struct SigmaLayout {
    std::vector<std::vector<int>> cliques;
    std::vector<GameFormat> clique_formats;
    std::vector<int> offsets;
    int total_vars = 0;

    SigmaLayout() = default;
    SigmaLayout(const Graph& g, const GameFormat& format);

    int clique_count() const { return static_cast<int>(cliques.size()); }
    long clique_states(int c) const { return clique_formats[c].states(); }
    int var(int c, long state_index) const { return offsets[c] + static_cast<int>(state_index); }
    int clique_of(int var) const;
    std::string var_name(int var) const;

    // Index of clique c's state in a given global state.
    long clique_state_of(int c, const std::vector<int>& global_state) const;
};

// The monomial parametrization p_j -> prod_C sigma^{(C)}_{j_C}: one sparse
// exponent list per flat p index.
std::vector<SparseExp> monomial_map(const SigmaLayout& layout, const GameFormat& format);

struct IsolatedVertexError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Component data for a player: the cliques inside its connected component
// and the sum over states of the complement cliques (the factor every minor
// of the unreduced matrix carries).
struct PlayerContext {
    int player;
    bool isolated;
    std::vector<int> component;         // vertices of G_k, ascending
    std::vector<int> component_cliques; // indices into layout.cliques
};

PlayerContext player_context(const Graph& g, const SigmaLayout& layout, int k);

// L_a^{(k)}: sum over the component states with player k pinned to `a` of the
// clique monomials of the component. Throws IsolatedVertexError when k is
// isolated (the matrix entry is the constant 1 there).
QPoly L_poly(const Graph& g, const GameFormat& format, const SigmaLayout& layout, int k, int a);

// d_k x 2 matrix of the reduced pullback of the Spohn matrix through the
// monomial map, plus the common factors that were removed from the unreduced
// version (one column factor, and a per-row factor for isolated players).
struct PullbackMatrix {
    int player;
    bool isolated;
    std::vector<QPoly> col_marginal;  // L_a, or constant 1 for isolated players
    std::vector<QPoly> col_payoff;
    QPoly column_factor;              // sum over complement states
    std::vector<QPoly> row_factors;   // sigma^{(k)}_a for isolated players, else 1

    QPoly minor(int a, int b) const {
        return col_marginal[a] * col_payoff[b] - col_marginal[b] * col_payoff[a];
    }
};

PullbackMatrix pullback_matrix(const Game& game, const Graph& g, const SigmaLayout& layout, int k);

struct SigmaPoly {
    QPoly poly;
    std::vector<int> multidegree;  // per clique
    int player;                    // provenance, 0-based
    int row_a;
    int row_b;

    bool check_multihomogeneous(const SigmaLayout& layout) const;
};

struct EquationSystem {
    GameFormat format;
    Graph graph;
    SigmaLayout layout;
    bool cluster;  // true: Nash CI generators N_{X,G}; false: general Y_{X,G}
    std::vector<SigmaPoly> generators;
};

// All 2x2 minors of every pullback matrix. Isolated players contribute the
// d_k - 1 minors anchored at the first row (the rest are their differences);
// other players contribute all C(d_k, 2).
EquationSystem equation_system(const Game& game, const Graph& g);

// Multidegree of F^{(k)}_{a,b}: 2 on the component cliques and 1 elsewhere,
// or 0 / 1 for isolated players.
std::vector<int> expected_multidegree(const PlayerContext& ctx, const SigmaLayout& layout);

// Quadratic Spohn minors in the p coordinates, all pairs for every player.
struct PPoly {
    QPoly poly;
    std::string label;
};
std::vector<PPoly> spohn_minors_p(const Game& game);

// Conditional-independence minors of the pairwise Markov statements.
std::vector<PPoly> ci_minors_p(const Graph& g, const GameFormat& format);

std::string p_var_name(const GameFormat& format, int flat);

enum class ExportDialect { Plain, M2 };

std::string export_ideal(const EquationSystem& system, ExportDialect dialect);
std::string export_ideal(const std::vector<PPoly>& polys, const GameFormat& format,
                         ExportDialect dialect);

// Recovers the clique coordinates of a factorizing profile. Requires the
// cliques (in canonical order) to satisfy the running-intersection property,
// which covers cluster graphs and clique chains such as the 3-vertex path.
std::vector<Rat> sigma_point_from_profile(const SigmaLayout& layout,
                                          const MixedProfile<Rat>& profile);

}  // namespace spohn
