#include "spohn/equilibria.hpp"

#include <algorithm>
#include <cmath>

namespace spohn {

namespace {

template <typename T>
T from_double(double x);

template <>
Rat from_double<Rat>(double x) {
    return Rat(x);
}
template <>
double from_double<double>(double x) {
    return x;
}

// Max |minor| per pairwise Markov statement, evaluated directly on p.
template <typename T>
std::vector<T> ci_statement_residuals(const Graph& g, const GameFormat& format,
                                      const std::vector<T>& p, std::vector<std::string>* labels) {
    std::vector<T> out;
    for (const auto& st : pairwise_markov_statements(g)) {
        T worst(0);
        std::vector<int> state(format.players(), 0);
        const int i = st.i, j = st.j;
        std::vector<int> idx(st.rest.size(), 0);
        for (;;) {
            for (size_t r = 0; r < st.rest.size(); ++r) state[st.rest[r]] = idx[r];
            auto flat_of = [&](int si, int sj) {
                state[i] = si;
                state[j] = sj;
                return format.flat_index(state);
            };
            for (int ai = 0; ai < format.d[i]; ++ai)
                for (int bi = ai + 1; bi < format.d[i]; ++bi)
                    for (int aj = 0; aj < format.d[j]; ++aj)
                        for (int bj = aj + 1; bj < format.d[j]; ++bj) {
                            T m = p[flat_of(ai, aj)] * p[flat_of(bi, bj)] -
                                  p[flat_of(ai, bj)] * p[flat_of(bi, aj)];
                            m = scalar_abs(m);
                            if (m > worst) worst = m;
                        }
            size_t r = st.rest.size();
            bool carried = false;
            while (r-- > 0) {
                if (++idx[r] < format.d[st.rest[r]]) {
                    carried = true;
                    break;
                }
                idx[r] = 0;
            }
            if (!carried) break;
        }
        if (labels)
            labels->push_back(std::to_string(st.i + 1) + "_indep_" + std::to_string(st.j + 1));
        out.push_back(worst);
    }
    return out;
}

// Expected payoff of player k deviating to pure strategy i while everyone
// else keeps their single-player marginal.
template <typename T>
T deviation_payoff(const Game& game, int k, const std::vector<std::vector<T>>& marginals, int i) {
    const GameFormat& format = game.format;
    Tensor<T> X = game.payoff_as<T>(k);
    T total(0);
    std::vector<int> state(format.players(), 0);
    long flat = 0;
    do {
        if (state[k] == i) {
            T w = X.values[flat];
            for (int l = 0; l < format.players(); ++l)
                if (l != k) w *= marginals[l][state[l]];
            total += w;
        }
        ++flat;
    } while (format.next_state(state));
    return total;
}

}  // namespace

bool is_chordal(const Graph& g) {
    // Repeatedly strip simplicial vertices; chordal iff the graph empties out.
    std::vector<int> alive;
    for (int v = 0; v < g.vertices(); ++v) alive.push_back(v);
    while (!alive.empty()) {
        bool found = false;
        for (size_t a = 0; a < alive.size() && !found; ++a) {
            std::vector<int> nbrs;
            for (int u : alive)
                if (u != alive[a] && g.has_edge(alive[a], u)) nbrs.push_back(u);
            if (g.is_clique(nbrs)) {
                alive.erase(alive.begin() + static_cast<long>(a));
                found = true;
            }
        }
        if (!found) return false;
    }
    return true;
}

template <typename T>
VerificationReportT<T> verify_ci_equilibrium(const Game& game, const Graph& g,
                                             const MixedProfile<T>& p, double tol) {
    if (game.format != p.format) throw FormatError("verify: profile format mismatch");
    if (g.vertices() != game.format.players())
        throw FormatError("verify: graph vertex count mismatch");

    VerificationReportT<T> rep;
    rep.tol = tol;
    const T tolT = from_double<T>(tol);
    rep.totally_mixed = p.totally_mixed();

    for (int k = 0; k < game.format.players(); ++k)
        rep.spohn_residuals.push_back(spohn_matrix(game, k, p).max_minor_abs());

    rep.ci_residuals = ci_statement_residuals(g, game.format, p.p, &rep.ci_labels);

    std::vector<T> indep =
        ci_statement_residuals(empty_graph(game.format.players()), game.format, p.p, nullptr);
    rep.independence_residual = T(0);
    for (const T& r : indep)
        if (r > rep.independence_residual) rep.independence_residual = r;

    std::vector<std::vector<T>> marginals;
    for (int k = 0; k < game.format.players(); ++k)
        marginals.push_back(player_marginal(game.format, p.p, k));
    for (int k = 0; k < game.format.players(); ++k) {
        T e = expected_payoff(game, k, p);
        T best_gain(0);
        for (int i = 0; i < game.format.d[k]; ++i) {
            T gain = deviation_payoff(game, k, marginals, i) - e;
            if (gain > best_gain) best_gain = gain;
        }
        rep.best_response_slack.push_back(-best_gain);
    }

    if (!rep.totally_mixed && !is_chordal(g)) {
        rep.refused = true;
        rep.note = "boundary semantics undefined: profile is not totally mixed and the graph "
                   "is not chordal, so the pairwise statements do not characterize the model";
        return rep;
    }

    rep.verdict_dependency = rep.totally_mixed && rep.max_spohn_residual() <= tolT;
    rep.verdict_ci = rep.verdict_dependency && rep.max_ci_residual() <= tolT;
    bool slack_ok = true;
    for (const T& s : rep.best_response_slack)
        if (s < -tolT) slack_ok = false;
    rep.verdict_nash =
        rep.verdict_dependency && rep.independence_residual <= tolT && slack_ok;
    return rep;
}

template <typename T>
NashReportT<T> verify_nash(const Game& game, const MixedProfile<T>& p, double tol) {
    if (game.format != p.format) throw FormatError("verify: profile format mismatch");
    NashReportT<T> rep;
    rep.tol = tol;
    const T tolT = from_double<T>(tol);

    std::vector<std::vector<T>> marginals;
    for (int k = 0; k < game.format.players(); ++k)
        marginals.push_back(player_marginal(game.format, p.p, k));

    // Distance to the product of the marginals.
    T worst(0);
    std::vector<int> state(game.format.players(), 0);
    long flat = 0;
    do {
        T prod(1);
        for (int k = 0; k < game.format.players(); ++k) prod *= marginals[k][state[k]];
        T diff = scalar_abs(T(p.p[flat] - prod));
        if (diff > worst) worst = diff;
        ++flat;
    } while (game.format.next_state(state));
    rep.product_residual = worst;

    bool slack_ok = true;
    for (int k = 0; k < game.format.players(); ++k) {
        T e = expected_payoff(game, k, p);
        T best_gain(0);
        for (int i = 0; i < game.format.d[k]; ++i) {
            T gain = deviation_payoff(game, k, marginals, i) - e;
            if (gain > best_gain) best_gain = gain;
        }
        rep.best_response_slack.push_back(-best_gain);
        if (-best_gain < -tolT) slack_ok = false;
    }
    rep.verdict_nash = rep.product_residual <= tolT && slack_ok;
    return rep;
}

VerificationReport to_double_report(const VerificationReportT<Rat>& r) {
    VerificationReport d;
    d.tol = r.tol;
    d.totally_mixed = r.totally_mixed;
    for (const Rat& x : r.spohn_residuals) d.spohn_residuals.push_back(x.get_d());
    for (const Rat& x : r.ci_residuals) d.ci_residuals.push_back(x.get_d());
    d.ci_labels = r.ci_labels;
    d.independence_residual = r.independence_residual.get_d();
    for (const Rat& x : r.best_response_slack) d.best_response_slack.push_back(x.get_d());
    d.verdict_dependency = r.verdict_dependency;
    d.verdict_ci = r.verdict_ci;
    d.verdict_nash = r.verdict_nash;
    d.refused = r.refused;
    d.note = r.note;
    return d;
}

std::string solve_status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::UniquePoint: return "UniquePoint";
        case SolveStatus::AffineFamily: return "AffineFamily";
        case SolveStatus::NoSolution: return "NoSolution";
        case SolveStatus::SolverCandidates: return "SolverCandidates";
    }
    return "";
}

namespace {

template <typename T>
bool treat_as_zero(const T& x, const T& scale);

template <>
bool treat_as_zero<Rat>(const Rat& x, const Rat&) {
    return x == 0;
}
template <>
bool treat_as_zero<double>(const double& x, const double& scale) {
    return std::abs(x) <= 1e-11 * (scale > 1.0 ? scale : 1.0);
}

template <typename T>
struct LinSolve {
    bool consistent = false;
    std::vector<T> particular;
    std::vector<std::vector<T>> nullspace;
};

// Reduced row echelon solve of A x = b with full classification.
template <typename T>
LinSolve<T> solve_linear(std::vector<std::vector<T>> A, std::vector<T> b) {
    const size_t rows = A.size();
    const size_t cols = rows ? A[0].size() : 0;
    T scale(1);
    for (const auto& row : A)
        for (const T& x : row)
            if (scalar_abs(x) > scale) scale = scalar_abs(x);

    std::vector<int> pivot_col_of_row;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t pr = r;
        // Rational backend: any nonzero pivot; double backend: largest.
        T best = scalar_abs(A[pr][c]);
        for (size_t i = r + 1; i < rows; ++i)
            if (scalar_abs(A[i][c]) > best) {
                best = scalar_abs(A[i][c]);
                pr = i;
            }
        if (treat_as_zero(A[pr][c], scale)) continue;
        std::swap(A[r], A[pr]);
        std::swap(b[r], b[pr]);
        T inv = T(1) / A[r][c];
        for (size_t j = c; j < cols; ++j) A[r][j] *= inv;
        b[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            T f = A[i][c];
            if (f == T(0)) continue;
            for (size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
            b[i] -= f * b[r];
        }
        pivot_col_of_row.push_back(static_cast<int>(c));
        ++r;
    }

    LinSolve<T> out;
    for (size_t i = r; i < rows; ++i)
        if (!treat_as_zero(b[i], scale)) return out;  // inconsistent
    out.consistent = true;
    out.particular.assign(cols, T(0));
    for (size_t i = 0; i < pivot_col_of_row.size(); ++i)
        out.particular[pivot_col_of_row[i]] = b[i];

    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col_of_row) is_pivot[c] = true;
    for (size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<T> dir(cols, T(0));
        dir[c] = T(1);
        for (size_t i = 0; i < pivot_col_of_row.size(); ++i)
            dir[pivot_col_of_row[i]] = -A[i][c];
        out.nullspace.push_back(std::move(dir));
    }
    return out;
}

template <typename T>
IntervalT<T> positivity_interval(const std::vector<T>& point, const std::vector<T>& dir) {
    IntervalT<T> iv;
    std::optional<T> lo, hi;
    for (size_t i = 0; i < point.size(); ++i) {
        if (dir[i] == T(0)) {
            if (!(point[i] > T(0))) return iv;  // coordinate never positive
            continue;
        }
        T bound = -point[i] / dir[i];
        if (dir[i] > T(0)) {
            if (!lo || bound > *lo) lo = bound;
        } else {
            if (!hi || bound < *hi) hi = bound;
        }
    }
    if (lo && hi && !(*lo < *hi)) return iv;
    iv.nonempty = true;
    iv.lo = lo;
    iv.hi = hi;
    return iv;
}

}  // namespace

template <typename T>
OneEdgeSolveT<T> solve_one_edge_3player(const Game& game, std::pair<int, int> edge) {
    const GameFormat& format = game.format;
    if (format.players() != 3) throw WrongShapeError("expected a 3-player game");
    int i = std::min(edge.first, edge.second);
    int j = std::max(edge.first, edge.second);
    if (i < 0 || j > 2 || i == j) throw WrongShapeError("edge must join two distinct players");
    int m = 3 - i - j;  // the isolated player
    if (static_cast<long>(format.d[m]) != static_cast<long>(format.d[i]) * format.d[j])
        throw WrongShapeError(
            "linear stage is determined only when the isolated player has d_i*d_j strategies");

    OneEdgeSolveT<T> res;
    res.edge = {i, j};
    res.isolated_player = m;

    const int de = format.d[i] * format.d[j];  // edge-clique states, (s_i, s_j) flat
    const int dm = format.d[m];

    Tensor<T> Xm = game.payoff_as<T>(m);
    auto global_state = [&](int sm, int si, int sj) {
        std::vector<int> st(3, 0);
        st[m] = sm;
        st[i] = si;
        st[j] = sj;
        return st;
    };

    // Stage 1: the isolated player's anchored minors are linear in the edge
    // coordinates; with the normalization they form a square system.
    std::vector<std::vector<T>> A;
    std::vector<T> b;
    for (int bm = 1; bm < dm; ++bm) {
        std::vector<T> row(static_cast<size_t>(de), T(0));
        int col = 0;
        for (int si = 0; si < format.d[i]; ++si)
            for (int sj = 0; sj < format.d[j]; ++sj, ++col)
                row[col] = Xm.at(global_state(0, si, sj)) - Xm.at(global_state(bm, si, sj));
        A.push_back(std::move(row));
        b.push_back(T(0));
    }
    A.emplace_back(static_cast<size_t>(de), T(1));
    b.push_back(T(1));

    LinSolve<T> stage1 = solve_linear(A, b);
    if (!stage1.consistent || !stage1.nullspace.empty())
        throw SingularLinearStageError("stage-1 linear system is singular for this game");
    res.sigma_edge = stage1.particular;
    res.edge_point_positive =
        std::all_of(res.sigma_edge.begin(), res.sigma_edge.end(), [](const T& x) { return x > T(0); });

    // Stage 2: the edge players' minors become linear in the isolated
    // player's coordinates once the edge point is substituted.
    auto edge_index = [&](int si, int sj) { return si * format.d[j] + sj; };
    std::vector<std::vector<T>> A2;
    std::vector<T> b2;
    for (int k : {i, j}) {
        Tensor<T> Xk = game.payoff_as<T>(k);
        int other = (k == i) ? j : i;
        // L_a = sum over the other edge player's states.
        std::vector<T> L(static_cast<size_t>(format.d[k]), T(0));
        for (int a = 0; a < format.d[k]; ++a)
            for (int so = 0; so < format.d[other]; ++so) {
                int si = (k == i) ? a : so;
                int sj = (k == i) ? so : a;
                L[a] += res.sigma_edge[edge_index(si, sj)];
            }
        // W_a[t] = sum_{x: x_k=a, x_m=t} X_x sigma_edge[x_edge].
        std::vector<std::vector<T>> W(static_cast<size_t>(format.d[k]),
                                      std::vector<T>(static_cast<size_t>(dm), T(0)));
        for (int a = 0; a < format.d[k]; ++a)
            for (int so = 0; so < format.d[other]; ++so)
                for (int t = 0; t < dm; ++t) {
                    int si = (k == i) ? a : so;
                    int sj = (k == i) ? so : a;
                    W[a][t] += Xk.at(global_state(t, si, sj)) * res.sigma_edge[edge_index(si, sj)];
                }
        for (int a = 0; a < format.d[k]; ++a)
            for (int bk = a + 1; bk < format.d[k]; ++bk) {
                std::vector<T> row(static_cast<size_t>(dm), T(0));
                for (int t = 0; t < dm; ++t) row[t] = L[a] * W[bk][t] - L[bk] * W[a][t];
                A2.push_back(std::move(row));
                b2.push_back(T(0));
            }
    }
    A2.emplace_back(static_cast<size_t>(dm), T(1));
    b2.push_back(T(1));

    LinSolve<T> stage2 = solve_linear(A2, b2);
    if (!stage2.consistent) {
        res.status = SolveStatus::NoSolution;
        return res;
    }
    res.point = stage2.particular;
    res.basis = stage2.nullspace;
    res.family_dimension = static_cast<int>(res.basis.size());
    if (res.family_dimension == 0) {
        res.status = SolveStatus::UniquePoint;
        return res;
    }
    res.status = SolveStatus::AffineFamily;

    if (res.family_dimension == 1) {
        // Reparametrize so the family is point + t*dir with the parameter
        // equal to the last coordinate, the chart used for reporting.
        std::vector<T>& dir = res.basis[0];
        T last = dir.back();
        if (last != T(0)) {
            for (T& x : dir) x = x / last;
            T shift = res.point.back();
            for (size_t c = 0; c < res.point.size(); ++c) res.point[c] -= shift * dir[c];
        }
        if (res.edge_point_positive)
            res.interior_interval = positivity_interval(res.point, dir);
    }
    return res;
}

template <typename T>
MixedProfile<T> profile_from_sigma(const SigmaLayout& layout, const GameFormat& format,
                                   const std::vector<T>& sigma) {
    std::vector<T> p(static_cast<size_t>(format.states()), T(1));
    std::vector<int> state(format.players(), 0);
    long flat = 0;
    T total(0);
    do {
        for (int c = 0; c < layout.clique_count(); ++c)
            p[flat] *= sigma[layout.var(c, layout.clique_state_of(c, state))];
        total += p[flat];
        ++flat;
    } while (format.next_state(state));
    if (total == T(0)) throw FormatError("sigma point has zero total mass");
    for (T& x : p) x = x / total;
    return MixedProfile<T>(format, std::move(p));
}

NewtonResult newton_solve(const Game& game, const EquationSystem& system,
                          const NewtonOptions& options) {
    const SigmaLayout& layout = system.layout;
    const int n = layout.total_vars;
    if (n > 64) throw SizeLimitError("newton solver limited to 64 variables");
    if (options.starts < 1) throw FormatError("need at least one start");

    // Equations: generators plus one normalization per clique.
    std::vector<QPoly> eqs;
    for (const auto& g : system.generators) eqs.push_back(g.poly);
    for (int c = 0; c < layout.clique_count(); ++c) {
        QPoly norm = QPoly::constant(n, Rat(-1));
        for (long s = 0; s < layout.clique_states(c); ++s)
            norm.add_term({{layout.var(c, s), 1}}, Rat(1));
        eqs.push_back(norm);
    }
    const size_t m = eqs.size();
    std::vector<std::vector<QPoly>> jac(m);
    for (size_t e = 0; e < m; ++e)
        for (int v = 0; v < n; ++v) jac[e].push_back(eqs[e].derivative(v));

    auto residual = [&](const std::vector<double>& x) {
        std::vector<double> r(m);
        for (size_t e = 0; e < m; ++e) r[e] = eqs[e].eval<double>(x);
        return r;
    };
    auto norm_inf = [](const std::vector<double>& v) {
        double s = 0;
        for (double x : v) s = std::max(s, std::abs(x));
        return s;
    };

    Rng rng(options.seed);
    std::vector<Candidate> found;

    for (int start = 0; start < options.starts; ++start) {
        // Uniform start on the product of simplices.
        std::vector<double> x(static_cast<size_t>(n));
        for (int c = 0; c < layout.clique_count(); ++c) {
            double sum = 0;
            std::vector<double> w(static_cast<size_t>(layout.clique_states(c)));
            for (double& wi : w) {
                wi = -std::log(rng.next_unit());
                sum += wi;
            }
            for (long s = 0; s < layout.clique_states(c); ++s)
                x[static_cast<size_t>(layout.var(c, s))] = w[static_cast<size_t>(s)] / sum;
        }

        std::vector<double> r = residual(x);
        double rn = norm_inf(r);
        bool converged = rn < options.tol;
        for (int iter = 0; iter < options.max_iter && !converged; ++iter) {
            // Jacobian at x.
            std::vector<std::vector<double>> J(m, std::vector<double>(static_cast<size_t>(n)));
            for (size_t e = 0; e < m; ++e)
                for (int v = 0; v < n; ++v) J[e][v] = jac[e][v].eval<double>(x);

            // Solve J delta = -r: least-squares via normal equations with a
            // small ridge, which also covers the underdetermined case.
            std::vector<std::vector<double>> M(static_cast<size_t>(n),
                                               std::vector<double>(static_cast<size_t>(n), 0.0));
            std::vector<double> rhs(static_cast<size_t>(n), 0.0);
            for (size_t e = 0; e < m; ++e)
                for (int a = 0; a < n; ++a) {
                    if (J[e][a] == 0.0) continue;
                    rhs[a] -= J[e][a] * r[e];
                    for (int bb = 0; bb < n; ++bb) M[a][bb] += J[e][a] * J[e][bb];
                }
            double ridge = 1e-12 + 1e-10 * rn;
            for (int a = 0; a < n; ++a) M[a][a] += ridge;
            LinSolve<double> sol = solve_linear(M, rhs);
            if (!sol.consistent) break;
            std::vector<double>& delta = sol.particular;

            // Halve the step until the residual norm decreases.
            double alpha = 1.0;
            bool improved = false;
            for (int h = 0; h < 30; ++h) {
                std::vector<double> xn = x;
                for (int v = 0; v < n; ++v) xn[v] += alpha * delta[v];
                std::vector<double> rnew = residual(xn);
                if (norm_inf(rnew) < rn) {
                    x = std::move(xn);
                    r = std::move(rnew);
                    rn = norm_inf(r);
                    improved = true;
                    break;
                }
                alpha /= 2;
            }
            if (!improved) break;
            converged = rn < options.tol;
        }
        if (!converged) continue;

        // Only generator residuals count for the reported value.
        double gen_res = 0;
        for (const auto& g : system.generators)
            gen_res = std::max(gen_res, std::abs(g.poly.eval<double>(x)));
        if (gen_res > options.tol) continue;

        MixedProfile<double> prof;
        try {
            prof = profile_from_sigma(layout, system.format, x);
        } catch (const FormatError&) {
            continue;
        }
        if (!prof.totally_mixed()) continue;
        VerificationReport rep = verify_ci_equilibrium(game, system.graph, prof, options.tol);
        if (!rep.verdict_ci) continue;

        Candidate c;
        c.sigma = x;
        c.system_residual = gen_res;
        c.report = rep;
        found.push_back(std::move(c));
    }

    // Canonical order, then radius-based deduplication: the result does not
    // depend on the order the starts ran in.
    std::sort(found.begin(), found.end(),
              [](const Candidate& a, const Candidate& b) { return a.sigma < b.sigma; });
    NewtonResult out;
    for (auto& c : found) {
        bool dup = false;
        for (const auto& kept : out.candidates) {
            double dist = 0;
            for (size_t v = 0; v < c.sigma.size(); ++v)
                dist = std::max(dist, std::abs(c.sigma[v] - kept.sigma[v]));
            if (dist <= options.dedup_radius) dup = true;
        }
        if (!dup) out.candidates.push_back(std::move(c));
    }
    return out;
}

template VerificationReportT<Rat> verify_ci_equilibrium<Rat>(const Game&, const Graph&,
                                                             const MixedProfile<Rat>&, double);
template VerificationReportT<double> verify_ci_equilibrium<double>(const Game&, const Graph&,
                                                                   const MixedProfile<double>&,
                                                                   double);
template NashReportT<Rat> verify_nash<Rat>(const Game&, const MixedProfile<Rat>&, double);
template NashReportT<double> verify_nash<double>(const Game&, const MixedProfile<double>&, double);
template OneEdgeSolveT<Rat> solve_one_edge_3player<Rat>(const Game&, std::pair<int, int>);
template OneEdgeSolveT<double> solve_one_edge_3player<double>(const Game&, std::pair<int, int>);
template MixedProfile<Rat> profile_from_sigma<Rat>(const SigmaLayout&, const GameFormat&,
                                                   const std::vector<Rat>&);
template MixedProfile<double> profile_from_sigma<double>(const SigmaLayout&, const GameFormat&,
                                                         const std::vector<double>&);

}  // namespace spohn
