// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Every tolerance is pinned here, in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <vector>

#include "spohn/equilibria.hpp"
#include "spohn/invariants.hpp"
#include "spohn/model_degree.hpp"
#include "spohn/sigma.hpp"

using namespace spohn;

namespace {

struct Criterion {
    int number;
    std::string description;
    double time_budget_ms;  // <= 0: no budget
    std::function<bool(std::string&)> run;
};

template <typename Fn>
void for_all_graphs(int n, Fn fn) {
    int pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << pairs); ++mask) {
        Graph g(n);
        int bit = 0;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b, ++bit)
                if (mask & (std::uint64_t(1) << bit)) g.add_edge(a, b);
        fn(g);
    }
}

void for_all_cluster_graphs(int n, const std::function<void(const Graph&)>& fn) {
    std::vector<int> block(n, 0);
    std::function<void(int, int)> walk = [&](int v, int max_used) {
        if (v == n) {
            Graph g(n);
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b)
                    if (block[a] == block[b]) g.add_edge(a, b);
            fn(g);
            return;
        }
        for (int u = 0; u <= max_used + 1; ++u) {
            block[v] = u;
            walk(v + 1, std::max(max_used, u));
        }
    };
    walk(0, -1);
}

void for_all_formats(int n, int dmax, const std::function<void(const GameFormat&)>& fn) {
    std::vector<int> d(n, 1);
    for (;;) {
        fn(GameFormat(d));
        int i = n - 1;
        while (i >= 0 && d[i] == dmax) d[i--] = 1;
        if (i < 0) return;
        ++d[i];
    }
}

std::vector<Rat> interior_samples(const Rat& lo, const Rat& hi, int count) {
    std::vector<Rat> out;
    for (int i = 1; i <= count; ++i) out.push_back(lo + (hi - lo) * Rat(i, count + 1));
    return out;
}

// --------------------------------------------------------------------------

bool criterion_table(std::string& why) {
    struct Row {
        int d1, d2, d3;
        long dim, deg;  // deg < 0 marks the empty rows
    };
    const Row rows[] = {{2, 2, 2, 1, 8},   {2, 2, 3, 2, 21},  {3, 2, 2, 1, 5},
                        {2, 3, 3, 4, 54},  {3, 2, 3, 2, 29},  {3, 3, 3, 4, 141},
                        {2, 2, 4, 3, 40},  {4, 2, 2, 1, 1},   {2, 3, 4, 6, 102},
                        {3, 2, 4, 3, 86},  {4, 2, 3, 2, 20},  {2, 4, 4, 9, 192},
                        {5, 2, 2, -1, -1}, {2, 2, 5, 4, 65},  {2, 3, 5, 8, 165},
                        {7, 2, 3, -1, -1}};
    Graph g(3, {{1, 2}});
    for (const Row& r : rows) {
        GameFormat f({r.d1, r.d2, r.d3});
        VarietyReport rep = variety_report(f, g);
        char label[32];
        std::snprintf(label, sizeof(label), "(%d,%d,%d)", r.d1, r.d2, r.d3);
        if (r.deg < 0) {
            if (rep.status != EmptinessStatus::Empty || rep.dimension || rep.degree) {
                why = std::string(label) + " should be reported Empty";
                return false;
            }
        } else {
            if (rep.status != EmptinessStatus::NonEmpty || !rep.dimension || !rep.degree ||
                *rep.dimension != r.dim || *rep.degree != r.deg) {
                why = std::string(label) + " dimension/degree mismatch";
                return false;
            }
        }
    }
    return true;
}

bool criterion_closed_formula(std::string& why) {
    Graph g(3, {{1, 2}});
    for (int d1 = 1; d1 <= 6; ++d1)
        for (int d2 = 1; d2 <= 6; ++d2)
            for (int d3 = 1; d3 <= 6; ++d3) {
                GameFormat f({d1, d2, d3});
                auto cs = cluster_structure(g, f);
                if (nash_ci_degree(f, cs) != one_edge_3player_degree(d1, d2, d3)) {
                    why = "mismatch at (" + std::to_string(d1) + "," + std::to_string(d2) + "," +
                          std::to_string(d3) + ")";
                    return false;
                }
            }
    return true;
}

bool criterion_complete_degree(std::string& why) {
    Rng rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + static_cast<int>(rng.next_below(3));
        std::vector<int> d;
        long prod = 1;
        for (int v = 0; v < n; ++v) {
            int dv = 1 + static_cast<int>(rng.next_below(4));
            while (prod * dv > 64) dv = 1 + static_cast<int>(rng.next_below(4));
            d.push_back(dv);
            prod *= dv;
        }
        GameFormat f(d);
        auto cs = cluster_structure(complete_graph(n), f);
        if (nash_ci_degree(f, cs) != prod) {
            why = "trial " + std::to_string(trial) + " degree != product";
            return false;
        }
    }
    return true;
}

bool criterion_emptiness_triple(std::string& why) {
    bool ok = true;
    for (int n = 2; n <= 4 && ok; ++n) {
        for_all_cluster_graphs(n, [&](const Graph& g) {
            for_all_formats(n, 5, [&](const GameFormat& f) {
                auto cs = cluster_structure(g, f);
                bool empty = is_empty_cluster(f, cs);
                if (empty != chow_class(f, cs).is_zero() ||
                    empty != (nash_ci_degree(f, cs) == 0)) {
                    ok = false;
                    why = "triple equivalence broken at n=" + std::to_string(n);
                }
            });
        });
    }
    return ok;
}

bool criterion_no_edge(std::string& why) {
    bool ok = true;
    for (int n = 2; n <= 5 && ok; ++n) {
        for_all_formats(n, 6, [&](const GameFormat& f) {
            auto cs = cluster_structure(empty_graph(n), f);
            if (!is_empty_cluster(f, cs) != nash_no_edge_nonempty(f)) {
                ok = false;
                why = "no-edge criterion mismatch at n=" + std::to_string(n);
            }
        });
    }
    return ok;
}

bool criterion_worked_example(std::string& why) {
    const Fixture& fx = fixture("beats-nash-4-2-2");
    auto res = solve_one_edge_3player<Rat>(fx.game, {1, 2});
    if (res.sigma_edge != std::vector<Rat>{Rat(8, 21), Rat(1, 7), Rat(1, 3), Rat(1, 7)}) {
        why = "stage-1 point mismatch";
        return false;
    }
    if (res.status != SolveStatus::AffineFamily || res.family_dimension != 1) {
        why = "expected a one-dimensional affine family";
        return false;
    }
    if (!res.interior_interval.nonempty || !res.interior_interval.lo ||
        !res.interior_interval.hi || *res.interior_interval.lo != 0 ||
        *res.interior_interval.hi != Rat(664, 9645)) {
        why = "interior interval endpoints mismatch";
        return false;
    }
    // Printed line coefficients in the chart t = last coordinate.
    std::vector<Rat> point{Rat(913, 5933), Rat(3290, 5933), Rat(1730, 5933), Rat(0)};
    std::vector<Rat> dir{Rat(-106095, 47464), Rat(27635, 47464), Rat(7749, 11866), Rat(1)};
    if (res.point != point || res.basis[0] != dir) {
        why = "line parametrization coefficients mismatch";
        return false;
    }
    return true;
}

bool criterion_fixtures(std::string& why) {
    for (const Fixture& fx : fixtures()) {
        for (const FixtureFamily& fam : fx.families) {
            if (fam.rational) {
                for (const Rat& t : interior_samples(fam.lo, fam.hi, 10)) {
                    MixedProfile<Rat> p = fam.at_rat(t);
                    auto rep = verify_ci_equilibrium(fx.game, fam.graph, p, 1e-9);
                    if (!rep.verdict_ci || rep.max_spohn_residual() != 0 ||
                        rep.max_ci_residual() != 0) {
                        why = fx.id + " family " + fam.name + " fails exact verification";
                        return false;
                    }
                }
            } else {
                for (int i = 1; i <= 10; ++i) {
                    MixedProfile<double> p = fam.at_dbl(i / 11.0);
                    auto rep = verify_ci_equilibrium(fx.game, fam.graph, p, 1e-9);
                    if (!rep.verdict_ci) {
                        why = fx.id + " family " + fam.name + " exceeds 1e-9 residual";
                        return false;
                    }
                }
            }
        }
    }
    // Expected payoffs along the Pareto-dominating curve: (4t, 1, 2).
    const Fixture& px = fixture("pareto-2-2-2");
    for (const Rat& t : interior_samples(Rat(3, 10), Rat(1, 3), 10)) {
        MixedProfile<Rat> p = px.families[0].at_rat(t);
        Rat e1 = expected_payoff(px.game, 0, p);
        Rat e2 = expected_payoff(px.game, 1, p);
        Rat e3 = expected_payoff(px.game, 2, p);
        auto close = [](const Rat& a, const Rat& b) {
            Rat d = a - b;
            if (d < 0) d = -d;
            return d <= Rat(1, 1000000000000L);
        };
        if (!close(e1, 4 * t) || !close(e2, Rat(1)) || !close(e3, Rat(2))) {
            why = "pareto expected payoffs differ from (4t, 1, 2)";
            return false;
        }
    }
    return true;
}

bool criterion_appendix(std::string& why) {
    // Binary stars.
    for (int n = 3; n <= 6; ++n) {
        Graph star(n);
        for (int v = 1; v < n; ++v) star.add_edge(0, v);
        Int expect = factorial(n - 1) * factorial(n - 1);
        if (model_degree(star, GameFormat(std::vector<int>(n, 2))) != expect) {
            why = "binary star degree at n=" + std::to_string(n);
            return false;
        }
    }
    // Three-vertex closed formulas, all d <= 3.
    bool ok = true;
    for_all_formats(3, 3, [&](const GameFormat& f) {
        long d1 = f.d[0], d2 = f.d[1], d3 = f.d[2];
        if (model_degree(empty_graph(3), f) != multinomial({d1 - 1, d2 - 1, d3 - 1})) ok = false;
        if (model_degree(Graph(3, {{1, 2}}), f) != multinomial({d1 - 1, d2 * d3 - 1})) ok = false;
        Int leaf = multinomial({d1 - 1, d3 - 1});
        Int pw(1);
        for (int i = 0; i < d2; ++i) pw *= leaf;
        if (model_degree(Graph(3, {{0, 1}, {1, 2}}), f) != pw) ok = false;
        if (model_degree(complete_graph(3), f) != 1) ok = false;
    });
    if (!ok) {
        why = "three-vertex closed formulas";
        return false;
    }
    // Triangle plus pendant edge, all d <= 3.
    Graph g4(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
    for_all_formats(4, 3, [&](const GameFormat& f) {
        Int base = multinomial({static_cast<long>(f.d[0]) * f.d[1] - 1, f.d[3] - 1});
        Int expect(1);
        for (int i = 0; i < f.d[2]; ++i) expect *= base;
        if (model_degree(g4, f) != expect) ok = false;
    });
    if (!ok) {
        why = "four-vertex worked formula";
        return false;
    }
    // The 7-vertex and 5-vertex worked graphs, all d <= 3.
    Graph g7(7);
    for (int i = 1; i < 7; ++i) g7.add_edge(0, i);
    for (int i = 2; i < 7; ++i) g7.add_edge(1, i);
    g7.add_edge(2, 3);
    g7.add_edge(4, 5);
    for_all_formats(7, 3, [&](const GameFormat& f) {
        Int base = multinomial({static_cast<long>(f.d[2]) * f.d[3] - 1,
                                static_cast<long>(f.d[4]) * f.d[5] - 1, f.d[6] - 1});
        Int expect(1);
        for (int i = 0; i < f.d[0] * f.d[1]; ++i) expect *= base;
        if (model_degree(g7, f) != expect) ok = false;
    });
    if (!ok) {
        why = "seven-vertex worked formula";
        return false;
    }
    Graph g5(5, {{1, 2}, {2, 3}, {0, 4}, {1, 4}, {2, 4}, {3, 4}});
    for_all_formats(5, 3, [&](const GameFormat& f) {
        long inner_dim =
            static_cast<long>(f.d[1]) * f.d[2] + static_cast<long>(f.d[2]) * f.d[3] - f.d[2] - 1;
        Int inner = multinomial({static_cast<long>(f.d[0]) - 1, inner_dim});
        Int leaf = multinomial({f.d[1] - 1, f.d[3] - 1});
        Int leaf_pow(1);
        for (int i = 0; i < f.d[2]; ++i) leaf_pow *= leaf;
        Int base = inner * leaf_pow;
        Int expect(1);
        for (int i = 0; i < f.d[4]; ++i) expect *= base;
        if (model_degree(g5, f) != expect) ok = false;
    });
    if (!ok) {
        why = "five-vertex worked formula";
        return false;
    }
    // Cluster graphs: Segre multinomial.
    for (int n = 2; n <= 4; ++n) {
        for_all_cluster_graphs(n, [&](const Graph& g) {
            Rng rng(n);
            for (int trial = 0; trial < 5; ++trial) {
                std::vector<int> d(n);
                for (int v = 0; v < n; ++v) d[v] = 1 + static_cast<int>(rng.next_below(3));
                GameFormat f(d);
                auto cs = cluster_structure(g, f);
                std::vector<long> dims;
                for (long D : cs.state_products) dims.push_back(D - 1);
                if (model_degree(g, f) != multinomial(dims)) ok = false;
            }
        });
    }
    if (!ok) why = "cluster Segre multinomial";
    return ok;
}

bool criterion_symbolic(std::string& why) {
    // Tridiagonal determinant identity, l <= 8 (the identity is asserted
    // internally; reaching here means recursion == closed form).
    RingDesc ring(2);
    RingPoly a = RingPoly::variable(ring, 0), b = RingPoly::variable(ring, 1);
    for (long l = 1; l <= 8; ++l) {
        try {
            tridiag_det_identity(l, a, b);
        } catch (const std::exception&) {
            why = "tridiagonal identity failed at l=" + std::to_string(l);
            return false;
        }
    }

    // Support of prod (sum_{u != i} x_u)^{d_i - 1} for k <= 4, d_i <= 4.
    for (int k = 1; k <= 4; ++k) {
        RingDesc rk(k);
        std::vector<int> d(k, 1);
        for (;;) {
            int s = k;  // S = [k], all factors present
            RingPoly prod = RingPoly::constant(rk, Int(1));
            long total = 0;
            for (int i = 0; i < s; ++i) {
                prod = prod * hyperplane_sum_excluding(rk, i).pow(d[i] - 1);
                total += d[i] - 1;
            }
            std::vector<int> e(k, 0);
            std::function<bool(int, long)> walk = [&](int pos, long left) -> bool {
                if (pos == k - 1) {
                    e[pos] = static_cast<int>(left);
                    bool expected = true;
                    for (int i = 0; i < s; ++i)
                        if (e[i] > total - (d[i] - 1)) expected = false;
                    return (prod.coefficient(e) != 0) == expected;
                }
                for (long v = 0; v <= left; ++v) {
                    e[pos] = static_cast<int>(v);
                    if (!walk(pos + 1, left - v)) return false;
                }
                return true;
            };
            if (!walk(0, total)) {
                why = "support law failed at k=" + std::to_string(k);
                return false;
            }
            int i = k - 1;
            while (i >= 0 && d[i] == 4) d[i--] = 1;
            if (i < 0) break;
            ++d[i];
        }
    }

    // Multihomogeneity of every generated minor with the stated multidegree.
    std::vector<std::pair<Game, Graph>> cases;
    Game bin = random_game(GameFormat({2, 2, 2}), 31, -9, 9);
    for_all_graphs(3, [&](const Graph& g) { cases.emplace_back(bin, g); });
    cases.emplace_back(fixture("beats-nash-4-2-2").game, Graph(3, {{1, 2}}));
    cases.emplace_back(random_game(GameFormat({2, 3, 2, 2}), 32, -9, 9),
                       Graph(4, {{0, 1}, {1, 2}}));
    for (const auto& [game, g] : cases) {
        EquationSystem sys = equation_system(game, g);
        for (const auto& gen : sys.generators) {
            PlayerContext ctx = player_context(g, sys.layout, gen.player);
            if (!gen.check_multihomogeneous(sys.layout) ||
                gen.multidegree != expected_multidegree(ctx, sys.layout)) {
                why = "multihomogeneity violated for player " + std::to_string(gen.player + 1);
                return false;
            }
        }
    }
    return true;
}

bool criterion_pullback(std::string& why) {
    std::vector<std::pair<Game, Graph>> cases;
    Game bin = random_game(GameFormat({2, 2, 2}), 12, -9, 9);
    for_all_graphs(3, [&](const Graph& g) { cases.emplace_back(bin, g); });
    cases.emplace_back(fixture("beats-nash-4-2-2").game, Graph(3, {{1, 2}}));

    for (const auto& [game, g] : cases) {
        SigmaLayout layout(g, game.format);
        auto mono = monomial_map(layout, game.format);
        auto minors = spohn_minors_p(game);
        size_t idx = 0;
        for (int k = 0; k < game.format.players(); ++k) {
            PullbackMatrix pm = pullback_matrix(game, g, layout, k);
            for (int a = 0; a < game.format.d[k]; ++a)
                for (int b = a + 1; b < game.format.d[k]; ++b, ++idx) {
                    QPoly sub(layout.total_vars);
                    for (const auto& [e, c] : minors[idx].poly.terms()) {
                        QPoly term = QPoly::constant(layout.total_vars, c);
                        for (auto [pv, exp] : e)
                            for (int i = 0; i < exp; ++i)
                                term = term * QPoly::monomial(layout.total_vars, mono[pv], Rat(1));
                        sub = sub + term;
                    }
                    QPoly divisor = pm.column_factor * pm.row_factors[a] * pm.row_factors[b];
                    auto quot = QPoly::divide_exact(sub, divisor);
                    if (!quot) {
                        why = "common factors do not divide the substituted minor";
                        return false;
                    }
                    QPoly F = pm.minor(a, b);
                    if (!(*quot == F || *quot == -F)) {
                        why = "reduced substitution differs from the matrix minor";
                        return false;
                    }
                }
        }
    }
    return true;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "one-edge 3-player table: dimensions, degrees, empty rows", 1000, criterion_table},
        {2, "closed formula == Chow degree for all d <= 6", 5000, criterion_closed_formula},
        {3, "complete-graph degree equals prod(d) on 50 random formats", -1,
         criterion_complete_degree},
        {4, "emptiness <=> zero class <=> zero degree on cluster graphs", -1,
         criterion_emptiness_triple},
        {5, "no-edge emptiness matches the classical inequality", -1, criterion_no_edge},
        {6, "worked 4x2x2 example: exact stage-1 point, line, interval", 1000,
         criterion_worked_example},
        {7, "printed equilibrium families verify at 1e-9 (exact where rational)", 5000,
         criterion_fixtures},
        {8, "graphical-model degrees: stars, worked graphs, Segre clusters", 5000,
         criterion_appendix},
        {9, "symbolic identities: band determinant, support law, multidegrees", -1,
         criterion_symbolic},
        {10, "pullback of Spohn minors matches the reduced matrices", -1, criterion_pullback},
    };

    int failures = 0;
    for (auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string why;
        bool ok = false;
        try {
            ok = c.run(why);
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        auto end = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(end - start).count();
        if (ok && c.time_budget_ms > 0 && ms > c.time_budget_ms) {
            ok = false;
            why = "time budget exceeded";
        }
        std::printf("%s  criterion %2d: %s (%.0f ms)%s%s\n", ok ? "PASS" : "FAIL", c.number,
                    c.description.c_str(), ms, why.empty() ? "" : " -- ", why.c_str());
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
