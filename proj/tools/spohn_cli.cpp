// Command-line front end: closed-form variety invariants, equation export,
// equilibrium verification, and the solvers, over the game/graph/profile
// JSON formats documented in the README.

#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "spohn/equilibria.hpp"
#include "spohn/invariants.hpp"
#include "spohn/io.hpp"
#include "spohn/model_degree.hpp"

using namespace spohn;

namespace {

std::string fmt_double(double x) {
    if (x == 0.0) x = 0.0;  // normalize negative zero
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string fmt_dbl_vector(const std::vector<double>& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += fmt_double(v[i]);
    }
    return s + ")";
}

GameFormat parse_format_inline(const std::string& text) {
    std::vector<int> d;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            d.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw ParseError("bad format entry '" + item + "' in '" + text + "'");
        }
    }
    return GameFormat(d);
}

Graph load_graph(const std::string& spec, int vertices) {
    if (spec.rfind("edges:", 0) == 0 || spec == "none" || spec == "complete")
        return parse_graph_inline(spec, vertices);
    return parse_graph_json(read_file(spec));
}

double default_tol() {
    if (const char* env = std::getenv("SPOHN_TOL")) {
        try {
            return std::stod(env);
        } catch (const std::exception&) {
            return 1e-9;
        }
    }
    return 1e-9;
}

// ---------------------------------------------------------------------------

int cmd_invariants(const std::string& format_str, const std::string& graph_str, bool json) {
    GameFormat fmt = parse_format_inline(format_str);
    Graph g = load_graph(graph_str, fmt.players());
    VarietyReport rep = variety_report(fmt, g);
    if (json) {
        std::cout << report_to_json(rep) << "\n";
    } else {
        std::cout << kind_name(rep.kind) << " variety for format " << format_str << "\n";
        std::cout << "status: " << status_name(rep.status) << "\n";
        if (rep.dimension) std::cout << "dimension: " << *rep.dimension << "\n";
        if (rep.degree) std::cout << "degree: " << rep.degree->get_str() << "\n";
        if (rep.chow_class) std::cout << "chow class: " << rep.chow_class->str() << "\n";
        for (const auto& c : rep.certificate) std::cout << "certificate: " << c << "\n";
    }
    return rep.status == EmptinessStatus::NonEmpty ? 0 : 1;
}

int cmd_equations(const std::string& game_path, const std::string& graph_str,
                  const std::string& dialect_str, const std::string& what,
                  const std::string& out_path) {
    Game game = parse_game_json(read_file(game_path));
    Graph g = load_graph(graph_str, game.format.players());
    ExportDialect dialect;
    if (dialect_str == "plain")
        dialect = ExportDialect::Plain;
    else if (dialect_str == "m2")
        dialect = ExportDialect::M2;
    else
        throw ParseError("unknown dialect: " + dialect_str);

    std::string text;
    if (what == "system") {
        text = export_ideal(equation_system(game, g), dialect);
    } else if (what == "spohn-p") {
        text = export_ideal(spohn_minors_p(game), game.format, dialect);
    } else if (what == "ci-p") {
        text = export_ideal(ci_minors_p(g, game.format), game.format, dialect);
    } else {
        throw ParseError("unknown system kind: " + what);
    }
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
    return 0;
}

template <typename T>
std::pair<VerificationReportT<T>, NashReportT<T>> run_verify(const Game& game, const Graph& g,
                                                             const MixedProfile<Rat>& p,
                                                             double tol) {
    MixedProfile<T> pt = profile_cast<T>(p);
    return {verify_ci_equilibrium(game, g, pt, tol), verify_nash(game, pt, tol)};
}

int cmd_verify(const std::string& game_path, const std::string& graph_str,
               const std::string& profile_path, double tol, const std::string& backend,
               const std::string& notion, bool json) {
    Game game = parse_game_json(read_file(game_path));
    Graph g = load_graph(graph_str, game.format.players());
    MixedProfile<Rat> p = parse_profile_json(read_file(profile_path));
    if (p.total_mass() != 1) throw ParseError("profile is not normalized");

    VerificationReport rep;
    NashReport nash;
    if (backend == "rational") {
        auto [r, n] = run_verify<Rat>(game, g, p, tol);
        rep = to_double_report(r);
        nash.tol = n.tol;
        nash.product_residual = n.product_residual.get_d();
        for (const Rat& s : n.best_response_slack) nash.best_response_slack.push_back(s.get_d());
        nash.verdict_nash = n.verdict_nash;
    } else if (backend == "double") {
        auto [r, n] = run_verify<double>(game, g, p, tol);
        rep = r;
        nash = n;
    } else {
        throw ParseError("unknown backend: " + backend);
    }

    if (json) {
        std::cout << report_to_json(rep, nash) << "\n";
    } else {
        std::cout << "totally mixed: " << (rep.totally_mixed ? "yes" : "no") << "\n";
        for (size_t k = 0; k < rep.spohn_residuals.size(); ++k)
            std::cout << "spohn residual, player " << (k + 1) << ": "
                      << fmt_double(rep.spohn_residuals[k]) << "\n";
        for (size_t i = 0; i < rep.ci_residuals.size(); ++i)
            std::cout << "ci residual, " << rep.ci_labels[i] << ": "
                      << fmt_double(rep.ci_residuals[i]) << "\n";
        std::cout << "independence residual: " << fmt_double(rep.independence_residual) << "\n";
        for (size_t k = 0; k < rep.best_response_slack.size(); ++k)
            std::cout << "best-response slack, player " << (k + 1) << ": "
                      << fmt_double(rep.best_response_slack[k]) << "\n";
        if (rep.refused) std::cout << "note: " << rep.note << "\n";
        std::cout << "verdict dependency: " << (rep.verdict_dependency ? "true" : "false") << "\n";
        std::cout << "verdict ci: " << (rep.verdict_ci ? "true" : "false") << "\n";
        std::cout << "verdict nash (totally mixed): " << (rep.verdict_nash ? "true" : "false")
                  << "\n";
        std::cout << "verdict nash (classical): " << (nash.verdict_nash ? "true" : "false")
                  << "\n";
    }

    bool verdict;
    if (notion == "ci")
        verdict = rep.verdict_ci;
    else if (notion == "dependency")
        verdict = rep.verdict_dependency;
    else if (notion == "nash")
        verdict = nash.verdict_nash;
    else
        throw ParseError("unknown notion: " + notion);
    return verdict ? 0 : 1;
}

template <typename T>
void print_one_edge_solution(const OneEdgeSolveT<T>& res, bool rational) {
    auto value_str = [&](const T& x) {
        if constexpr (std::is_same_v<T, Rat>)
            return x.get_str();
        else
            return fmt_double(x);
    };
    auto vector_str = [&](const std::vector<T>& v) {
        std::string s = "(";
        for (size_t i = 0; i < v.size(); ++i) {
            if (i) s += ", ";
            s += value_str(v[i]);
        }
        return s + ")";
    };
    std::cout << "linear pipeline: edge " << (res.edge.first + 1) << "-" << (res.edge.second + 1)
              << ", isolated player " << (res.isolated_player + 1) << "\n";
    std::cout << "backend: " << (rational ? "rational" : "double") << "\n";
    std::cout << "stage 1, edge-clique point: " << vector_str(res.sigma_edge) << "\n";
    std::cout << "edge point positive: " << (res.edge_point_positive ? "yes" : "no") << "\n";
    std::cout << "status: " << solve_status_name(res.status) << "\n";
    if (res.status == SolveStatus::NoSolution) return;
    std::cout << "family dimension: " << res.family_dimension
              << ", degree: " << res.family_degree << "\n";
    std::cout << "isolated-player point: " << vector_str(res.point) << "\n";
    for (size_t b = 0; b < res.basis.size(); ++b)
        std::cout << "direction " << (b + 1) << ": " << vector_str(res.basis[b]) << "\n";
    if (res.family_dimension == 1) {
        if (res.interior_interval.nonempty) {
            std::cout << "interior parameter interval: ("
                      << (res.interior_interval.lo ? value_str(*res.interior_interval.lo)
                                                   : std::string("-inf"))
                      << ", "
                      << (res.interior_interval.hi ? value_str(*res.interior_interval.hi)
                                                   : std::string("inf"))
                      << ")\n";
        } else {
            std::cout << "interior parameter interval: empty\n";
        }
    }
}

int cmd_solve(const std::string& fixture_id, const std::string& game_path,
              const std::string& graph_str, const std::string& backend, int starts,
              std::uint64_t seed, double tol) {
    Game game;
    Graph g;
    if (!fixture_id.empty()) {
        const Fixture& fx = fixture(fixture_id);
        game = fx.game;
        g = fx.families.front().graph;
        std::cout << "fixture: " << fixture_id << "\n";
    } else {
        game = parse_game_json(read_file(game_path));
        g = load_graph(graph_str, game.format.players());
    }

    // Route to the linear pipeline when the shape allows, otherwise Newton.
    bool linear_shape = false;
    std::pair<int, int> edge{0, 0};
    if (game.format.players() == 3 && g.vertices() == 3 && g.edge_count() == 1) {
        edge = g.edges().front();
        int iso = 3 - edge.first - edge.second;
        linear_shape = static_cast<long>(game.format.d[iso]) ==
                       static_cast<long>(game.format.d[edge.first]) * game.format.d[edge.second];
    }

    if (linear_shape) {
        if (backend == "rational") {
            auto res = solve_one_edge_3player<Rat>(game, edge);
            print_one_edge_solution(res, true);
            return res.status == SolveStatus::NoSolution ? 1 : 0;
        }
        auto res = solve_one_edge_3player<double>(game, edge);
        print_one_edge_solution(res, false);
        return res.status == SolveStatus::NoSolution ? 1 : 0;
    }

    std::cout << "notice: not a determined one-edge 3-player shape; "
                 "using multi-start newton\n";
    EquationSystem sys = equation_system(game, g);
    NewtonOptions opts;
    opts.starts = starts;
    opts.seed = seed;
    opts.tol = tol;
    NewtonResult res = newton_solve(game, sys, opts);
    std::cout << "status: " << solve_status_name(res.status) << "\n";
    std::cout << "candidates: " << res.candidates.size() << "\n";
    for (size_t i = 0; i < res.candidates.size(); ++i) {
        const Candidate& c = res.candidates[i];
        std::cout << "candidate " << (i + 1) << ": sigma = " << fmt_dbl_vector(c.sigma)
                  << ", residual = " << fmt_double(c.system_residual) << "\n";
    }
    std::cout << "note: an empty candidate list is not a proof of emptiness\n";
    return res.candidates.empty() ? 1 : 0;
}

int cmd_model(const std::string& format_str, const std::string& graph_str, bool want_degree,
              bool want_dim, bool want_decompose, const std::string& matrix_path) {
    GameFormat fmt = parse_format_inline(format_str);
    Graph g = load_graph(graph_str, fmt.players());
    if (!want_degree && !want_dim && !want_decompose && matrix_path.empty())
        want_degree = want_dim = want_decompose = true;
    int exit_code = 0;
    if (want_dim) std::cout << "dimension: " << model_dim(g, fmt) << "\n";
    if (want_decompose)
        std::cout << "decomposition: " << render_decomposition(decompose(g)) << "\n";
    if (want_degree) {
        if (auto deg = try_model_degree(g, fmt)) {
            std::cout << "degree: " << deg->get_str() << "\n";
        } else {
            std::cout << "degree: not decomposable by union/join steps\n";
            exit_code = 1;
        }
    }
    if (!matrix_path.empty())
        write_file(matrix_path, render_param_matrix(parametrization_matrix(g, fmt)));
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact invariants, equations, and equilibria of games on graphical models"};
    app.require_subcommand(1);

    std::string format_str, graph_str, game_path, profile_path, out_path;
    std::string dialect = "plain", what = "system", backend = "rational", notion = "ci";
    std::string fixture_id;
    bool json = false;
    double tol = default_tol();
    int starts = 64;
    std::uint64_t seed = 0;

    auto* inv = app.add_subcommand("invariants", "Dimension/degree/emptiness for a generic game");
    inv->add_option("--format", format_str, "strategy counts, e.g. 4,2,2")->required();
    inv->add_option("--graph", graph_str, "graph JSON file or inline edges:2-3 / none / complete")
        ->required();
    inv->add_flag("--json", json, "machine-readable output");

    auto* eq = app.add_subcommand("equations", "Export defining equations");
    eq->add_option("--game", game_path, "game JSON file")->required();
    eq->add_option("--graph", graph_str)->required();
    eq->add_option("--export", dialect, "plain or m2");
    eq->add_option("--what", what, "system, spohn-p, or ci-p");
    eq->add_option("-o,--output", out_path, "output file (stdout if absent)");

    auto* ver = app.add_subcommand("verify", "Verify an equilibrium profile");
    ver->add_option("--game", game_path)->required();
    ver->add_option("--graph", graph_str)->required();
    ver->add_option("--profile", profile_path)->required();
    ver->add_option("--tol", tol, "absolute residual tolerance");
    ver->add_option("--backend", backend, "rational or double");
    ver->add_option("--notion", notion, "ci, dependency, or nash (exit-code verdict)");
    ver->add_flag("--json", json);

    auto* sol = app.add_subcommand("solve", "Solve for conditional-independence equilibria");
    sol->add_option("--fixture", fixture_id, "worked-example fixture id");
    sol->add_option("--game", game_path);
    sol->add_option("--graph", graph_str);
    sol->add_option("--backend", backend, "rational or double");
    sol->add_option("--starts", starts, "newton start count");
    sol->add_option("--seed", seed, "newton seed");
    sol->add_option("--tol", tol);

    auto* mod = app.add_subcommand("model", "Graphical-model dimension and degree");
    mod->add_option("--format", format_str)->required();
    mod->add_option("--graph", graph_str)->required();
    bool want_degree = false, want_dim = false, want_decompose = false;
    mod->add_flag("--degree", want_degree);
    mod->add_flag("--dim", want_dim);
    mod->add_flag("--decompose", want_decompose);
    mod->add_option("--matrix", out_path, "write the parametrization matrix to a file");

    auto* fix = app.add_subcommand("fixtures", "List the worked-example fixture ids");

    CLI11_PARSE(app, argc, argv);

    try {
        if (inv->parsed()) return cmd_invariants(format_str, graph_str, json);
        if (eq->parsed()) return cmd_equations(game_path, graph_str, dialect, what, out_path);
        if (ver->parsed())
            return cmd_verify(game_path, graph_str, profile_path, tol, backend, notion, json);
        if (sol->parsed()) {
            if (fixture_id.empty() && (game_path.empty() || graph_str.empty()))
                throw ParseError("solve needs --fixture or both --game and --graph");
            return cmd_solve(fixture_id, game_path, graph_str, backend, starts, seed, tol);
        }
        if (mod->parsed())
            return cmd_model(format_str, graph_str, want_degree, want_dim, want_decompose,
                             out_path);
        if (fix->parsed()) {
            for (const auto& id : fixture_ids()) std::cout << id << "\n";
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
