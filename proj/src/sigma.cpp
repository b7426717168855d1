#include "spohn/sigma.hpp"

#include <algorithm>
#include <sstream>

namespace spohn {

namespace {

long sparse_degree(const SparseExp& e) {
    long d = 0;
    for (auto [v, x] : e) d += x;
    return d;
}

SparseExp merge_exps(const SparseExp& a, const SparseExp& b) {
    SparseExp out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first)
            out.push_back(a[i++]);
        else if (a[i].first > b[j].first)
            out.push_back(b[j++]);
        else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return out;
}

}  // namespace

bool SparseGrlexLess::operator()(const SparseExp& a, const SparseExp& b) const {
    long da = sparse_degree(a), db = sparse_degree(b);
    if (da != db) return da < db;
    // Lexicographic on the dense exponent vectors: at the first variable where
    // they differ, the one with the larger exponent is the larger monomial.
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) return false;  // a nonzero earlier -> a larger
        if (a[i].first > b[j].first) return true;
        if (a[i].second != b[j].second) return a[i].second < b[j].second;
        ++i;
        ++j;
    }
    return i == a.size() && j < b.size();
}

QPoly QPoly::constant(int nvars, Rat c) {
    QPoly p(nvars);
    p.add_term({}, c);
    return p;
}

QPoly QPoly::monomial(int nvars, SparseExp e, Rat c) {
    QPoly p(nvars);
    p.add_term(e, c);
    return p;
}

QPoly QPoly::variable(int nvars, int v) {
    return monomial(nvars, {{v, 1}}, Rat(1));
}

void QPoly::add_term(const SparseExp& e, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

QPoly QPoly::operator+(const QPoly& o) const {
    if (nvars_ != o.nvars_) throw FormatError("polynomial variable spaces differ");
    QPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

QPoly QPoly::operator-(const QPoly& o) const {
    if (nvars_ != o.nvars_) throw FormatError("polynomial variable spaces differ");
    QPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

QPoly QPoly::operator-() const {
    QPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

QPoly QPoly::operator*(const QPoly& o) const {
    if (nvars_ != o.nvars_) throw FormatError("polynomial variable spaces differ");
    QPoly r(nvars_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) r.add_term(merge_exps(ea, eb), ca * cb);
    return r;
}

QPoly QPoly::operator*(const Rat& c) const {
    QPoly r(nvars_);
    if (c == 0) return r;
    for (const auto& [e, coef] : terms_) r.terms_.emplace(e, coef * c);
    return r;
}

QPoly QPoly::derivative(int v) const {
    QPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i].first != v) continue;
            SparseExp de = e;
            Rat coef = c * e[i].second;
            if (de[i].second == 1)
                de.erase(de.begin() + static_cast<long>(i));
            else
                de[i].second -= 1;
            r.add_term(de, coef);
            break;
        }
    }
    return r;
}

QPoly QPoly::substitute(const std::map<int, Rat>& values) const {
    QPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        Rat coef = c;
        SparseExp rest;
        for (auto [v, exp] : e) {
            auto it = values.find(v);
            if (it == values.end()) {
                rest.emplace_back(v, exp);
            } else {
                for (int i = 0; i < exp; ++i) coef *= it->second;
            }
        }
        r.add_term(rest, coef);
    }
    return r;
}

std::optional<QPoly> QPoly::divide_exact(const QPoly& num, const QPoly& den) {
    if (num.nvars_ != den.nvars_) throw FormatError("polynomial variable spaces differ");
    if (den.is_zero()) throw FormatError("division by the zero polynomial");
    QPoly rem = num;
    QPoly quo(num.nvars_);
    const auto& lead_den = *den.terms_.rbegin();
    while (!rem.is_zero()) {
        const auto& lead_rem = *rem.terms_.rbegin();
        // Monomial divide lead_rem / lead_den.
        SparseExp q;
        size_t i = 0;
        bool divisible = true;
        for (auto [v, exp] : lead_den.first) {
            while (i < lead_rem.first.size() && lead_rem.first[i].first < v) {
                q.push_back(lead_rem.first[i]);
                ++i;
            }
            if (i == lead_rem.first.size() || lead_rem.first[i].first != v ||
                lead_rem.first[i].second < exp) {
                divisible = false;
                break;
            }
            if (lead_rem.first[i].second > exp) q.emplace_back(v, lead_rem.first[i].second - exp);
            ++i;
        }
        if (!divisible) return std::nullopt;
        while (i < lead_rem.first.size()) q.push_back(lead_rem.first[i++]);
        Rat coef = lead_rem.second / lead_den.second;
        QPoly t = QPoly::monomial(num.nvars_, q, coef);
        quo = quo + t;
        rem = rem - t * den;
    }
    return quo;
}

std::string QPoly::str(const std::function<std::string(int)>& var_name) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        Rat c = it->second;
        if (first) {
            if (c < 0) {
                os << "-";
                c = -c;
            }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        std::ostringstream mono;
        bool any = false;
        for (auto [v, exp] : it->first) {
            if (any) mono << "*";
            any = true;
            mono << var_name(v);
            if (exp > 1) mono << "^" << exp;
        }
        if (!any) {
            os << c.get_str();
        } else if (c == 1) {
            os << mono.str();
        } else {
            os << c.get_str() << "*" << mono.str();
        }
    }
    return os.str();
}

SigmaLayout::SigmaLayout(const Graph& g, const GameFormat& format) {
    cliques = maximal_cliques(g);
    for (const auto& c : cliques) {
        std::vector<int> d;
        for (int v : c) d.push_back(format.d[v]);
        clique_formats.emplace_back(d);
        offsets.push_back(total_vars);
        long states = clique_formats.back().states();
        if (total_vars + states > 100000) throw SizeLimitError("too many clique coordinates");
        total_vars += static_cast<int>(states);
    }
}

int SigmaLayout::clique_of(int var) const {
    for (int c = clique_count(); c-- > 0;)
        if (var >= offsets[c]) return c;
    throw FormatError("variable out of range");
}

std::string SigmaLayout::var_name(int var) const {
    int c = clique_of(var);
    std::vector<int> st = clique_formats[c].unflatten(var - offsets[c]);
    std::string digits;
    for (int x : st) digits += std::to_string(x + 1);
    return "s" + std::to_string(c + 1) + "_" + digits;
}

long SigmaLayout::clique_state_of(int c, const std::vector<int>& global_state) const {
    long idx = 0;
    for (size_t i = 0; i < cliques[c].size(); ++i)
        idx = idx * clique_formats[c].d[i] + global_state[cliques[c][i]];
    return idx;
}

std::vector<SparseExp> monomial_map(const SigmaLayout& layout, const GameFormat& format) {
    std::vector<SparseExp> map;
    map.reserve(static_cast<size_t>(format.states()));
    std::vector<int> state(format.players(), 0);
    do {
        SparseExp e;
        for (int c = 0; c < layout.clique_count(); ++c) {
            int v = layout.var(c, layout.clique_state_of(c, state));
            e.emplace_back(v, 1);
        }
        std::sort(e.begin(), e.end());
        map.push_back(std::move(e));
    } while (format.next_state(state));
    return map;
}

PlayerContext player_context(const Graph& g, const SigmaLayout& layout, int k) {
    PlayerContext ctx;
    ctx.player = k;
    for (const auto& comp : g.connected_components())
        if (std::find(comp.begin(), comp.end(), k) != comp.end()) ctx.component = comp;
    ctx.isolated = ctx.component.size() == 1;
    for (int c = 0; c < layout.clique_count(); ++c) {
        bool inside = true;
        for (int v : layout.cliques[c])
            if (std::find(ctx.component.begin(), ctx.component.end(), v) == ctx.component.end())
                inside = false;
        if (inside) ctx.component_cliques.push_back(c);
    }
    return ctx;
}

namespace {

// Iterates over joint states of `support` (ascending vertex list) with some
// coordinates pinned, calling fn with the full global state (unpinned
// non-support coordinates stay 0 and must not be read by fn).
void for_each_state(const GameFormat& format, const std::vector<int>& support,
                    const std::vector<std::pair<int, int>>& pinned,
                    const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> free_vs;
    for (int v : support) {
        bool is_pinned = false;
        for (auto [pv, pa] : pinned)
            if (pv == v) is_pinned = true;
        if (!is_pinned) free_vs.push_back(v);
    }
    std::vector<int> state(format.players(), 0);
    for (auto [pv, pa] : pinned) state[pv] = pa;
    std::vector<int> idx(free_vs.size(), 0);
    for (;;) {
        for (size_t i = 0; i < free_vs.size(); ++i) state[free_vs[i]] = idx[i];
        fn(state);
        size_t i = free_vs.size();
        bool carried = false;
        while (i-- > 0) {
            if (++idx[i] < format.d[free_vs[i]]) {
                carried = true;
                break;
            }
            idx[i] = 0;
        }
        if (!carried) return;
    }
}

QPoly clique_monomial(const SigmaLayout& layout, const std::vector<int>& clique_ids,
                      const std::vector<int>& global_state) {
    SparseExp e;
    for (int c : clique_ids)
        e.emplace_back(layout.var(c, layout.clique_state_of(c, global_state)), 1);
    std::sort(e.begin(), e.end());
    return QPoly::monomial(layout.total_vars, e, Rat(1));
}

}  // namespace

QPoly L_poly(const Graph& g, const GameFormat& format, const SigmaLayout& layout, int k, int a) {
    PlayerContext ctx = player_context(g, layout, k);
    if (ctx.isolated) throw IsolatedVertexError("player " + std::to_string(k + 1) + " is isolated");
    QPoly L(layout.total_vars);
    for_each_state(format, ctx.component, {{k, a}}, [&](const std::vector<int>& state) {
        L = L + clique_monomial(layout, ctx.component_cliques, state);
    });
    return L;
}

PullbackMatrix pullback_matrix(const Game& game, const Graph& g, const SigmaLayout& layout, int k) {
    const GameFormat& format = game.format;
    PlayerContext ctx = player_context(g, layout, k);

    PullbackMatrix m;
    m.player = k;
    m.isolated = ctx.isolated;

    std::vector<int> complement_cliques;
    for (int c = 0; c < layout.clique_count(); ++c)
        if (std::find(ctx.component_cliques.begin(), ctx.component_cliques.end(), c) ==
            ctx.component_cliques.end())
            complement_cliques.push_back(c);
    std::vector<int> complement;
    for (int v = 0; v < format.players(); ++v)
        if (std::find(ctx.component.begin(), ctx.component.end(), v) == ctx.component.end())
            complement.push_back(v);

    m.column_factor = QPoly(layout.total_vars);
    if (complement.empty()) {
        m.column_factor = QPoly::constant(layout.total_vars, Rat(1));
    } else {
        for_each_state(format, complement, {}, [&](const std::vector<int>& state) {
            m.column_factor = m.column_factor + clique_monomial(layout, complement_cliques, state);
        });
    }

    auto mono = monomial_map(layout, format);
    const PayoffTensor& X = game.payoffs[k];

    for (int a = 0; a < format.d[k]; ++a) {
        QPoly col1(layout.total_vars);
        QPoly col2(layout.total_vars);
        if (ctx.isolated) {
            col1 = QPoly::constant(layout.total_vars, Rat(1));
            // Sum over complement states of X * complement monomial: divide
            // the global monomial by sigma^{(k)}_a.
            for_each_state(format, complement, {{k, a}}, [&](const std::vector<int>& state) {
                col2 = col2 + clique_monomial(layout, complement_cliques, state) * X.at(state);
            });
            int own_clique = ctx.component_cliques[0];
            m.row_factors.push_back(
                QPoly::variable(layout.total_vars, layout.var(own_clique, a)));
        } else {
            col1 = L_poly(g, format, layout, k, a);
            std::vector<int> everyone(static_cast<size_t>(format.players()));
            for (int v = 0; v < format.players(); ++v) everyone[v] = v;
            for_each_state(format, everyone, {{k, a}}, [&](const std::vector<int>& state) {
                long flat = format.flat_index(state);
                col2 = col2 + QPoly::monomial(layout.total_vars, mono[flat], X.values[flat]);
            });
            m.row_factors.push_back(QPoly::constant(layout.total_vars, Rat(1)));
        }
        m.col_marginal.push_back(std::move(col1));
        m.col_payoff.push_back(std::move(col2));
    }
    return m;
}

std::vector<int> expected_multidegree(const PlayerContext& ctx, const SigmaLayout& layout) {
    std::vector<int> u(static_cast<size_t>(layout.clique_count()), 1);
    for (int c : ctx.component_cliques) u[c] = ctx.isolated ? 0 : 2;
    return u;
}

bool SigmaPoly::check_multihomogeneous(const SigmaLayout& layout) const {
    for (const auto& [e, c] : poly.terms()) {
        std::vector<int> deg(static_cast<size_t>(layout.clique_count()), 0);
        for (auto [v, exp] : e) deg[layout.clique_of(v)] += exp;
        if (deg != multidegree) return false;
    }
    return true;
}

EquationSystem equation_system(const Game& game, const Graph& g) {
    EquationSystem sys;
    sys.format = game.format;
    sys.graph = g;
    sys.layout = SigmaLayout(g, game.format);
    sys.cluster = is_cluster_graph(g);

    for (int k = 0; k < game.format.players(); ++k) {
        PlayerContext ctx = player_context(g, sys.layout, k);
        PullbackMatrix m = pullback_matrix(game, g, sys.layout, k);
        std::vector<int> u = expected_multidegree(ctx, sys.layout);
        auto push = [&](int a, int b) {
            SigmaPoly sp;
            sp.poly = m.minor(a, b);
            sp.multidegree = u;
            sp.player = k;
            sp.row_a = a;
            sp.row_b = b;
            sys.generators.push_back(std::move(sp));
        };
        if (ctx.isolated) {
            // First column is constant 1; minors anchored at row 1 span the rest.
            for (int b = 1; b < game.format.d[k]; ++b) push(0, b);
        } else {
            for (int a = 0; a < game.format.d[k]; ++a)
                for (int b = a + 1; b < game.format.d[k]; ++b) push(a, b);
        }
    }
    return sys;
}

std::string p_var_name(const GameFormat& format, int flat) {
    std::vector<int> st = format.unflatten(flat);
    std::string digits;
    for (int x : st) digits += std::to_string(x + 1);
    return "p_" + digits;
}

std::vector<PPoly> spohn_minors_p(const Game& game) {
    const GameFormat& format = game.format;
    if (format.states() > 4096) throw SizeLimitError("too many states for symbolic minors");
    int nv = static_cast<int>(format.states());
    std::vector<PPoly> out;
    for (int k = 0; k < format.players(); ++k) {
        std::vector<QPoly> marg(static_cast<size_t>(format.d[k]), QPoly(nv));
        std::vector<QPoly> contr(static_cast<size_t>(format.d[k]), QPoly(nv));
        std::vector<int> state(format.players(), 0);
        long flat = 0;
        do {
            marg[state[k]].add_term({{static_cast<int>(flat), 1}}, Rat(1));
            contr[state[k]].add_term({{static_cast<int>(flat), 1}}, game.payoffs[k].values[flat]);
            ++flat;
        } while (format.next_state(state));
        for (int a = 0; a < format.d[k]; ++a)
            for (int b = a + 1; b < format.d[k]; ++b) {
                PPoly pp;
                pp.poly = marg[a] * contr[b] - marg[b] * contr[a];
                pp.label = "spohn_k" + std::to_string(k + 1) + "_" + std::to_string(a + 1) + "_" +
                           std::to_string(b + 1);
                out.push_back(std::move(pp));
            }
    }
    return out;
}

std::vector<PPoly> ci_minors_p(const Graph& g, const GameFormat& format) {
    if (format.states() > 4096) throw SizeLimitError("too many states for symbolic minors");
    if (g.vertices() != format.players())
        throw FormatError("graph vertex count does not match player count");
    int nv = static_cast<int>(format.states());
    std::vector<PPoly> out;
    for (const auto& st : pairwise_markov_statements(g)) {
        const int i = st.i, j = st.j;
        // Enumerate the conditioning states.
        std::vector<int> state(format.players(), 0);
        std::vector<int> rest = st.rest;
        std::vector<int> idx(rest.size(), 0);
        for (;;) {
            for (size_t r = 0; r < rest.size(); ++r) state[rest[r]] = idx[r];
            for (int ai = 0; ai < format.d[i]; ++ai)
                for (int bi = ai + 1; bi < format.d[i]; ++bi)
                    for (int aj = 0; aj < format.d[j]; ++aj)
                        for (int bj = aj + 1; bj < format.d[j]; ++bj) {
                            auto flat_of = [&](int si, int sj) {
                                std::vector<int> s = state;
                                s[i] = si;
                                s[j] = sj;
                                return static_cast<int>(format.flat_index(s));
                            };
                            QPoly q(nv);
                            SparseExp e1{{flat_of(ai, aj), 1}};
                            SparseExp e2{{flat_of(bi, bj), 1}};
                            SparseExp e3{{flat_of(ai, bj), 1}};
                            SparseExp e4{{flat_of(bi, aj), 1}};
                            q.add_term(merge_exps(e1, e2), Rat(1));
                            q.add_term(merge_exps(e3, e4), Rat(-1));
                            PPoly pp;
                            pp.poly = std::move(q);
                            pp.label = "ci_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
                            out.push_back(std::move(pp));
                        }
            size_t r = rest.size();
            bool carried = false;
            while (r-- > 0) {
                if (++idx[r] < format.d[rest[r]]) {
                    carried = true;
                    break;
                }
                idx[r] = 0;
            }
            if (!carried) break;
        }
    }
    return out;
}

namespace {

std::string join_polys(const std::vector<std::string>& lines, ExportDialect dialect,
                       const std::vector<std::string>& var_names, const std::string& header) {
    std::ostringstream os;
    if (dialect == ExportDialect::Plain) {
        for (const auto& l : lines) os << l << '\n';
        return os.str();
    }
    if (!header.empty()) os << "-- " << header << "\n";
    os << "R = QQ[";
    for (size_t i = 0; i < var_names.size(); ++i) {
        if (i) os << ", ";
        os << var_names[i];
    }
    os << "];\n";
    if (lines.empty()) {
        os << "I = ideal(0_R);\n";
        return os.str();
    }
    os << "I = ideal(\n";
    for (size_t i = 0; i < lines.size(); ++i) {
        os << "  " << lines[i];
        os << (i + 1 < lines.size() ? ",\n" : "\n");
    }
    os << ");\n";
    return os.str();
}

}  // namespace

std::string export_ideal(const EquationSystem& system, ExportDialect dialect) {
    std::vector<std::string> lines;
    auto namer = [&](int v) { return system.layout.var_name(v); };
    for (const auto& g : system.generators) lines.push_back(g.poly.str(namer));
    std::vector<std::string> vars;
    for (int v = 0; v < system.layout.total_vars; ++v) vars.push_back(system.layout.var_name(v));
    std::string header =
        system.cluster
            ? "Nash CI generators; generic cluster games need no further saturation"
            : "pre-saturation generators; components inside coordinate or total-sum "
              "hyperplanes may remain";
    return join_polys(lines, dialect, vars, header);
}

std::string export_ideal(const std::vector<PPoly>& polys, const GameFormat& format,
                         ExportDialect dialect) {
    std::vector<std::string> lines;
    auto namer = [&](int v) { return p_var_name(format, v); };
    for (const auto& pp : polys) lines.push_back(pp.poly.str(namer));
    std::vector<std::string> vars;
    for (int v = 0; v < format.states(); ++v) vars.push_back(p_var_name(format, v));
    return join_polys(lines, dialect, vars, "");
}

std::vector<Rat> sigma_point_from_profile(const SigmaLayout& layout,
                                          const MixedProfile<Rat>& profile) {
    std::vector<Rat> sigma(static_cast<size_t>(layout.total_vars), Rat(0));
    std::vector<int> seen;  // union of processed cliques
    for (int c = 0; c < layout.clique_count(); ++c) {
        const auto& clique = layout.cliques[c];
        std::vector<int> overlap;
        for (int v : clique)
            if (std::find(seen.begin(), seen.end(), v) != seen.end()) overlap.push_back(v);

        // Running-intersection check: the overlap must sit inside one earlier clique.
        if (!overlap.empty()) {
            bool ok = false;
            for (int prev = 0; prev < c; ++prev) {
                bool contained = true;
                for (int v : overlap)
                    if (std::find(layout.cliques[prev].begin(), layout.cliques[prev].end(), v) ==
                        layout.cliques[prev].end())
                        contained = false;
                if (contained) ok = true;
            }
            if (!ok)
                throw FormatError(
                    "clique ordering violates the running-intersection property; "
                    "cannot factorize the profile");
        }

        Tensor<Rat> marg_c = marginal(profile, clique);
        Tensor<Rat> marg_o = marginal(profile, overlap);
        std::vector<int> st(clique.size(), 0);
        long idx = 0;
        do {
            Rat denom(1);
            if (!overlap.empty()) {
                std::vector<int> ost;
                for (int v : overlap) {
                    size_t pos = std::find(clique.begin(), clique.end(), v) - clique.begin();
                    ost.push_back(st[pos]);
                }
                denom = marg_o.at(ost);
            }
            if (denom == 0) throw FormatError("profile has a vanishing marginal; cannot factorize");
            sigma[layout.var(c, idx)] = marg_c.values[idx] / denom;
            ++idx;
        } while (layout.clique_formats[c].next_state(st));
        for (int v : clique)
            if (std::find(seen.begin(), seen.end(), v) == seen.end()) seen.push_back(v);
    }
    return sigma;
}

}  // namespace spohn
