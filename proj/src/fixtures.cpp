#include <cmath>

#include "spohn/equilibria.hpp"

namespace spohn {

namespace {

Game make_game(const GameFormat& fmt, const std::vector<std::vector<long>>& tensors) {
    std::vector<PayoffTensor> ps;
    for (const auto& t : tensors) {
        std::vector<Rat> vals(t.begin(), t.end());
        ps.emplace_back(fmt, std::move(vals));
    }
    return Game(fmt, std::move(ps));
}

template <typename T>
MixedProfile<T> profile3(const GameFormat& fmt, const std::function<T(int, int, int)>& entry) {
    std::vector<T> p;
    for (int a = 0; a < fmt.d[0]; ++a)
        for (int b = 0; b < fmt.d[1]; ++b)
            for (int c = 0; c < fmt.d[2]; ++c) p.push_back(entry(a + 1, b + 1, c + 1));
    return MixedProfile<T>(fmt, std::move(p));
}

template <typename RatFn, typename DblFn>
FixtureFamily make_family(std::string name, Graph graph, Rat lo, Rat hi, RatFn rat_fn,
                          DblFn dbl_fn) {
    FixtureFamily f;
    f.name = std::move(name);
    f.graph = std::move(graph);
    f.rational = true;
    f.lo = lo;
    f.hi = hi;
    f.at_rat = [=](const Rat& t) {
        if (!(t > lo && t < hi)) throw std::domain_error("parameter outside the printed interval");
        return rat_fn(t);
    };
    f.at_dbl = [=](double t) {
        if (!(t > lo.get_d() && t < hi.get_d()))
            throw std::domain_error("parameter outside the printed interval");
        return dbl_fn(t);
    };
    return f;
}

FixtureFamily make_point_family(std::string name, Graph graph,
                                std::function<MixedProfile<double>(double)> dbl_fn) {
    FixtureFamily f;
    f.name = std::move(name);
    f.graph = std::move(graph);
    f.rational = false;
    f.lo = Rat(0);
    f.hi = Rat(1);
    f.at_dbl = std::move(dbl_fn);
    return f;
}

// --- prisoners-dilemma ------------------------------------------------------

template <typename T>
MixedProfile<T> pd_family1(const GameFormat& fmt, T t) {
    T one(1), two(2);
    return MixedProfile<T>(fmt, {t * (one + t) / two, t * (one - t) / two, t * (one - t) / two,
                                 (one - t) * (two - t) / two});
}

template <typename T>
MixedProfile<T> pd_family2(const GameFormat& fmt, T t) {
    T one(1), three(3), eight(8);
    return MixedProfile<T>(fmt, {three * (one - t * t) / eight,
                                 (one - t) * (one - three * t) / eight,
                                 (one + t) * (one + three * t) / eight,
                                 three * (one - t * t) / eight});
}

Fixture build_prisoners_dilemma() {
    GameFormat fmt({2, 2});
    Fixture fx;
    fx.id = "prisoners-dilemma";
    fx.game = make_game(fmt, {{0, -2, 1, -1}, {0, 1, -2, -1}});
    Graph g = complete_graph(2);
    fx.families.push_back(make_family(
        "component-1", g, Rat(0), Rat(1),
        [fmt](const Rat& t) { return pd_family1<Rat>(fmt, t); },
        [fmt](double t) { return pd_family1<double>(fmt, t); }));
    fx.families.push_back(make_family(
        "component-2", g, Rat(-1, 3), Rat(1, 3),
        [fmt](const Rat& t) { return pd_family2<Rat>(fmt, t); },
        [fmt](double t) { return pd_family2<double>(fmt, t); }));
    return fx;
}

// --- coordination-2-2-2 -----------------------------------------------------

template <typename T>
MixedProfile<T> coord_g1(const GameFormat& fmt, T t) {
    // p_{i,j,j} = t/2, p_{i,j,3-j} = (1-2t)/4.
    T two(2), four(4);
    return profile3<T>(fmt, [&](int, int j2, int j3) -> T {
        if (j2 == j3) return T(t / two);
        return T((T(1) - two * t) / four);
    });
}

template <typename T>
MixedProfile<T> coord_g2(const GameFormat& fmt, T a) {
    // Slice u1 = u2 = a/2, u3 = 1/4 - a/2 of the printed two-parameter family;
    // it satisfies (u2+u1)(u2+u3) = u2/2 identically.
    T u1 = T(a / T(2)), u2 = u1, u3 = T(T(1) / T(4) - a / T(2));
    T diag = T(T(1) / T(2) - u1 - u2 - u3);
    return profile3<T>(fmt, [&](int i1, int i2, int i3) -> T {
        if (i1 == i2 && i2 == i3) return diag;
        if (i2 == i3) return u1;  // (3-i, i, i)
        if (i1 == i3) return u2;  // (i, 3-i, i)
        return u3;                // (i, i, 3-i)
    });
}

template <typename T>
MixedProfile<T> coord_g3(const GameFormat& fmt, T delta) {
    // Slice u1 = u2 = u3 = 1/8 of the printed family.
    T u = T(T(1) / T(8));
    T s = T(T(3) / T(8));  // u1+u2+u3
    auto half_shift = [&](int i) -> T { return T(delta * (T(2 * i - 3) / T(2))); };
    return profile3<T>(fmt, [&](int i1, int i2, int i3) -> T {
        if (i1 == i2 && i2 == i3) return T((T(1) / T(2) - s) * (T(1) + half_shift(i1) / s));
        if (i2 == i3) return T(u + half_shift(i2));  // (3-i, i, i)
        if (i1 == i3) return T(u + half_shift(i1));  // (i, 3-i, i)
        return T(u + half_shift(i1));                // (i, i, 3-i)
    });
}

Fixture build_coordination() {
    GameFormat fmt({2, 2, 2});
    std::vector<long> indicator;
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b)
            for (int c = 1; c <= 2; ++c) indicator.push_back(a == b && b == c ? 1 : 0);
    Fixture fx;
    fx.id = "coordination-2-2-2";
    fx.game = make_game(fmt, {indicator, indicator, indicator});

    fx.families.push_back(make_family(
        "G0", empty_graph(3), Rat(0), Rat(1),
        [fmt](const Rat&) {
            return MixedProfile<Rat>(fmt, std::vector<Rat>(8, Rat(1, 8)));
        },
        [fmt](double) { return MixedProfile<double>(fmt, std::vector<double>(8, 0.125)); }));
    fx.families.push_back(make_family(
        "G1", Graph(3, {{1, 2}}), Rat(0), Rat(1, 2),
        [fmt](const Rat& t) { return coord_g1<Rat>(fmt, t); },
        [fmt](double t) { return coord_g1<double>(fmt, t); }));
    fx.families.push_back(make_family(
        "G2", Graph(3, {{0, 1}, {1, 2}}), Rat(0), Rat(1, 2),
        [fmt](const Rat& a) { return coord_g2<Rat>(fmt, a); },
        [fmt](double a) { return coord_g2<double>(fmt, a); }));
    fx.families.push_back(make_family(
        "G3", complete_graph(3), Rat(-1, 4), Rat(1, 4),
        [fmt](const Rat& d) { return coord_g3<Rat>(fmt, d); },
        [fmt](double d) { return coord_g3<double>(fmt, d); }));
    return fx;
}

// --- el-farol ----------------------------------------------------------------

std::vector<long> el_farol_payoff(int k, double a_times_n) {
    std::vector<long> t;
    for (int i1 = 1; i1 <= 2; ++i1)
        for (int i2 = 1; i2 <= 2; ++i2)
            for (int i3 = 1; i3 <= 2; ++i3) {
                int idx[3] = {i1, i2, i3};
                int going = (i1 - 1) + (i2 - 1) + (i3 - 1);
                if (idx[k] == 1)
                    t.push_back(0);
                else
                    t.push_back(going <= a_times_n ? 1 : -1);
            }
    return t;
}

MixedProfile<double> el_farol_nash_point(const GameFormat& fmt, bool weight_on_stay) {
    // Product point with per-player marginals (1/sqrt2, 1-1/sqrt2); the
    // larger weight sits on strategy 1 (stay) for a=1/2 and on strategy 2
    // (go) for a=3/4.
    double w = 1.0 / std::sqrt(2.0);
    std::vector<double> p;
    for (int i1 = 1; i1 <= 2; ++i1)
        for (int i2 = 1; i2 <= 2; ++i2)
            for (int i3 = 1; i3 <= 2; ++i3) {
                int ones = (i1 == 1) + (i2 == 1) + (i3 == 1);
                int twos = 3 - ones;
                double v = weight_on_stay ? std::pow(w, ones) * std::pow(1 - w, twos)
                                          : std::pow(w, twos) * std::pow(1 - w, ones);
                p.push_back(v);
            }
    return MixedProfile<double>(fmt, std::move(p));
}

template <typename T>
MixedProfile<T> el_farol_half_g1(const GameFormat& fmt, T y) {
    T one(1), four(4), six(6), eight(8), two(2);
    T a = T(one - two * y);   // 1-2y
    T b = T(six * y - one);   // 6y-1
    T c = T(one - four * y);  // 1-4y
    return profile3<T>(fmt, [&](int i1, int i2, int i3) -> T {
        if (i1 == 1) {
            if (i2 == 1 && i3 == 1) return T(a / (eight * y));
            if (i2 == 2 && i3 == 2) return T(a * c / (eight * y));
            return T(a / four);  // p112, p121
        }
        if (i2 == 1 && i3 == 1) return T(b / (eight * y));
        if (i2 == 2 && i3 == 2) return T(b * c / (eight * y));
        return T(b / four);  // p212, p221
    });
}

template <typename T>
MixedProfile<T> el_farol_half_g3(const GameFormat& fmt, T u) {
    // Slice u1 = u2 = u3 = u, x = u/2 of the printed family.
    T x = T(u / T(2));
    T p111 = T(T(1) + x / T(2) - T(3) * (T(3) * u) / T(2));
    T quarter = T((u - x) / T(2));
    return profile3<T>(fmt, [&](int i1, int i2, int i3) -> T {
        int twos = (i1 == 2) + (i2 == 2) + (i3 == 2);
        if (twos == 0) return p111;
        if (twos == 3) return x;
        if (twos == 1) return u;        // p211, p121, p112
        return quarter;                 // p122, p212, p221
    });
}

// The first-player weights are 1/2 -+ x: the minors force the off-diagonal
// edge entries to equal half the weight gap, so a gap of 2x pairs with
// entries x. (The printed weights 1/2 -+ x/2 fail the defining equations.)
template <typename T>
MixedProfile<T> el_farol_34_g1(const GameFormat& fmt, T x) {
    T half = T(T(1) / T(2));
    return profile3<T>(fmt, [&](int i1, int i2, int i3) -> T {
        T w = T(half + T(2 * i1 - 3) * x);  // 1/2 - x, then 1/2 + x
        if (i2 == 1 && i3 == 1) return T((half - T(2) * x) * w);
        if (i2 == 2 && i3 == 2) return T(half * w);
        return T(x * w);
    });
}

template <typename T>
MixedProfile<T> el_farol_34_g3(const GameFormat& fmt, T u) {
    // Slice u1 = u2 = u3 = u, x = 3u of the printed family.
    T x = T(T(3) * u);
    T p111 = T(T(1) + T(3) * u - T(4) * x);
    return profile3<T>(fmt, [&](int i1, int i2, int i3) -> T {
        int twos = (i1 == 2) + (i2 == 2) + (i3 == 2);
        if (twos == 0) return p111;
        if (twos == 3) return x;
        return u;  // both the u_i entries and the x-u_i-u_j entries equal u here
    });
}

Fixture build_el_farol(bool half) {
    GameFormat fmt({2, 2, 2});
    double an = half ? 1.5 : 2.25;
    Fixture fx;
    fx.id = half ? "el-farol-1/2" : "el-farol-3/4";
    fx.game = make_game(fmt, {el_farol_payoff(0, an), el_farol_payoff(1, an), el_farol_payoff(2, an)});

    fx.families.push_back(make_point_family("G0", empty_graph(3), [fmt, half](double) {
        return el_farol_nash_point(fmt, half);
    }));
    if (half) {
        fx.families.push_back(make_family(
            "G1", Graph(3, {{1, 2}}), Rat(1, 6), Rat(1, 4),
            [fmt](const Rat& y) { return el_farol_half_g1<Rat>(fmt, y); },
            [fmt](double y) { return el_farol_half_g1<double>(fmt, y); }));
        fx.families.push_back(make_family(
            "G3", complete_graph(3), Rat(0), Rat(4, 17),
            [fmt](const Rat& u) { return el_farol_half_g3<Rat>(fmt, u); },
            [fmt](double u) { return el_farol_half_g3<double>(fmt, u); }));
    } else {
        fx.families.push_back(make_family(
            "G1", Graph(3, {{1, 2}}), Rat(0), Rat(1, 4),
            [fmt](const Rat& x) { return el_farol_34_g1<Rat>(fmt, x); },
            [fmt](double x) { return el_farol_34_g1<double>(fmt, x); }));
        fx.families.push_back(make_family(
            "G3", complete_graph(3), Rat(0), Rat(1, 9),
            [fmt](const Rat& u) { return el_farol_34_g3<Rat>(fmt, u); },
            [fmt](double u) { return el_farol_34_g3<double>(fmt, u); }));
    }
    return fx;
}

// --- cournot-fishers ----------------------------------------------------------

template <typename T>
MixedProfile<T> cournot_g1(const GameFormat& fmt, T x) {
    T one(1), two(2), three(3), six(6), half = T(T(1) / T(2));
    return profile3<T>(fmt, [&](int i1, int i2, int i3) -> T {
        if (i1 == 1) {
            if (i2 == i3) return T(x * (six * x - one));           // p111, p122
            return T((half - x) * (six * x - one));                // p112, p121
        }
        if (i2 == i3) return T(x * (two - six * x));               // p211, p222
        return T((one - two * x) * (one - three * x));             // p212, p221
    });
}

Fixture build_cournot() {
    GameFormat fmt({2, 2, 2});
    auto payoff = [&](int k) {
        std::vector<long> t;
        for (int i1 = 1; i1 <= 2; ++i1)
            for (int i2 = 1; i2 <= 2; ++i2)
                for (int i3 = 1; i3 <= 2; ++i3) {
                    int idx[3] = {i1, i2, i3};
                    long m = i1 + i2 + i3;
                    long price = std::max(0L, 6 - m);
                    t.push_back(idx[k] * price);
                }
        return t;
    };
    Fixture fx;
    fx.id = "cournot-fishers";
    fx.game = make_game(fmt, {payoff(0), payoff(1), payoff(2)});
    fx.families.push_back(make_family(
        "G0", empty_graph(3), Rat(0), Rat(1),
        [fmt](const Rat&) { return MixedProfile<Rat>(fmt, std::vector<Rat>(8, Rat(1, 8))); },
        [fmt](double) { return MixedProfile<double>(fmt, std::vector<double>(8, 0.125)); }));
    fx.families.push_back(make_family(
        "G1", Graph(3, {{1, 2}}), Rat(1, 6), Rat(1, 3),
        [fmt](const Rat& x) { return cournot_g1<Rat>(fmt, x); },
        [fmt](double x) { return cournot_g1<double>(fmt, x); }));
    return fx;
}

// --- beats-nash-4-2-2 ----------------------------------------------------------

template <typename T>
MixedProfile<T> beats_nash_family(const GameFormat& fmt, T t) {
    auto r = [](long num, long den) { return scalar_cast<T>(Rat(num, den)); };
    const T s2[4] = {r(8, 21), r(1, 7), r(1, 3), r(1, 7)};
    const T s1[4] = {r(913, 5933) - r(106095, 47464) * t, r(3290, 5933) + r(27635, 47464) * t,
                     r(1730, 5933) + r(7749, 11866) * t, t};
    std::vector<T> p;
    for (int a = 0; a < 4; ++a)
        for (int e = 0; e < 4; ++e) p.push_back(s1[a] * s2[e]);
    return MixedProfile<T>(fmt, std::move(p));
}

Fixture build_beats_nash() {
    GameFormat fmt({4, 2, 2});
    Fixture fx;
    fx.id = "beats-nash-4-2-2";
    fx.game = make_game(
        fmt, {{1, 0, 1, 15, 0, 0, 0, 20, -1, 7, 2, 11, 0, 2, 0, 18},
              {1, 0, 0, 0, 1, 3, 0, 2, 9, 1, 0, 30, 4, 4, 0, 5},
              {1, 0, 1, 0, 1, 0, 0, 10, 9, 0, 10, 3, 4, 0, 0, 5}});
    fx.families.push_back(make_family(
        "line", Graph(3, {{1, 2}}), Rat(0), Rat(664, 9645),
        [fmt](const Rat& t) { return beats_nash_family<Rat>(fmt, t); },
        [fmt](double t) { return beats_nash_family<double>(fmt, t); }));
    return fx;
}

// --- pareto-2-2-2 (the one-edge game whose CI curve dominates its Nash point) --

template <typename T>
MixedProfile<T> pareto_family(const GameFormat& fmt, T t) {
    T denom = T(T(4) * t - T(1));
    T s1[2] = {T((T(10) * t - T(3)) / denom), T((T(2) - T(6) * t) / denom)};
    T s2[4] = {t, t, T(T(1) - T(3) * t), t};  // states 11,12,21,22
    std::vector<T> p;
    for (int a = 0; a < 2; ++a)
        for (int e = 0; e < 4; ++e) p.emplace_back(s1[a] * s2[e]);
    return MixedProfile<T>(fmt, std::move(p));
}

Fixture build_pareto() {
    GameFormat fmt({2, 2, 2});
    Fixture fx;
    fx.id = "pareto-2-2-2";
    fx.game = make_game(fmt, {{0, 4, 0, 0, 3, 0, 0, 1},
                              {2, 0, 3, 1, 3, -1, 4, 0},
                              {2, 3, 0, 1, 3, 4, -1, 0}});
    fx.families.push_back(make_family(
        "third-component", Graph(3, {{1, 2}}), Rat(3, 10), Rat(1, 3),
        [fmt](const Rat& t) { return pareto_family<Rat>(fmt, t); },
        [fmt](double t) { return pareto_family<double>(fmt, t); }));
    return fx;
}

}  // namespace

const std::vector<Fixture>& fixtures() {
    static const std::vector<Fixture> all = [] {
        std::vector<Fixture> v;
        v.push_back(build_prisoners_dilemma());
        v.push_back(build_el_farol(true));
        v.push_back(build_el_farol(false));
        v.push_back(build_cournot());
        v.push_back(build_coordination());
        v.push_back(build_beats_nash());
        v.push_back(build_pareto());
        return v;
    }();
    return all;
}

const Fixture& fixture(const std::string& id) {
    for (const Fixture& f : fixtures())
        if (f.id == id) return f;
    throw ParseError("unknown fixture id: " + id);
}

std::vector<std::string> fixture_ids() {
    std::vector<std::string> ids;
    for (const Fixture& f : fixtures()) ids.push_back(f.id);
    return ids;
}

}  // namespace spohn
