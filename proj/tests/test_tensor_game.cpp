#include <doctest.h>

#include "spohn/game.hpp"

using namespace spohn;

namespace {

Game prisoners_dilemma() {
    GameFormat fmt({2, 2});
    PayoffTensor x1(fmt, {Rat(0), Rat(-2), Rat(1), Rat(-1)});
    PayoffTensor x2(fmt, {Rat(0), Rat(1), Rat(-2), Rat(-1)});
    return Game(fmt, {x1, x2});
}

MixedProfile<Rat> pd_point() {
    return MixedProfile<Rat>(GameFormat({2, 2}), {Rat(3, 8), Rat(1, 8), Rat(1, 8), Rat(3, 8)});
}

}  // namespace

TEST_CASE("format invariants") {
    CHECK_THROWS_AS(GameFormat(std::vector<int>{}), FormatError);
    CHECK_THROWS_AS(GameFormat({2, 0}), FormatError);
    CHECK_THROWS_AS(GameFormat({101, 101, 101}), SizeLimitError);
    GameFormat one({1, 1, 1});
    CHECK(one.states() == 1);
}

TEST_CASE("flat index round-trip for mixed formats") {
    for (const auto& d : {std::vector<int>{2, 3, 2}, {4, 2, 2}, {1, 5}, {3, 3, 3}}) {
        GameFormat fmt(d);
        for (long i = 0; i < fmt.states(); ++i) CHECK(fmt.flat_index(fmt.unflatten(i)) == i);
    }
}

TEST_CASE("last index varies fastest") {
    GameFormat fmt({2, 3});
    CHECK(fmt.flat_index({0, 0}) == 0);
    CHECK(fmt.flat_index({0, 2}) == 2);
    CHECK(fmt.flat_index({1, 0}) == 3);
}

TEST_CASE("marginals") {
    GameFormat f3({2, 2, 2});
    MixedProfile<Rat> uniform(f3, std::vector<Rat>(8, Rat(1, 8)));
    auto m = marginal(uniform, {0});
    CHECK(m.values == std::vector<Rat>{Rat(1, 2), Rat(1, 2)});

    auto p = pd_point();
    auto m2 = marginal(p, {1});
    CHECK(m2.values == std::vector<Rat>{Rat(1, 2), Rat(1, 2)});

    auto total = marginal(p, {});
    CHECK(total.values.size() == 1);
    CHECK(total.values[0] == 1);

    // marginal(p, all players) is p itself.
    auto all = marginal(p, {0, 1});
    CHECK(all.values == p.p);
}

TEST_CASE("marginal tower property") {
    GameFormat fmt({2, 3, 2});
    Rng rng(11);
    std::vector<Rat> vals;
    Rat sum(0);
    for (long i = 0; i < fmt.states(); ++i) {
        vals.emplace_back(rng.next_in(1, 20));
        sum += vals.back();
    }
    for (auto& v : vals) v /= sum;
    MixedProfile<Rat> p(fmt, vals);

    // marginal(marginal(p, T), S) == marginal(p, S) for S within T.
    auto pT = marginal(p, {0, 2});
    MixedProfile<Rat> pT_prof(pT.format, pT.values);
    auto left = marginal(pT_prof, {0});
    auto right = marginal(p, {0});
    CHECK(left.values == right.values);
}

TEST_CASE("contract and conditional payoffs on the prisoner's dilemma") {
    Game game = prisoners_dilemma();
    auto p = pd_point();

    auto c = contract(game, 0, p);
    CHECK(c == std::vector<Rat>{Rat(-1, 4), Rat(-1, 4)});

    auto cond = conditional_payoffs(game, 0, p);
    CHECK(cond == std::vector<Rat>{Rat(-1, 2), Rat(-1, 2)});

    CHECK(expected_payoff(game, 0, p) == Rat(-1, 2));
    CHECK(expected_payoff(game, 1, p) == Rat(-1, 2));
}

TEST_CASE("contract on the coordination game") {
    GameFormat fmt({2, 2, 2});
    std::vector<Rat> ind(8, Rat(0));
    ind[fmt.flat_index({0, 0, 0})] = 1;
    ind[fmt.flat_index({1, 1, 1})] = 1;
    Game game(fmt, {PayoffTensor(fmt, ind), PayoffTensor(fmt, ind), PayoffTensor(fmt, ind)});
    MixedProfile<Rat> uniform(fmt, std::vector<Rat>(8, Rat(1, 8)));

    CHECK(contract(game, 0, uniform) == std::vector<Rat>{Rat(1, 8), Rat(1, 8)});
    CHECK(conditional_payoffs(game, 0, uniform) == std::vector<Rat>{Rat(1, 4), Rat(1, 4)});

    Game zero(fmt, {PayoffTensor::zeros(fmt), PayoffTensor::zeros(fmt), PayoffTensor::zeros(fmt)});
    CHECK(contract(zero, 1, uniform) == std::vector<Rat>(2, Rat(0)));
    CHECK(expected_payoff(zero, 2, uniform) == 0);
}

TEST_CASE("zero marginal is an error") {
    Game game = prisoners_dilemma();
    MixedProfile<Rat> p(game.format, {Rat(0), Rat(0), Rat(1, 2), Rat(1, 2)});
    CHECK_THROWS_AS(conditional_payoffs(game, 0, p), ZeroMarginalError);
}

TEST_CASE("spohn matrix minors") {
    Game game = prisoners_dilemma();
    auto p = pd_point();
    auto m = spohn_matrix(game, 0, p);
    CHECK(m.rows[0] == std::pair<Rat, Rat>(Rat(1, 2), Rat(-1, 4)));
    CHECK(m.rows[1] == std::pair<Rat, Rat>(Rat(1, 2), Rat(-1, 4)));
    CHECK(m.max_minor_abs() == 0);

    // Constant payoffs give proportional columns for any profile.
    GameFormat fmt({3, 2});
    PayoffTensor c7(fmt, std::vector<Rat>(6, Rat(7)));
    Game cgame(fmt, {c7, c7});
    Rng rng(3);
    std::vector<Rat> vals;
    Rat sum(0);
    for (int i = 0; i < 6; ++i) {
        vals.emplace_back(rng.next_in(1, 9));
        sum += vals.back();
    }
    for (auto& v : vals) v /= sum;
    MixedProfile<Rat> q(fmt, vals);
    CHECK(spohn_matrix(cgame, 0, q).max_minor_abs() == 0);

    // Scaling player k's payoffs scales column 2 and keeps minors vanishing.
    auto cond = spohn_matrix(game, 0, p);
    Game scaled = game;
    for (auto& v : scaled.payoffs[0].values) v *= 5;
    auto ms = spohn_matrix(scaled, 0, p);
    for (int i = 0; i < 2; ++i) {
        CHECK(ms.rows[i].first == cond.rows[i].first);
        CHECK(ms.rows[i].second == cond.rows[i].second * 5);
    }
    CHECK(ms.max_minor_abs() == 0);
}

TEST_CASE("random games are deterministic per seed") {
    GameFormat fmt({2, 2});
    Game a = random_game(fmt, 0, -10, 10);
    Game b = random_game(fmt, 0, -10, 10);
    for (int k = 0; k < 2; ++k) CHECK(a.payoffs[k].values == b.payoffs[k].values);

    Game c = random_game(GameFormat({2, 2, 2}), 1, -10, 10);
    for (int k = 0; k < 3; ++k) CHECK(c.payoffs[k].values.size() == 8);

    // Different seeds disagree somewhere (overwhelmingly likely).
    Game d = random_game(fmt, 2, -10, 10);
    bool differs = false;
    for (int k = 0; k < 2; ++k)
        if (a.payoffs[k].values != d.payoffs[k].values) differs = true;
    CHECK(differs);

    for (const Rat& v : a.payoffs[0].values) {
        CHECK(v >= -10);
        CHECK(v <= 10);
        CHECK(v.get_den() == 1);
    }

    // A random game generically has a nonzero Spohn minor at the uniform profile.
    GameFormat f3({2, 2, 2});
    Game r = random_game(f3, 7, -10, 10);
    MixedProfile<Rat> uniform(f3, std::vector<Rat>(8, Rat(1, 8)));
    bool nonzero = false;
    for (int k = 0; k < 3; ++k)
        if (spohn_matrix(r, k, uniform).max_minor_abs() > 0) nonzero = true;
    CHECK(nonzero);
}

TEST_CASE("single-strategy players degrade gracefully") {
    GameFormat fmt({1, 3});
    PayoffTensor x(fmt, {Rat(1), Rat(2), Rat(3)});
    Game game(fmt, {x, x});
    MixedProfile<Rat> p(fmt, {Rat(1, 6), Rat(2, 6), Rat(3, 6)});
    CHECK(contract(game, 0, p).size() == 1);
    CHECK(expected_payoff(game, 0, p) == Rat(7, 3));
    auto m = spohn_matrix(game, 0, p);
    CHECK(m.rows.size() == 1);
    CHECK(m.max_minor_abs() == 0);
}

TEST_CASE("minor vanishing is equivalent to constant conditional payoffs") {
    // At a dependency point the conditionals are constant and match the
    // expected payoff; at a generic profile neither holds.
    GameFormat fmt({2, 2});
    PayoffTensor x1(fmt, {Rat(0), Rat(-2), Rat(1), Rat(-1)});
    PayoffTensor x2(fmt, {Rat(0), Rat(1), Rat(-2), Rat(-1)});
    Game game(fmt, {x1, x2});

    MixedProfile<Rat> eq(fmt, {Rat(3, 8), Rat(1, 8), Rat(1, 8), Rat(3, 8)});
    for (int k = 0; k < 2; ++k) {
        CHECK(spohn_matrix(game, k, eq).max_minor_abs() == 0);
        auto cond = conditional_payoffs(game, k, eq);
        CHECK(cond[0] == cond[1]);
        CHECK(cond[0] == expected_payoff(game, k, eq));
    }

    MixedProfile<Rat> off(fmt, {Rat(1, 2), Rat(1, 4), Rat(1, 8), Rat(1, 8)});
    for (int k = 0; k < 2; ++k) {
        auto cond = conditional_payoffs(game, k, off);
        bool minors_vanish = spohn_matrix(game, k, off).max_minor_abs() == 0;
        CHECK(minors_vanish == (cond[0] == cond[1]));
    }

    // The equivalence is structural: minor_ab = marg_a marg_b (cond_b - cond_a).
    Rng rng(77);
    GameFormat f3({3, 2});
    Game g3 = random_game(f3, 8, -6, 6);
    std::vector<Rat> vals;
    Rat sum(0);
    for (int i = 0; i < 6; ++i) {
        vals.emplace_back(rng.next_in(1, 9));
        sum += vals.back();
    }
    for (auto& v : vals) v /= sum;
    MixedProfile<Rat> p(f3, vals);
    auto m = spohn_matrix(g3, 0, p);
    auto marg = player_marginal(f3, p.p, 0);
    auto cond = conditional_payoffs(g3, 0, p);
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            Rat minor = m.rows[a].first * m.rows[b].second - m.rows[b].first * m.rows[a].second;
            CHECK(minor == marg[a] * marg[b] * (cond[b] - cond[a]));
        }
}
