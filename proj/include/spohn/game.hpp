#pragma once

#include <utility>
#include <vector>

#include "spohn/tensor.hpp"

namespace spohn {

struct ZeroMarginalError : std::runtime_error {
    int player;
    int strategy;  // 1-based in the message, 0-based in the field
    ZeroMarginalError(int k, int i)
        : std::runtime_error("conditional payoff undefined: player " + std::to_string(k + 1) +
                             " plays strategy " + std::to_string(i + 1) +
                             " with probability zero"),
          player(k),
          strategy(i) {}
};

// (p ._k X)_i = sum over all states with k-th index i of X_j * p_j.
template <typename T>
std::vector<T> contract(const Game& game, int k, const MixedProfile<T>& prof) {
    if (game.format != prof.format) throw FormatError("contract: format mismatch");
    Tensor<T> X = game.payoff_as<T>(k);
    std::vector<T> out(static_cast<size_t>(game.format.d[k]), T(0));
    std::vector<int> state(game.format.players(), 0);
    long flat = 0;
    do {
        out[state[k]] += X.values[flat] * prof.p[flat];
        ++flat;
    } while (game.format.next_state(state));
    return out;
}

template <typename T>
std::vector<T> conditional_payoffs(const Game& game, int k, const MixedProfile<T>& prof) {
    std::vector<T> num = contract(game, k, prof);
    std::vector<T> den = player_marginal(prof.format, prof.p, k);
    std::vector<T> out(num.size());
    for (size_t i = 0; i < num.size(); ++i) {
        if (den[i] == T(0)) throw ZeroMarginalError(k, static_cast<int>(i));
        out[i] = num[i] / den[i];
    }
    return out;
}

template <typename T>
T expected_payoff(const Game& game, int k, const MixedProfile<T>& prof) {
    if (game.format != prof.format) throw FormatError("expected_payoff: format mismatch");
    Tensor<T> X = game.payoff_as<T>(k);
    T s(0);
    for (size_t j = 0; j < prof.p.size(); ++j) s += X.values[j] * prof.p[j];
    return s;
}

// Rows (p_{+..i..+}, (p ._k X)_i); the rank-1 locus over all players is the
// Spohn variety.
template <typename T>
struct SpohnMatrix {
    int player;
    std::vector<std::pair<T, T>> rows;

    // Largest |2x2 minor| over all row pairs.
    T max_minor_abs() const {
        T best(0);
        for (size_t a = 0; a < rows.size(); ++a)
            for (size_t b = a + 1; b < rows.size(); ++b) {
                T m = rows[a].first * rows[b].second - rows[b].first * rows[a].second;
                m = scalar_abs(m);
                if (m > best) best = m;
            }
        return best;
    }
};

template <typename T>
SpohnMatrix<T> spohn_matrix(const Game& game, int k, const MixedProfile<T>& prof) {
    std::vector<T> marg = player_marginal(prof.format, prof.p, k);
    std::vector<T> contr = contract(game, k, prof);
    SpohnMatrix<T> m;
    m.player = k;
    for (size_t i = 0; i < marg.size(); ++i) m.rows.emplace_back(marg[i], contr[i]);
    return m;
}

inline Game random_game(const GameFormat& format, std::uint64_t seed, long lo, long hi) {
    Rng rng(seed);
    std::vector<PayoffTensor> tensors;
    for (int k = 0; k < format.players(); ++k) {
        std::vector<Rat> vals;
        vals.reserve(static_cast<size_t>(format.states()));
        for (long j = 0; j < format.states(); ++j) vals.emplace_back(rng.next_in(lo, hi));
        tensors.emplace_back(format, std::move(vals));
    }
    return Game(format, std::move(tensors));
}

}  // namespace spohn
