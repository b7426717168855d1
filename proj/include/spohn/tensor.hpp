#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "spohn/numeric.hpp"

namespace spohn {

// The flat storage order is fixed once and for all: states (j_1,...,j_n) are
// enumerated lexicographically with the LAST index varying fastest, so
// flat(j) = ((j_1*d_2 + j_2)*d_3 + j_3)*... Indices are 0-based in storage
// and 1-based in every user-facing surface; the conversion lives here.
struct GameFormat {
    std::vector<int> d;

    GameFormat() = default;
    explicit GameFormat(std::vector<int> strategy_counts) : d(std::move(strategy_counts)) {
        if (d.empty()) throw FormatError("game format needs at least one player");
        long total = 1;
        for (int di : d) {
            if (di < 1) throw FormatError("strategy counts must be >= 1");
            total *= di;
            if (total > kMaxStates) throw SizeLimitError("total state count exceeds limit");
        }
    }

    static constexpr long kMaxStates = 1000000;

    int players() const { return static_cast<int>(d.size()); }

    long states() const {
        long total = 1;
        for (int di : d) total *= di;
        return total;
    }

    long flat_index(const std::vector<int>& state) const {
        long idx = 0;
        for (size_t i = 0; i < d.size(); ++i) idx = idx * d[i] + state[i];
        return idx;
    }

    std::vector<int> unflatten(long idx) const {
        std::vector<int> state(d.size());
        for (size_t i = d.size(); i-- > 0;) {
            state[i] = static_cast<int>(idx % d[i]);
            idx /= d[i];
        }
        return state;
    }

    // Advances a 0-based multi-index in flat order; returns false after the last state.
    bool next_state(std::vector<int>& state) const {
        for (size_t i = d.size(); i-- > 0;) {
            if (++state[i] < d[i]) return true;
            state[i] = 0;
        }
        return false;
    }

    bool operator==(const GameFormat& o) const { return d == o.d; }
    bool operator!=(const GameFormat& o) const { return !(*this == o); }
};

// 1-based pretty form "j1,j2,...,jn" used by exports and the CLI.
inline std::string state_label(const std::vector<int>& state) {
    std::string s;
    for (size_t i = 0; i < state.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(state[i] + 1);
    }
    return s;
}

template <typename T>
struct Tensor {
    GameFormat format;
    std::vector<T> values;

    Tensor() = default;
    Tensor(GameFormat fmt, std::vector<T> vals) : format(std::move(fmt)), values(std::move(vals)) {
        if (static_cast<long>(values.size()) != format.states())
            throw FormatError("tensor value count does not match format");
    }

    static Tensor zeros(const GameFormat& fmt) {
        return Tensor(fmt, std::vector<T>(static_cast<size_t>(fmt.states()), T(0)));
    }

    const T& at(const std::vector<int>& state) const { return values[format.flat_index(state)]; }
    T& at(const std::vector<int>& state) { return values[format.flat_index(state)]; }
};

using PayoffTensor = Tensor<Rat>;

struct Game {
    GameFormat format;
    std::vector<PayoffTensor> payoffs;  // one tensor per player

    Game() = default;
    Game(GameFormat fmt, std::vector<PayoffTensor> tensors)
        : format(std::move(fmt)), payoffs(std::move(tensors)) {
        if (static_cast<int>(payoffs.size()) != format.players())
            throw FormatError("need one payoff tensor per player");
        for (const auto& t : payoffs)
            if (t.format != format) throw FormatError("payoff tensor format mismatch");
    }

    template <typename T>
    Tensor<T> payoff_as(int player) const {
        const auto& src = payoffs[player];
        std::vector<T> vals;
        vals.reserve(src.values.size());
        for (const Rat& q : src.values) vals.push_back(scalar_cast<T>(q));
        return Tensor<T>(format, std::move(vals));
    }
};

template <typename T>
struct MixedProfile {
    GameFormat format;
    std::vector<T> p;

    MixedProfile() = default;
    MixedProfile(GameFormat fmt, std::vector<T> probs) : format(std::move(fmt)), p(std::move(probs)) {
        if (static_cast<long>(p.size()) != format.states())
            throw FormatError("profile length does not match format");
    }

    T total_mass() const {
        T s(0);
        for (const T& x : p) s += x;
        return s;
    }

    bool totally_mixed() const {
        return std::all_of(p.begin(), p.end(), [](const T& x) { return x > T(0); });
    }
};

template <typename T>
MixedProfile<T> profile_cast(const MixedProfile<Rat>& src) {
    std::vector<T> vals;
    vals.reserve(src.p.size());
    for (const Rat& q : src.p) vals.push_back(scalar_cast<T>(q));
    return MixedProfile<T>(src.format, std::move(vals));
}

// Marginal over the players in S (0-based, any order; sorted internally).
// The result is a tensor over the sub-format (d_i)_{i in S} in increasing
// player order, same flat convention. S empty yields the 1-entry total mass.
template <typename T>
Tensor<T> marginal(const GameFormat& format, const std::vector<T>& p, std::vector<int> S) {
    std::sort(S.begin(), S.end());
    for (size_t i = 0; i + 1 < S.size(); ++i)
        if (S[i] == S[i + 1]) throw FormatError("marginal: repeated player");
    for (int v : S)
        if (v < 0 || v >= format.players()) throw FormatError("marginal: player out of range");

    std::vector<int> sub_d;
    for (int v : S) sub_d.push_back(format.d[v]);
    GameFormat sub = S.empty() ? GameFormat({1}) : GameFormat(sub_d);
    std::vector<T> out(static_cast<size_t>(S.empty() ? 1 : sub.states()), T(0));

    std::vector<int> state(format.players(), 0);
    long flat = 0;
    do {
        long sub_idx = 0;
        for (size_t i = 0; i < S.size(); ++i) sub_idx = sub_idx * format.d[S[i]] + state[S[i]];
        out[sub_idx] += p[flat];
        ++flat;
    } while (format.next_state(state));

    if (S.empty()) return Tensor<T>(GameFormat({1}), std::move(out));
    return Tensor<T>(sub, std::move(out));
}

template <typename T>
Tensor<T> marginal(const MixedProfile<T>& prof, const std::vector<int>& S) {
    return marginal(prof.format, prof.p, S);
}

// Per-player marginal vector p_{+...+i+...+} for i in [d_k].
template <typename T>
std::vector<T> player_marginal(const GameFormat& format, const std::vector<T>& p, int k) {
    std::vector<T> m(static_cast<size_t>(format.d[k]), T(0));
    std::vector<int> state(format.players(), 0);
    long flat = 0;
    do {
        m[state[k]] += p[flat];
        ++flat;
    } while (format.next_state(state));
    return m;
}

}  // namespace spohn
