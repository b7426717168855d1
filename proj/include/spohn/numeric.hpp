#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace spohn {

using Int = mpz_class;
using Rat = mpq_class;

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SizeLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// C(n, k) with the convention used throughout: 0 whenever k < 0 or k > n.
inline Int binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return Int(0);
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline Int factorial(long n) {
    if (n < 0) throw std::invalid_argument("factorial of negative number");
    Int r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

// Parses "a/b" or a plain integer into an exact rational.
inline Rat parse_rational(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0) throw ParseError("cannot parse rational: '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rat& q) { return q.get_str(); }
inline std::string to_string(const Int& z) { return z.get_str(); }

template <typename T>
T scalar_cast(const Rat& q);

template <>
inline Rat scalar_cast<Rat>(const Rat& q) {
    return q;
}
template <>
inline double scalar_cast<double>(const Rat& q) {
    return q.get_d();
}

template <typename T>
T scalar_abs(const T& x) {
    return x < T(0) ? T(-x) : x;
}

// Deterministic 64-bit generator (SplitMix64). The standard library engines
// are not guaranteed bit-identical across platforms; this one is.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, m), rejection-sampled so the distribution is exact.
    std::uint64_t next_below(std::uint64_t m) {
        if (m == 0) throw std::invalid_argument("next_below(0)");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % m;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % m;
    }

    long next_in(long lo, long hi) {
        if (lo > hi) throw std::invalid_argument("empty integer range");
        return lo + static_cast<long>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Uniform double in (0, 1).
    double next_unit() {
        for (;;) {
            double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
            if (u > 0.0) return u;
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace spohn
