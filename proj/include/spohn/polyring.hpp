#pragma once

#include <map>
#include <string>
#include <vector>

#include "spohn/numeric.hpp"

namespace spohn {

// Exact polynomial arithmetic in ZZ[x_1..x_k], optionally truncated by the
// ideal <x_1^{D_1},...,x_k^{D_k}>. With caps present this is the Chow ring of
// a product of projective spaces P^{D_1-1} x ... x P^{D_k-1}: any term whose
// i-th exponent reaches D_i is dropped on the spot, so intermediate results
// stay bounded by prod(D_i) terms.
struct RingDesc {
    int k = 0;
    std::vector<long> caps;  // empty: no truncation; else caps.size() == k

    RingDesc() = default;
    explicit RingDesc(int vars) : k(vars) {}
    RingDesc(int vars, std::vector<long> exponent_caps) : k(vars), caps(std::move(exponent_caps)) {
        if (!caps.empty() && static_cast<int>(caps.size()) != k)
            throw FormatError("cap count must equal variable count");
        for (long c : caps)
            if (c < 1) throw FormatError("caps must be >= 1");
    }

    bool operator==(const RingDesc& o) const { return k == o.k && caps == o.caps; }
    bool operator!=(const RingDesc& o) const { return !(*this == o); }
};

using ExponentVector = std::vector<int>;

// Graded lexicographic: total degree first, then lex.
struct GrlexLess {
    bool operator()(const ExponentVector& a, const ExponentVector& b) const {
        long da = 0, db = 0;
        for (int e : a) da += e;
        for (int e : b) db += e;
        if (da != db) return da < db;
        return a < b;
    }
};

class RingPoly {
public:
    RingPoly() = default;
    explicit RingPoly(RingDesc ring) : ring_(std::move(ring)) {}

    static RingPoly constant(const RingDesc& ring, Int c);
    static RingPoly variable(const RingDesc& ring, int i, int exponent = 1);

    const RingDesc& ring() const { return ring_; }
    const std::map<ExponentVector, Int, GrlexLess>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    // Total degree of every term when the polynomial is homogeneous; -1 when
    // zero; throws when terms have mixed degrees.
    long homogeneous_degree() const;
    bool is_homogeneous() const;

    Int coefficient(const ExponentVector& e) const;

    RingPoly operator+(const RingPoly& o) const;
    RingPoly operator-(const RingPoly& o) const;
    RingPoly operator*(const RingPoly& o) const;
    RingPoly operator*(const Int& c) const;
    RingPoly pow(long e) const;

    bool operator==(const RingPoly& o) const { return ring_ == o.ring_ && terms_ == o.terms_; }
    bool operator!=(const RingPoly& o) const { return !(*this == o); }

    // Canonical text form, terms in descending graded-lex order: "8*x1*x2^3 + ...".
    std::string str() const;

    void add_term(const ExponentVector& e, const Int& c);

private:
    bool capped(const ExponentVector& e) const;

    RingDesc ring_;
    std::map<ExponentVector, Int, GrlexLess> terms_;
};

// Hyperplane-class sum x_1 + ... + x_k.
RingPoly hyperplane_sum(const RingDesc& ring);

// x_1 + ... + x_k minus x_i.
RingPoly hyperplane_sum_excluding(const RingDesc& ring, int i);

// Determinant of the l x l tridiagonal band matrix with a+b on the diagonal,
// ab above and 1 below, computed by the cofactor recursion
// det_l = (a+b) det_{l-1} - ab det_{l-2}. The closed form sum_{i=0}^{l}
// a^i b^{l-i} is recomputed independently and the two must agree.
RingPoly tridiag_det_identity(long l, const RingPoly& a, const RingPoly& b);

// (sum parts)! / prod(parts_i!) as an exact big integer.
Int multinomial(const std::vector<long>& parts);

}  // namespace spohn
