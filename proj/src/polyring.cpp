#include "spohn/polyring.hpp"

#include <sstream>

namespace spohn {

RingPoly RingPoly::constant(const RingDesc& ring, Int c) {
    RingPoly p(ring);
    p.add_term(ExponentVector(ring.k, 0), c);
    return p;
}

RingPoly RingPoly::variable(const RingDesc& ring, int i, int exponent) {
    if (i < 0 || i >= ring.k) throw FormatError("variable index out of range");
    RingPoly p(ring);
    ExponentVector e(ring.k, 0);
    e[i] = exponent;
    p.add_term(e, Int(1));
    return p;
}

bool RingPoly::capped(const ExponentVector& e) const {
    if (ring_.caps.empty()) return false;
    for (int i = 0; i < ring_.k; ++i)
        if (e[i] >= ring_.caps[i]) return true;
    return false;
}

void RingPoly::add_term(const ExponentVector& e, const Int& c) {
    if (c == 0 || capped(e)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

long RingPoly::homogeneous_degree() const {
    if (terms_.empty()) return -1;
    long deg = -1;
    for (const auto& [e, c] : terms_) {
        long d = 0;
        for (int x : e) d += x;
        if (deg < 0)
            deg = d;
        else if (d != deg)
            throw std::logic_error("polynomial is not homogeneous");
    }
    return deg;
}

bool RingPoly::is_homogeneous() const {
    long deg = -1;
    for (const auto& [e, c] : terms_) {
        long d = 0;
        for (int x : e) d += x;
        if (deg < 0)
            deg = d;
        else if (d != deg)
            return false;
    }
    return true;
}

Int RingPoly::coefficient(const ExponentVector& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Int(0) : it->second;
}

RingPoly RingPoly::operator+(const RingPoly& o) const {
    if (ring_ != o.ring_) throw FormatError("ring mismatch");
    RingPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

RingPoly RingPoly::operator-(const RingPoly& o) const {
    if (ring_ != o.ring_) throw FormatError("ring mismatch");
    RingPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

RingPoly RingPoly::operator*(const RingPoly& o) const {
    if (ring_ != o.ring_) throw FormatError("ring mismatch");
    RingPoly r(ring_);
    ExponentVector e(ring_.k);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            for (int i = 0; i < ring_.k; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

RingPoly RingPoly::operator*(const Int& c) const {
    RingPoly r(ring_);
    if (c == 0) return r;
    for (const auto& [e, coef] : terms_) r.terms_.emplace(e, coef * c);
    return r;
}

RingPoly RingPoly::pow(long e) const {
    if (e < 0) throw FormatError("negative exponent");
    RingPoly result = constant(ring_, Int(1));
    RingPoly base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = (e >>= 1) ? base * base : base;
    }
    return result;
}

std::string RingPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Descending graded-lex: iterate the map in reverse.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Int a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool any_var = false;
        std::ostringstream mono;
        for (int i = 0; i < ring_.k; ++i) {
            if (e[i] == 0) continue;
            if (any_var) mono << "*";
            any_var = true;
            mono << "x" << (i + 1);
            if (e[i] > 1) mono << "^" << e[i];
        }
        if (!any_var) {
            os << a.get_str();
        } else if (a == 1) {
            os << mono.str();
        } else {
            os << a.get_str() << "*" << mono.str();
        }
    }
    return os.str();
}

RingPoly hyperplane_sum(const RingDesc& ring) {
    RingPoly p(ring);
    for (int i = 0; i < ring.k; ++i) p = p + RingPoly::variable(ring, i);
    return p;
}

RingPoly hyperplane_sum_excluding(const RingDesc& ring, int i) {
    RingPoly p(ring);
    for (int u = 0; u < ring.k; ++u)
        if (u != i) p = p + RingPoly::variable(ring, u);
    return p;
}

RingPoly tridiag_det_identity(long l, const RingPoly& a, const RingPoly& b) {
    if (l < 1) throw FormatError("matrix size must be >= 1");
    if (a.ring() != b.ring()) throw FormatError("ring mismatch");
    const RingDesc& ring = a.ring();
    RingPoly prev = RingPoly::constant(ring, Int(1));  // det of the empty matrix
    RingPoly cur = a + b;
    RingPoly ab = a * b;
    for (long i = 2; i <= l; ++i) {
        RingPoly next = (a + b) * cur - ab * prev;
        prev = cur;
        cur = next;
    }
    RingPoly closed(ring);
    for (long i = 0; i <= l; ++i) closed = closed + a.pow(i) * b.pow(l - i);
    if (cur != closed) throw std::logic_error("tridiagonal determinant identity violated");
    return cur;
}

Int multinomial(const std::vector<long>& parts) {
    long total = 0;
    Int denom(1);
    for (long p : parts) {
        if (p < 0) throw FormatError("multinomial parts must be nonnegative");
        total += p;
        denom *= factorial(p);
    }
    return factorial(total) / denom;
}

}  // namespace spohn
