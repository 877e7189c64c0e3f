#pragma once

// Hyperbolic elements of SL2(Z) versus pairs (form, Pell solution):
//
//   gamma(Q, (t,u)) = [[(t + b u)/2, -c u], [a u, (t - b u)/2]]
//
// and the inverse invariants t = trace, u = gcd(g21, g11 - g22, -g12),
// Q = [g21, g11 - g22, -g12]/u, D = (t^2 - 4)/u^2.

#include "numeric.hpp"
#include "pell_units.hpp"
#include "quadforms.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace arith_selberg {

/// 2x2 integer matrix [[a, b], [c, d]].
struct Mat2 {
    Int a{1}, b{0}, c{0}, d{1};

    Int det() const { return a * d - b * c; }
    Int trace() const { return a + d; }
    Mat2 operator-() const { return {-a, -b, -c, -d}; }
    friend bool operator==(const Mat2&, const Mat2&) = default;
};

inline Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
}

/// Inverse of a determinant-one matrix.
inline Mat2 inverse_sl2(const Mat2& m) { return {m.d, -m.b, -m.c, m.a}; }

inline Mat2 mat_pow(Mat2 base, unsigned long long e) {
    Mat2 r;
    while (e > 0) {
        if (e & 1ull) r = r * base;
        e >>= 1ull;
        if (e) base = base * base;
    }
    return r;
}

inline std::ostream& operator<<(std::ostream& os, const Mat2& m) {
    return os << "[[" << m.a << "," << m.b << "],[" << m.c << "," << m.d << "]]";
}

/// Determinant one, |trace| > 2.
class HyperbolicMatrix {
public:
    explicit HyperbolicMatrix(Mat2 m) : m_(std::move(m)) {
        if (m_.det() != 1) throw invalid_input("matrix does not have determinant 1");
        if (abs_value(m_.trace()) <= 2) throw invalid_input("matrix is not hyperbolic (|trace| <= 2)");
    }
    const Mat2& matrix() const { return m_; }
    friend bool operator==(const HyperbolicMatrix&, const HyperbolicMatrix&) = default;

private:
    Mat2 m_;
};

struct ClassInvariant {
    Int t;
    Int u;
    QuadForm Q;
    Int D;
    friend bool operator==(const ClassInvariant&, const ClassInvariant&) = default;
};

inline HyperbolicMatrix gamma_of(const QuadForm& q, const PellSolution& s) {
    if (q.discriminant() != s.D) throw invalid_input("gamma_of: form and solution discriminants differ");
    if (s.u == 0) throw invalid_input("gamma_of: trivial Pell solution");
    if (!s.satisfies_relation()) throw invalid_input("gamma_of: (t,u) does not solve t^2 - D u^2 = 4");
    const Int bu = q.b * s.u;
    if ((s.t + bu) % 2 != 0) throw std::logic_error("gamma_of: t and b u of different parity");
    return HyperbolicMatrix(Mat2{(s.t + bu) / 2, -q.c * s.u, q.a * s.u, (s.t - bu) / 2});
}

/// Invariants of gamma, after replacing gamma by -gamma when its trace is negative.
inline ClassInvariant invariants_of(const Mat2& g) {
    if (g.det() != 1) throw invalid_input("invariants_of: determinant is not 1");
    if (abs_value(g.trace()) <= 2) throw invalid_input("invariants_of: |trace| <= 2");
    const Mat2 m = g.trace() < 0 ? -g : g;
    const Int u = gcd3(m.c, Int(m.a - m.d), Int(-m.b));
    if (u == 0) throw std::logic_error("invariants_of: scalar matrix");
    const Int t = m.trace();
    QuadForm q{m.c / u, (m.a - m.d) / u, -m.b / u};
    return {t, u, q, (t * t - 4) / (u * u)};
}

inline ClassInvariant invariants_of(const HyperbolicMatrix& g) { return invariants_of(g.matrix()); }

/// One matrix per SL2(Z)-conjugacy class with invariants (t, u): gamma_of over
/// the class representatives of D = (t^2 - 4)/u^2.
inline std::vector<HyperbolicMatrix> class_list(const Int& t, const Int& u) {
    if (t <= 2 || u <= 0) throw invalid_input("class_list: need t > 2 and u > 0");
    const Int n = t * t - 4;
    if (n % (u * u) != 0) throw invalid_input("class_list: u^2 does not divide t^2 - 4");
    const Discriminant D(n / (u * u));
    const PellSolution s{t, u, D.value()};
    std::vector<HyperbolicMatrix> out;
    for (const QuadForm& q : class_representatives(D)) out.push_back(gamma_of(q, s));
    return out;
}

}  // namespace arith_selberg
