#pragma once

// Solutions of t^2 - D u^2 = 4, their group law, fundamental units and the
// enumeration of discriminants ordered by the size of the fundamental unit.

#include "numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace arith_selberg {

/// true iff n > 0, n is not a perfect square and n = 0, 1 (mod 4).
template <class I>
bool is_discriminant(const I& n) {
    if (n <= 0) return false;
    I r = floor_mod(n, I(4));
    if (r != 0 && r != 1) return false;
    return !is_square(n);
}

/// A validated positive non-square discriminant.
class Discriminant {
public:
    explicit Discriminant(Int value) : value_(std::move(value)) {
        if (!is_discriminant(value_))
            throw invalid_input("not a discriminant (positive, non-square, 0 or 1 mod 4): " +
                                value_.str());
    }
    explicit Discriminant(long long value) : Discriminant(Int(value)) {}

    const Int& value() const { return value_; }
    friend bool operator==(const Discriminant& a, const Discriminant& b) = default;
    friend bool operator<(const Discriminant& a, const Discriminant& b) { return a.value_ < b.value_; }

private:
    Int value_;
};

/// An element (t, u) of the solution group of t^2 - D u^2 = 4.
struct PellSolution {
    Int t;
    Int u;
    Int D;

    bool is_identity() const { return t == 2 && u == 0; }
    bool satisfies_relation() const { return t * t - D * u * u == 4; }
    friend bool operator==(const PellSolution&, const PellSolution&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const PellSolution& s) {
    return os << "(" << s.t << "," << s.u << ")";
}

inline PellSolution pell_identity(const Discriminant& D) { return {Int(2), Int(0), D.value()}; }

/// The group law (t1,u1)*(t2,u2) = ((t1 t2 + u1 u2 D)/2, (t1 u2 + t2 u1)/2).
inline PellSolution pell_mul(const PellSolution& s1, const PellSolution& s2) {
    if (s1.D != s2.D) throw invalid_input("pell_mul: discriminants differ");
    Int tt = s1.t * s2.t + s1.u * s2.u * s1.D;
    Int uu = s1.t * s2.u + s2.t * s1.u;
    if (tt % 2 != 0 || uu % 2 != 0)
        throw std::logic_error("pell_mul: product law produced a half-integer");
    return {tt / 2, uu / 2, s1.D};
}

inline PellSolution pell_pow(const PellSolution& s, unsigned long long j) {
    PellSolution result{Int(2), Int(0), s.D};
    PellSolution base = s;
    while (j > 0) {
        if (j & 1ull) result = pell_mul(result, base);
        j >>= 1ull;
        if (j) base = pell_mul(base, base);
    }
    return result;
}

/// Fundamental solution (t1, u1), t1 > 2, u1 > 0, of t^2 - D u^2 = 4.
///
/// Expands the reduced quadratic irrational w = (b + sqrt D)/2, with b the
/// largest integer below sqrt D of the parity of D, into its purely periodic
/// continued fraction. With period k and convergent denominators q_i the
/// unit q_{k-1} w + q_{k-2} generates the units of the order of discriminant
/// D and has norm (-1)^k; for odd k it is squared.
inline PellSolution fundamental_solution(const Discriminant& disc) {
    const Int& D = disc.value();
    const Int s = isqrt(D);
    Int b = s;
    if (floor_mod(b - D, Int(2)) != 0) b -= 1;

    const Int P0 = b, Q0 = 2;
    Int P = P0, Q = Q0;
    Int q_prev2 = 1, q_prev1 = 0;  // q_{-2}, q_{-1}
    unsigned long long k = 0;
    do {
        Int a = (P + s) / Q;
        Int q = a * q_prev1 + q_prev2;
        q_prev2 = q_prev1;
        q_prev1 = q;
        P = a * Q - P;
        Q = (D - P * P) / Q;
        ++k;
    } while (P != P0 || Q != Q0);

    PellSolution unit{q_prev1 * b + 2 * q_prev2, q_prev1, D};
    if (k % 2 == 1) unit = pell_mul(unit, unit);
    if (!unit.satisfies_relation() || unit.t <= 2 || unit.u <= 0)
        throw std::logic_error("fundamental_solution: continued fraction produced " +
                               unit.t.str() + "," + unit.u.str() + " for D=" + D.str());
    return unit;
}

/// The j-th power of the fundamental solution; j = 0 gives the identity (2,0).
inline PellSolution pell_power(const Discriminant& D, unsigned long long j) {
    if (j == 0) return pell_identity(D);
    return pell_pow(fundamental_solution(D), j);
}

/// High-precision views of the fundamental unit (t + u sqrt D)/2.
struct UnitValue {
    PellSolution solution;
    Real real_view;
    Real log_view;
    unsigned precision_bits;
};

inline Real unit_real(const PellSolution& s) {
    return (Real(s.t) + Real(s.u) * boost::multiprecision::sqrt(Real(s.D))) / 2;
}

inline UnitValue epsilon(const Discriminant& D, unsigned precision_bits = default_precision_bits) {
    if (precision_bits < 64) throw invalid_input("epsilon: precision must be at least 64 bits");
    precision_scope scope(precision_bits);
    PellSolution s = fundamental_solution(D);
    Real value = unit_real(s);
    Real lg = boost::multiprecision::log(value);
    return {std::move(s), std::move(value), std::move(lg), precision_bits};
}

/// Largest integer trace t whose unit (t + sqrt(t^2 - 4))/2 lies below x.
/// Since eps + 1/eps = t, eps < x is equivalent to t < x + 1/x.
inline std::int64_t max_trace_below(double x) {
    if (!(x > 1.0)) return 2;
    long double bound = static_cast<long double>(x) + 1.0L / static_cast<long double>(x);
    auto t = static_cast<std::int64_t>(std::floor(bound));
    if (static_cast<long double>(t) == bound) --t;
    return t;
}

struct DiscriminantEntry {
    Int D;
    PellSolution solution;
};

namespace detail {

/// All u > 0 with u^2 | t^2 - 4, ascending.
inline std::vector<std::int64_t> square_divisor_roots(std::int64_t t) {
    std::vector<prime_power> fa = factor(t - 2);
    for (const prime_power& pp : factor(t + 2)) {
        auto it = std::find_if(fa.begin(), fa.end(), [&](const prime_power& q) { return q.p == pp.p; });
        if (it == fa.end())
            fa.push_back(pp);
        else
            it->r += pp.r;
    }
    std::vector<std::int64_t> roots{1};
    for (const prime_power& pp : fa) {
        std::size_t n = roots.size();
        std::int64_t pw = 1;
        for (int e = 1; e <= pp.r / 2; ++e) {
            pw *= pp.p;
            for (std::size_t i = 0; i < n; ++i) roots.push_back(roots[i] * pw);
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace detail

/// Every D with eps(D) < X together with its fundamental solution, sorted by
/// eps(D) (that is by t), ties broken by ascending D.
///
/// Walks traces t = 3, 4, ... and emits each D = (t^2-4)/u^2 the first time it
/// appears; the first appearance is the fundamental solution because every
/// solution of D has trace at least t1.
inline std::vector<DiscriminantEntry> discriminants_by_unit(double X) {
    std::vector<DiscriminantEntry> out;
    if (!(X > 1.0)) throw invalid_input("discriminants_by_unit: X must exceed 1");
    const std::int64_t t_max = max_trace_below(X);
    std::unordered_set<std::int64_t> seen;
    for (std::int64_t t = 3; t <= t_max; ++t) {
        const std::int64_t n = t * t - 4;
        std::vector<DiscriminantEntry> row;
        for (std::int64_t u : detail::square_divisor_roots(t)) {
            std::int64_t D = n / (u * u);
            if (!is_discriminant(D) || !seen.insert(D).second) continue;
            row.push_back({Int(D), PellSolution{Int(t), Int(u), Int(D)}});
        }
        std::sort(row.begin(), row.end(),
                  [](const DiscriminantEntry& a, const DiscriminantEntry& b) { return a.D < b.D; });
        for (auto& e : row) out.push_back(std::move(e));
    }
    return out;
}

}  // namespace arith_selberg
