#pragma once

// Slow reference computations that share no algorithm with the main paths:
// Zagier-reduced forms instead of the classical reduction walk, an ascending
// scan instead of continued fractions, the projective line instead of coset
// tables, and a full scan over the group instead of generator orbits.

#include "congruence.hpp"
#include "numeric.hpp"
#include "pell_units.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace arith_selberg {

struct OracleReport {
    std::string check;
    std::string range;
    bool pass = true;
    std::optional<std::string> counterexample;  // present iff !pass

    OracleReport() = default;
    OracleReport(std::string check_name, std::string range_text)
        : check(std::move(check_name)), range(std::move(range_text)) {}

    void fail(std::string why) {
        if (pass) counterexample = std::move(why);
        pass = false;
    }
};

namespace oracle {

/// Narrow class number from Zagier-reduced forms A > 0, C > 0, B > A + C,
/// B^2 - 4AC = D, counted as orbits of the map
/// [A,B,C] -> [A n^2 - B n + C, 2 A n - B, A], n = ceil((B + sqrt D)/(2A)).
inline std::int64_t zagier_class_number(std::int64_t D) {
    using F = std::tuple<std::int64_t, std::int64_t, std::int64_t>;
    std::set<F> reduced;
    // with d = A - C: (B - A - C)(B + A + C) = D - d^2
    for (std::int64_t d = -isqrt(D); d * d < D; ++d) {
        const std::int64_t m = D - d * d;
        for (std::int64_t k = 1; k * k < m; ++k) {
            if (m % k != 0) continue;
            const std::int64_t l = m / k;
            if ((l - k) % 2 != 0) continue;
            const std::int64_t sum = (l - k) / 2;  // A + C
            if ((sum + d) % 2 != 0) continue;
            const std::int64_t A = (sum + d) / 2, C = (sum - d) / 2, B = (k + l) / 2;
            if (A <= 0 || C <= 0) continue;
            if (gcd3<std::int64_t>(A, B, C) != 1) continue;
            reduced.insert({A, B, C});
        }
    }
    const std::int64_t s = isqrt(D);
    std::set<F> seen;
    std::int64_t cycles = 0;
    for (const F& start : reduced) {
        if (seen.count(start)) continue;
        ++cycles;
        F f = start;
        do {
            seen.insert(f);
            auto [A, B, C] = f;
            const std::int64_t n = (B + s) / (2 * A) + 1;
            f = {A * n * n - B * n + C, 2 * A * n - B, A};
            if (!reduced.count(f)) throw std::logic_error("zagier_class_number: left the reduced set");
        } while (f != start);
    }
    return cycles;
}

/// For each u with u^2 | t^2 - 4 and D = (t^2-4)/u^2 a discriminant: (u, D) -> class count.
inline std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> trace_class_count(std::int64_t t) {
    if (t <= 2) throw invalid_input("trace_class_count: t must be at least 3");
    std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> out;
    const std::int64_t n = t * t - 4;
    for (std::int64_t u = 1; u * u <= n; ++u) {
        if (n % (u * u) != 0) continue;
        const std::int64_t D = n / (u * u);
        if (!is_discriminant(D)) continue;
        out[{u, D}] = zagier_class_number(D);
    }
    return out;
}

/// Least u in 1..bound with D u^2 + 4 a square.
inline std::optional<PellSolution> pell_ascending(std::int64_t D, std::int64_t bound) {
    for (std::int64_t u = 1; u <= bound; ++u) {
        const __int128 v = static_cast<__int128>(D) * u * u + 4;
        if (v > static_cast<__int128>(INT64_MAX)) return std::nullopt;
        const auto w = static_cast<std::int64_t>(v);
        const std::int64_t t = isqrt(w);
        if (t * t == w) return PellSolution{Int(t), Int(u), Int(D)};
    }
    return std::nullopt;
}

/// Index of a point of P^1(F_p): [x : 1] -> x, [1 : 0] -> p.
inline std::int64_t p1_index(std::int64_t x, std::int64_t y, std::int64_t p) {
    x = floor_mod(x, p);
    y = floor_mod(y, p);
    if (y == 0) return p;
    return mod_mul(x, mod_inverse(y, p), p);
}

/// Right action (x, y) -> (x, y) gamma on P^1(F_p).
inline std::vector<std::uint32_t> p1_action(std::int64_t p, const Mat2& g) {
    if (!is_prime(p)) throw invalid_input("p1_action: p must be prime");
    const std::int64_t a = mod_of(g.a, p), b = mod_of(g.b, p), c = mod_of(g.c, p), d = mod_of(g.d, p);
    if (floor_mod<std::int64_t>(a * d - b * c, p) == 0) throw invalid_input("p1_action: p divides det");
    std::vector<std::uint32_t> perm(static_cast<std::size_t>(p + 1));
    for (std::int64_t i = 0; i <= p; ++i) {
        const std::int64_t x = i < p ? i : 1, y = i < p ? 1 : 0;
        perm[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(p1_index(x * a + y * c, x * b + y * d, p));
    }
    return perm;
}

/// All of SL2(Z/NZ) by scanning every quadruple.
inline std::vector<ModMatrix> sl2_elements_by_scan(std::int64_t N) {
    if (N * N * N * N > 4'000'000) throw bound_exceeded("sl2_elements_by_scan: N too large");
    std::vector<ModMatrix> out;
    for (std::int64_t a = 0; a < N; ++a)
        for (std::int64_t b = 0; b < N; ++b)
            for (std::int64_t c = 0; c < N; ++c)
                for (std::int64_t d = 0; d < N; ++d)
                    if (floor_mod<std::int64_t>(a * d - b * c - 1, N) == 0) out.push_back({a, b, c, d, N});
    return out;
}

/// Conjugacy classes of PSL2(Z/NZ), each as the SL2 elements lying over it,
/// found by conjugating with every group element.
inline std::vector<std::vector<ModMatrix>> exhaustive_psl_classes(std::int64_t N) {
    const std::vector<ModMatrix> G = sl2_elements_by_scan(N);
    if (G.size() > default_group_bound) throw bound_exceeded("exhaustive_psl_classes: group too large");
    std::vector<std::int64_t> lambdas;
    for (std::int64_t a = 0; a < N; ++a)
        if (floor_mod<std::int64_t>(a * a - 1, N) == 0) lambdas.push_back(a);
    std::map<std::uint64_t, std::size_t> where;
    std::vector<std::vector<ModMatrix>> classes;
    for (const ModMatrix& g : G) {
        if (where.count(g.key())) continue;
        const std::size_t id = classes.size();
        classes.emplace_back();
        for (const ModMatrix& h : G) {
            const ModMatrix conj = inverse(h) * g * h;
            for (std::int64_t lam : lambdas) {
                const ModMatrix m = scalar_times(lam, conj);
                if (where.emplace(m.key(), id).second) classes[id].push_back(m);
            }
        }
    }
    return classes;
}

/// h^-1 g1 h = lambda g2 for some h and lambda^2 = 1, by scanning h.
inline bool psl_conjugate_scan(const ModMatrix& g1, const ModMatrix& g2) {
    const std::int64_t N = g1.N;
    std::vector<std::int64_t> lambdas;
    for (std::int64_t a = 0; a < N; ++a)
        if (floor_mod<std::int64_t>(a * a - 1, N) == 0) lambdas.push_back(a);
    for (const ModMatrix& h : sl2_elements_by_scan(N)) {
        const ModMatrix conj = inverse(h) * g1 * h;
        for (std::int64_t lam : lambdas)
            if (scalar_times(lam, g2) == conj) return true;
    }
    return false;
}

}  // namespace oracle
}  // namespace arith_selberg
