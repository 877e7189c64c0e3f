#pragma once

// Truncated Euler products for the Selberg zeta function of a congruence
// subgroup, written over fundamental units:
//
//   Z(s) = prod_D prod_{n >= 0} H(eps(D)^{-2(s+n)}; ct(D))^{h(D)},
//   H(x; (m_1^{n_1}, ...)) = prod_i (1 - x^{m_i})^{n_i},
//
// where ct(D) is the cycle type of gamma_1(D) acting on the cosets. Also the
// logarithmic derivative, the closed form for Gamma0(p), geodesic counts and
// the class number sum against li(x^2).

#include "complex.hpp"
#include "congruence.hpp"
#include "matrix_corr.hpp"
#include "numeric.hpp"
#include "pell_units.hpp"
#include "quadforms.hpp"

#include <boost/math/special_functions/expint.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace arith_selberg {

struct ZetaConfig {
    double X = 30.0;        // keep D with eps(D) < X
    int n_max = 10;         // n = 0..n_max in the inner product
    int j_max = 60;         // j = 1..j_max in the log-derivative
    unsigned precision = default_precision_bits;

    void validate() const {
        if (!(X > 1.0)) throw invalid_input("ZetaConfig: unit bound X must exceed 1");
        if (n_max < 0) throw invalid_input("ZetaConfig: n_max must be non-negative");
        if (j_max < 1) throw invalid_input("ZetaConfig: j_max must be positive");
        if (precision < 64) throw invalid_input("ZetaConfig: precision must be at least 64 bits");
    }
};

/// A truncated value with a majorant for the omitted terms. The majorant
/// for omitted discriminants is a density heuristic, not a proof.
struct SeriesValue {
    Complex value;
    Real tail_bound;
    bool tail_heuristic = true;
    std::size_t factors = 0;
};

struct SpectralRecord {
    Int D;
    PellSolution unit;
    std::int64_t h = 0;
    Real eps;
    Real log_eps;
    CycleType ct;
};

struct SpectralTable {
    std::vector<SpectralRecord> records;  // ascending eps(D)
    std::int64_t index = 1;
    double X = 0;
    unsigned precision = default_precision_bits;
};

template <class T>
T power(T base, unsigned long long e) {
    T r(1);
    while (e > 0) {
        if (e & 1ull) r = r * base;
        e >>= 1ull;
        if (e) base = base * base;
    }
    return r;
}

/// prod_i (1 - x^{m_i})^{n_i}.
template <class T>
T h_poly(const T& x, const CycleType& ct) {
    T r(1);
    for (auto [m, n] : ct.counts) r = r * power(T(T(1) - power(x, static_cast<unsigned long long>(m))),
                                               static_cast<unsigned long long>(n));
    return r;
}

namespace detail {

inline std::vector<SpectralRecord> base_records(double X, unsigned bits) {
    std::vector<SpectralRecord> out;
    for (DiscriminantEntry& e : discriminants_by_unit(X)) {
        SpectralRecord r;
        const Discriminant D(e.D);
        r.D = e.D;
        r.unit = e.solution;
        r.h = class_number(D);
        r.eps = unit_real(r.unit);
        r.log_eps = boost::multiprecision::log(r.eps);
        out.push_back(std::move(r));
    }
    (void)bits;
    return out;
}

}  // namespace detail

/// Records for the full modular group: every cycle type is a single fixed point.
inline SpectralTable spectral_table(double X, unsigned bits = default_precision_bits) {
    precision_scope scope(bits);
    SpectralTable t;
    t.X = X;
    t.precision = bits;
    t.records = detail::base_records(X, bits);
    for (auto& r : t.records) r.ct.counts[1] = 1;
    return t;
}

/// Records for Gamma: cycle type of gamma(identity form, (t1,u1)) on the cosets.
inline SpectralTable spectral_table(const CongruenceSubgroup& G, double X,
                                    unsigned bits = default_precision_bits) {
    precision_scope scope(bits);
    SpectralTable t;
    t.X = X;
    t.precision = bits;
    t.index = static_cast<std::int64_t>(G.index());
    t.records = detail::base_records(X, bits);
    for (auto& r : t.records) {
        const Discriminant D(r.D);
        r.ct = cycle_type(G, gamma_of(identity_form(D), r.unit));
    }
    return t;
}

namespace detail {

inline void check_convergent(const Complex& s) {
    if (!(s.re > 1)) throw divergence_error("series diverges for Re(s) <= 1");
}

// sum_{eps(D) > X} h(D) eps^{-2 sigma} modelled by the density d li(y^2).
inline Real omitted_density(const Real& sigma, double X) {
    const Real x(X);
    return boost::multiprecision::pow(x, 2 - 2 * sigma) / ((2 * sigma - 2) * boost::multiprecision::log(x));
}

}  // namespace detail

/// Z(s) over a precomputed table.
inline SeriesValue zeta_from_table(const SpectralTable& table, const Complex& s, int n_max) {
    detail::check_convergent(s);
    if (n_max < 0) throw invalid_input("n_max must be non-negative");
    precision_scope scope(table.precision);
    SeriesValue out;
    out.value = Complex(1);
    Real log_tail(0);
    const Real sigma = s.re;
    for (const SpectralRecord& r : table.records) {
        for (int n = 0; n <= n_max; ++n) {
            Complex x = exp(Complex(Real(-2) * (s.re + n) * r.log_eps, Real(-2) * s.im * r.log_eps));
            out.value = out.value * power(h_poly(x, r.ct), static_cast<unsigned long long>(r.h));
            ++out.factors;
        }
        // n > n_max: |log(1 - y)| <= y/(1 - y), summed geometrically
        const Real y = boost::multiprecision::exp(-2 * (sigma + n_max + 1) * r.log_eps);
        const Real q = 1 / (r.eps * r.eps);
        log_tail += Real(r.h) * Real(table.index) * y / ((1 - q) * (1 - y));
    }
    const Real Xr(table.X);
    const Real c = 1 / ((1 - boost::multiprecision::pow(Xr, -2 * sigma)) * (1 - 1 / (Xr * Xr)));
    log_tail += Real(table.index) * detail::omitted_density(sigma, table.X) * c;
    out.tail_bound = abs(out.value) * (boost::multiprecision::exp(log_tail) - 1);
    return out;
}

inline SeriesValue zeta_sl2z(const Complex& s, const ZetaConfig& cfg) {
    cfg.validate();
    detail::check_convergent(s);
    return zeta_from_table(spectral_table(cfg.X, cfg.precision), s, cfg.n_max);
}

inline SeriesValue zeta_congruence(const CongruenceSubgroup& G, const Complex& s, const ZetaConfig& cfg) {
    cfg.validate();
    detail::check_convergent(s);
    return zeta_from_table(spectral_table(G, cfg.X, cfg.precision), s, cfg.n_max);
}

/// sum_D sum_{j <= j_max} fix(gamma^j) h(D) 2 log eps / (1 - eps^{-2j}) eps^{-2js},
/// the derivative of log Z(s).
inline SeriesValue log_deriv_from_table(const SpectralTable& table, const Complex& s, int j_max) {
    detail::check_convergent(s);
    if (j_max < 1) throw invalid_input("j_max must be positive");
    precision_scope scope(table.precision);
    SeriesValue out;
    out.value = Complex(0);
    Real tail(0);
    const Real sigma = s.re;
    for (const SpectralRecord& r : table.records) {
        const Real q = 1 / (r.eps * r.eps);
        for (int j = 1; j <= j_max; ++j) {
            const std::int64_t fix = r.ct.fixed_points_of_power(j);
            ++out.factors;
            if (fix == 0) continue;
            const Real coeff = Real(fix * r.h) * 2 * r.log_eps / (1 - boost::multiprecision::pow(q, j));
            out.value += Complex(coeff) *
                         exp(Complex(Real(-2) * j * s.re * r.log_eps, Real(-2) * j * s.im * r.log_eps));
        }
        const Real qs = boost::multiprecision::exp(-2 * sigma * r.log_eps);
        tail += Real(r.h * table.index) * 2 * r.log_eps * boost::multiprecision::pow(qs, j_max + 1) /
                ((1 - qs) * (1 - q));
    }
    const Real Xr(table.X);
    const Real c = 1 / ((1 - boost::multiprecision::pow(Xr, -2 * sigma)) * (1 - 1 / (Xr * Xr)));
    tail += Real(table.index) * 2 * boost::multiprecision::pow(Xr, 2 - 2 * sigma) / (2 * sigma - 2) * c;
    out.tail_bound = tail;
    return out;
}

inline SeriesValue log_deriv(const CongruenceSubgroup& G, const Complex& s, const ZetaConfig& cfg) {
    cfg.validate();
    detail::check_convergent(s);
    return log_deriv_from_table(spectral_table(G, cfg.X, cfg.precision), s, cfg.j_max);
}

inline SeriesValue log_deriv_sl2z(const Complex& s, const ZetaConfig& cfg) {
    cfg.validate();
    detail::check_convergent(s);
    return log_deriv_from_table(spectral_table(cfg.X, cfg.precision), s, cfg.j_max);
}

// ---------------------------------------------------------------------------
// Gamma0(p) in closed form

/// Least l >= 1 with p | u_l, where (t_l, u_l) is the l-th power of s.
inline std::int64_t first_power_divisible(std::int64_t p, const PellSolution& s) {
    if (p < 3 || !is_prime(p)) throw invalid_input("first_power_divisible: p must be an odd prime");
    const std::int64_t t1 = mod_of(s.t, p), u1 = mod_of(s.u, p), D = mod_of(s.D, p);
    const std::int64_t half = mod_inverse(2, p);
    std::int64_t t = t1, u = u1;
    for (std::int64_t l = 1; l <= 2 * p + 2; ++l) {
        if (u == 0) return l;
        const std::int64_t nt = mod_mul((mod_mul(t1, t, p) + mod_mul(mod_mul(u1, u, p), D, p)) % p, half, p);
        const std::int64_t nu = mod_mul((mod_mul(t1, u, p) + mod_mul(t, u1, p)) % p, half, p);
        t = nt;
        u = nu;
    }
    throw std::logic_error("first_power_divisible: no power found");
}

/// Cycle type of gamma(D) on the p + 1 cosets of Gamma0(p), by the four cases
/// p | u1, p | D, (D/p) = 1, (D/p) = -1.
inline CycleType example1_pattern(std::int64_t p, const PellSolution& s) {
    if (p < 3 || !is_prime(p)) throw invalid_input("example1_pattern: p must be an odd prime");
    CycleType ct;
    if (s.u % p == 0) {
        ct.counts[1] = p + 1;
    } else if (s.D % p == 0) {
        ct.counts[1] = 1;
        ct.counts[p] = 1;
    } else {
        const std::int64_t l = first_power_divisible(p, s);
        if (legendre(s.D, p) == 1) {
            if ((p - 1) % l != 0) throw std::logic_error("example1_pattern: l1 does not divide p - 1");
            ct.counts[1] = 2;
            ct.counts[l] += (p - 1) / l;
        } else {
            if ((p + 1) % l != 0) throw std::logic_error("example1_pattern: l2 does not divide p + 1");
            ct.counts[l] = (p + 1) / l;
        }
    }
    return ct;
}

inline SeriesValue gamma0p_closed_form(std::int64_t p, const Complex& s, const ZetaConfig& cfg) {
    cfg.validate();
    if (p < 3 || !is_prime(p)) throw invalid_input("gamma0p_closed_form: p must be an odd prime");
    detail::check_convergent(s);
    precision_scope scope(cfg.precision);
    SpectralTable t;
    t.X = cfg.X;
    t.precision = cfg.precision;
    t.index = p + 1;
    t.records = detail::base_records(cfg.X, cfg.precision);
    for (auto& r : t.records) r.ct = example1_pattern(p, r.unit);
    return zeta_from_table(t, s, cfg.n_max);
}

// ---------------------------------------------------------------------------
// counting

/// Number of primitive hyperbolic classes of the table's group with norm < x:
/// each base class of D lifts to one class of norm eps^{2m} per m-cycle.
inline std::int64_t prim_geodesic_count(const SpectralTable& table, double x) {
    if (!(x > 1.0)) throw invalid_input("prim_geodesic_count: x must exceed 1");
    precision_scope scope(table.precision);
    const Real lx = boost::multiprecision::log(Real(x));
    std::int64_t count = 0;
    for (const SpectralRecord& r : table.records)
        for (auto [m, n] : r.ct.counts)
            if (2 * m * r.log_eps < lx) count += r.h * n;
    return count;
}

inline std::int64_t prim_geodesic_count(double x, unsigned bits = default_precision_bits) {
    if (!(x > 1.0)) throw invalid_input("prim_geodesic_count: x must exceed 1");
    return prim_geodesic_count(spectral_table(std::sqrt(x), bits), x);
}

inline std::int64_t prim_geodesic_count(const CongruenceSubgroup& G, double x,
                                        unsigned bits = default_precision_bits) {
    if (!(x > 1.0)) throw invalid_input("prim_geodesic_count: x must exceed 1");
    return prim_geodesic_count(spectral_table(G, std::sqrt(x), bits), x);
}

/// sum_{eps(D) < x} h(D).
inline std::int64_t classnum_sum(double x) {
    if (!(x > 1.0)) throw invalid_input("classnum_sum: x must exceed 1");
    if (x <= 2.0) return 0;
    std::int64_t total = 0;
    for (const DiscriminantEntry& e : discriminants_by_unit(x)) total += class_number(Discriminant(e.D));
    return total;
}

/// li(x) = integral from 2 to x of dt / log t, as Ei(log x) - Ei(log 2).
inline Real li(const Real& x) {
    if (x < 2) throw invalid_input("li: x must be at least 2");
    if (x == 2) return Real(0);
    return boost::math::expint(boost::multiprecision::log(x)) -
           boost::math::expint(boost::multiprecision::log(Real(2)));
}

inline Real li(double x, unsigned bits = default_precision_bits) {
    precision_scope scope(bits);
    return li(Real(x));
}

struct PgtRow {
    double x = 0;
    std::int64_t pi = 0;          // primitive classes with norm < x^2
    std::int64_t classnum = 0;    // sum_{eps(D) < x} h(D)
    Real li_x2;
    Real ratio;                   // pi / li(x^2)
};

inline PgtRow pgt_row(const std::optional<CongruenceSubgroup>& G, double x,
                      unsigned bits = default_precision_bits) {
    if (!(x > 1.0)) throw invalid_input("pgt: x must exceed 1");
    precision_scope scope(bits);
    PgtRow row;
    row.x = x;
    const SpectralTable table = G ? spectral_table(*G, x, bits) : spectral_table(x, bits);
    for (const SpectralRecord& r : table.records) row.classnum += r.h;
    row.pi = prim_geodesic_count(table, x * x);
    row.li_x2 = x * x >= 2 ? li(Real(x) * Real(x)) : Real(0);
    row.ratio = row.li_x2 > 0 ? Real(Real(row.pi) / row.li_x2) : Real(0);
    return row;
}

}  // namespace arith_selberg
