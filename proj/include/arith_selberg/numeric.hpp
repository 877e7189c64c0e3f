#pragma once

// Integer and high-precision real types shared by every module, plus the
// handful of exact-arithmetic helpers (floor sqrt, gcd, Bezout, residues)
// the number-theoretic code leans on.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ios>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace arith_selberg {

using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

inline constexpr unsigned default_precision_bits = 128;

/// Domain errors raised on inputs outside an operation's contract.
class invalid_input : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a series is evaluated outside its region of absolute convergence.
class divergence_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when a finite-group computation would exceed its configured size bound.
class bound_exceeded : public std::length_error {
public:
    using std::length_error::length_error;
};

inline unsigned bits_to_digits10(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

/// Sets the working precision of newly created Real values for the lifetime
/// of the scope.
class precision_scope {
public:
    explicit precision_scope(unsigned bits) : saved_(Real::default_precision()) {
        if (bits < 16) throw invalid_input("precision must be at least 16 bits");
        Real::default_precision(bits_to_digits10(bits));
    }
    ~precision_scope() { Real::default_precision(saved_); }
    precision_scope(const precision_scope&) = delete;
    precision_scope& operator=(const precision_scope&) = delete;

private:
    unsigned saved_;
};

inline Real to_real(const Int& x) { return Real(x); }

// ---------------------------------------------------------------------------
// integer helpers, templated so hot loops can run on std::int64_t

template <class I>
I abs_value(const I& x) {
    return x < 0 ? I(-x) : x;
}

/// floor(sqrt(n)) for n >= 0.
template <class I>
I isqrt(const I& n) {
    if (n < 0) throw invalid_input("isqrt of negative value");
    if constexpr (std::is_integral_v<I>) {
        auto r = static_cast<I>(std::sqrt(static_cast<long double>(n)));
        while (r > 0 && r * r > n) --r;
        while ((r + 1) * (r + 1) <= n) ++r;
        return r;
    } else {
        return boost::multiprecision::sqrt(n);
    }
}

template <class I>
bool is_square(const I& n) {
    if (n < 0) return false;
    I r = isqrt(n);
    return r * r == n;
}

template <class I>
I gcd_value(I a, I b) {
    a = abs_value(a);
    b = abs_value(b);
    while (b != 0) {
        I r = a % b;
        a = b;
        b = r;
    }
    return a;
}

template <class I>
I gcd3(const I& a, const I& b, const I& c) {
    return gcd_value(gcd_value(a, b), c);
}

template <class I>
struct bezout {
    I g, x, y;  // g = x*a + y*b, g >= 0
};

/// Extended Euclid. Coefficients are the minimal ones the algorithm yields.
template <class I>
bezout<I> ext_gcd(const I& a, const I& b) {
    I r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        I q = r0 / r1;
        I tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = s0 - q * s1;
        s0 = s1;
        s1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    return {r0, s0, t0};
}

/// Least non-negative residue of x modulo m > 0.
template <class I>
I floor_mod(const I& x, const I& m) {
    I r = x % m;
    return r < 0 ? I(r + m) : r;
}

inline std::int64_t mod_of(const Int& x, std::int64_t m) {
    return floor_mod(x, Int(m)).convert_to<std::int64_t>();
}

inline std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

inline std::int64_t mod_pow(std::int64_t base, std::uint64_t e, std::int64_t m) {
    std::int64_t result = 1 % m;
    base = floor_mod<std::int64_t>(base, m);
    while (e > 0) {
        if (e & 1u) result = mod_mul(result, base, m);
        base = mod_mul(base, base, m);
        e >>= 1u;
    }
    return result;
}

/// Inverse of a modulo m; throws when gcd(a, m) != 1.
inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    auto b = ext_gcd<std::int64_t>(floor_mod<std::int64_t>(a, m), m);
    if (b.g != 1) throw invalid_input("value not invertible modulo " + std::to_string(m));
    return floor_mod<std::int64_t>(b.x, m);
}

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

struct prime_power {
    std::int64_t p;
    int r;
    std::int64_t value;  // p^r
};

inline std::vector<prime_power> factor(std::int64_t n) {
    std::vector<prime_power> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        prime_power pp{p, 0, 1};
        while (n % p == 0) {
            n /= p;
            ++pp.r;
            pp.value *= p;
        }
        out.push_back(pp);
    }
    if (n > 1) out.push_back({n, 1, n});
    return out;
}

/// Legendre symbol (a/p) for an odd prime p.
inline int legendre(const Int& a, std::int64_t p) {
    std::int64_t r = mod_of(a, p);
    if (r == 0) return 0;
    return mod_pow(r, static_cast<std::uint64_t>((p - 1) / 2), p) == 1 ? 1 : -1;
}

// ---------------------------------------------------------------------------
// formatting

/// Scientific notation with a fixed number of significant digits;
/// independent of the global locale.
inline std::string format_real(const Real& x, unsigned digits) {
    return x.str(static_cast<std::streamsize>(digits), std::ios_base::scientific);
}

}  // namespace arith_selberg
