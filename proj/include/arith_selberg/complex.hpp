#pragma once

// Minimal complex arithmetic over Real. std::complex is unspecified for
// non-builtin scalar types, and only a few operations are needed here.

#include "numeric.hpp"

#include <complex>
#include <string>

namespace arith_selberg {

struct Complex {
    Real re{0};
    Real im{0};

    Complex() = default;
    Complex(Real r) : re(std::move(r)), im(0) {}  // NOLINT: implicit on purpose
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(int r) : re(r), im(0) {}  // NOLINT
    static Complex from(std::complex<double> z) { return {Real(z.real()), Real(z.imag())}; }

    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Complex& operator*=(const Complex& o) {
        Real r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Complex& operator/=(const Complex& o) {
        Real den = o.re * o.re + o.im * o.im;
        Real r = (re * o.re + im * o.im) / den;
        im = (im * o.re - re * o.im) / den;
        re = std::move(r);
        return *this;
    }
    Complex operator-() const { return {-re, -im}; }
    bool is_real() const { return im == 0; }
};

inline Complex operator+(Complex a, const Complex& b) { return a += b; }
inline Complex operator-(Complex a, const Complex& b) { return a -= b; }
inline Complex operator*(Complex a, const Complex& b) { return a *= b; }
inline Complex operator/(Complex a, const Complex& b) { return a /= b; }

inline Real abs(const Complex& z) { return boost::multiprecision::hypot(z.re, z.im); }

inline Complex exp(const Complex& z) {
    Real m = boost::multiprecision::exp(z.re);
    if (z.im == 0) return {m, Real(0)};
    return {m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im)};
}

/// Principal branch.
inline Complex log(const Complex& z) {
    return {boost::multiprecision::log(abs(z)), boost::multiprecision::atan2(z.im, z.re)};
}

inline Complex pow_int(Complex base, unsigned long long e) {
    Complex result(1);
    while (e > 0) {
        if (e & 1ull) result *= base;
        e >>= 1ull;
        if (e) base *= base;
    }
    return result;
}

inline std::string format_complex(const Complex& z, unsigned digits) {
    if (z.im == 0) return format_real(z.re, digits);
    std::string s = format_real(z.re, digits);
    s += z.im < 0 ? "-" : "+";
    s += format_real(boost::multiprecision::abs(z.im), digits);
    s += "i";
    return s;
}

}  // namespace arith_selberg
