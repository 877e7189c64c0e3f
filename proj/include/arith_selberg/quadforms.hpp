#pragma once

// Primitive indefinite binary quadratic forms [a,b,c] = a x^2 + b xy + c y^2
// under proper (SL2(Z)) equivalence: reduction, reduction cycles, narrow
// class numbers and the composition group.

#include "numeric.hpp"
#include "pell_units.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace arith_selberg {

template <class I>
struct basic_quad_form {
    I a{0}, b{0}, c{0};

    I discriminant() const { return b * b - 4 * a * c; }
    friend bool operator==(const basic_quad_form&, const basic_quad_form&) = default;
    friend bool operator<(const basic_quad_form& x, const basic_quad_form& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.c < y.c;
    }
    /// Q(x, y)
    I operator()(const I& x, const I& y) const { return a * x * x + b * x * y + c * y * y; }
};

using QuadForm = basic_quad_form<Int>;

template <class I>
std::ostream& operator<<(std::ostream& os, const basic_quad_form<I>& q) {
    return os << "[" << q.a << "," << q.b << "," << q.c << "]";
}

inline std::string to_string(const QuadForm& q) {
    return "[" + q.a.str() + "," + q.b.str() + "," + q.c.str() + "]";
}

inline Int discriminant(const QuadForm& q) { return q.discriminant(); }

template <class I>
bool is_primitive(const basic_quad_form<I>& q) {
    return gcd3(q.a, q.b, q.c) == 1;
}

/// Reduced in the indefinite sense: 0 < b < sqrt D and
/// sqrt D - b < 2|a| < sqrt D + b. `s` is floor(sqrt D), D non-square.
template <class I>
bool is_reduced(const basic_quad_form<I>& q, const I& s) {
    if (q.b <= 0 || q.b > s) return false;
    I two_a = 2 * abs_value(q.a);
    return two_a + q.b > s && two_a - q.b <= s;
}

template <class I>
bool is_reduced(const basic_quad_form<I>& q) {
    return is_reduced(q, isqrt(q.discriminant()));
}

namespace detail {

/// The unique r = b (mod 2|a|) in the normalization window: (-|a|, |a|] if
/// |a| > sqrt D, otherwise (sqrt D - 2|a|, sqrt D).
template <class I>
I normalize_b(const I& b, const I& a, const I& s) {
    const I m = 2 * abs_value(a);
    if (abs_value(a) > s) {
        I r = floor_mod(b, m);  // [0, 2|a|)
        if (r > abs_value(a)) r -= m;
        return r;
    }
    // largest r <= s with r = b (mod m); it exceeds sqrt D - 2|a| automatically
    I r = s - floor_mod(I(s - b), m);
    return r;
}

}  // namespace detail

/// One proper reduction step [a,b,c] -> [c, r, (r^2-D)/(4c)] with r = -b
/// (mod 2c) normalized; the transformation matrix is [[0,-1],[1,k]].
template <class I>
basic_quad_form<I> rho(const basic_quad_form<I>& q, const I& D, const I& s) {
    I r = detail::normalize_b(I(-q.b), q.c, s);
    return {q.c, r, (r * r - D) / (4 * q.c)};
}

namespace detail {

template <class I>
void check_reducible(const basic_quad_form<I>& q, const I& D) {
    if (D <= 0 || is_square(D))
        throw invalid_input("form has non-positive or square discriminant");
    if (!is_primitive(q)) throw invalid_input("form is not primitive");
}

}  // namespace detail

/// A reduced form properly equivalent to q.
template <class I>
basic_quad_form<I> reduce(const basic_quad_form<I>& q) {
    const I D = q.discriminant();
    detail::check_reducible(q, D);
    const I s = isqrt(D);
    basic_quad_form<I> f = q;
    while (!is_reduced(f, s)) f = rho(f, D, s);
    return f;
}

/// The rho-cycle through a reduced form, starting at q.
template <class I>
std::vector<basic_quad_form<I>> reduction_cycle(const basic_quad_form<I>& q) {
    const I D = q.discriminant();
    const I s = isqrt(D);
    if (!is_reduced(q, s)) throw invalid_input("reduction_cycle: form is not reduced");
    std::vector<basic_quad_form<I>> cycle{q};
    for (basic_quad_form<I> f = rho(q, D, s); !(f == q); f = rho(f, D, s)) cycle.push_back(f);
    return cycle;
}

/// Proper equivalence: reduced q2 lies on the reduction cycle of q1.
inline bool equivalent(const QuadForm& q1, const QuadForm& q2) {
    if (q1.discriminant() != q2.discriminant())
        throw invalid_input("equivalent: discriminants differ");
    QuadForm r1 = reduce(q1), r2 = reduce(q2);
    for (const QuadForm& f : reduction_cycle(r1))
        if (f == r2) return true;
    return false;
}

namespace detail {

/// Every reduced primitive form of discriminant D.
inline std::vector<basic_quad_form<std::int64_t>> reduced_forms(std::int64_t D) {
    using F = basic_quad_form<std::int64_t>;
    const std::int64_t s = isqrt(D);
    std::vector<F> out;
    for (std::int64_t b = (D % 2 == 0) ? 2 : 1; b <= s; b += 2) {
        const std::int64_t n = (D - b * b) / 4;  // = -ac > 0
        // window s - b < 2|a| <= s + b
        std::int64_t lo = (s - b) / 2 + 1;
        std::int64_t hi = (s + b) / 2;
        for (std::int64_t a = lo; a <= hi; ++a) {
            if (n % a != 0) continue;
            std::int64_t c = n / a;
            if (gcd3<std::int64_t>(a, b, c) != 1) continue;
            out.push_back({a, b, -c});
            out.push_back({-a, b, c});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct cycle_partition {
    std::vector<basic_quad_form<std::int64_t>> forms;  // sorted
    std::vector<std::size_t> class_of;                 // parallel to forms
    std::vector<std::size_t> rep_index;                // first (minimal) form per class
};

inline cycle_partition partition_cycles(std::int64_t D) {
    cycle_partition part;
    part.forms = reduced_forms(D);
    const std::size_t none = static_cast<std::size_t>(-1);
    part.class_of.assign(part.forms.size(), none);
    const std::int64_t s = isqrt(D);
    auto index_of = [&](const basic_quad_form<std::int64_t>& f) {
        auto it = std::lower_bound(part.forms.begin(), part.forms.end(), f);
        if (it == part.forms.end() || !(*it == f))
            throw std::logic_error("partition_cycles: rho left the reduced set");
        return static_cast<std::size_t>(it - part.forms.begin());
    };
    for (std::size_t i = 0; i < part.forms.size(); ++i) {
        if (part.class_of[i] != none) continue;
        const std::size_t cls = part.rep_index.size();
        part.rep_index.push_back(i);
        std::size_t j = i;
        do {
            part.class_of[j] = cls;
            j = index_of(rho(part.forms[j], D, s));
        } while (j != i);
    }
    return part;
}

inline std::int64_t small_discriminant(const Discriminant& D) {
    if (D.value() > Int(std::int64_t{1} << 52))
        throw bound_exceeded("class number enumeration limited to D < 2^52");
    return D.value().convert_to<std::int64_t>();
}

inline QuadForm widen(const basic_quad_form<std::int64_t>& f) {
    return {Int(f.a), Int(f.b), Int(f.c)};
}

}  // namespace detail

/// Narrow class number: the number of reduction cycles among the reduced
/// primitive forms of discriminant D.
inline std::int64_t class_number(const Discriminant& D) {
    return static_cast<std::int64_t>(
        detail::partition_cycles(detail::small_discriminant(D)).rep_index.size());
}

/// One reduced representative per class: the lexicographically least member
/// of each cycle, listed in lexicographic order.
inline std::vector<QuadForm> class_representatives(const Discriminant& D) {
    auto part = detail::partition_cycles(detail::small_discriminant(D));
    std::vector<QuadForm> reps;
    reps.reserve(part.rep_index.size());
    for (std::size_t i : part.rep_index) reps.push_back(detail::widen(part.forms[i]));
    return reps;
}

/// [1, delta, (delta^2 - D)/4] with delta = D (mod 2).
inline QuadForm identity_form(const Discriminant& D) {
    Int delta = floor_mod(D.value(), Int(2));
    return {Int(1), delta, (delta * delta - D.value()) / 4};
}

inline QuadForm inverse_class(const QuadForm& q) { return {q.a, -q.b, q.c}; }

/// Composition of two forms of the same discriminant:
///   A = a1 a2 / beta^2,
///   B = (v1 a1 b2 + v2 a2 b1 + w (b1 b2 + D)/2) / beta,
///   C = (B^2 - D) / (4A),
/// with beta = gcd(a1, a2, (b1+b2)/2) = v1 a1 + v2 a2 + w (b1+b2)/2.
inline QuadForm compose(const QuadForm& q1, const QuadForm& q2) {
    const Int D = q1.discriminant();
    if (D != q2.discriminant()) throw invalid_input("compose: discriminants differ");
    if (!is_primitive(q1) || !is_primitive(q2)) throw invalid_input("compose: non-primitive input");
    const Int half_sum = (q1.b + q2.b) / 2;
    auto e1 = ext_gcd(q1.a, q2.a);
    auto e2 = ext_gcd(e1.g, half_sum);
    const Int beta = e2.g;
    const Int v1 = e1.x * e2.x, v2 = e1.y * e2.x, w = e2.y;

    const Int A = q1.a * q2.a / (beta * beta);
    const Int numer = v1 * q1.a * q2.b + v2 * q2.a * q1.b + w * ((q1.b * q2.b + D) / 2);
    if (numer % beta != 0) throw std::logic_error("compose: middle coefficient not integral");
    Int B = numer / beta;
    // B is only determined modulo 2A; keep it small.
    B = detail::normalize_b(B, A, Int(-1));
    const Int c_numer = B * B - D;
    if (c_numer % (4 * A) != 0)
        throw std::logic_error("compose: last coefficient not integral for " + to_string(q1) +
                               " * " + to_string(q2));
    return {A, B, c_numer / (4 * A)};
}

/// Class group table over class_representatives(D).
struct ClassGroup {
    Int D;
    std::vector<QuadForm> reps;
    std::vector<std::vector<std::size_t>> table;  // table[i][j] = class of reps[i]*reps[j]
    std::size_t identity = 0;
    std::map<QuadForm, std::size_t> reduced_index;  // every reduced form -> class

    std::size_t order() const { return reps.size(); }

    std::size_t class_of(const QuadForm& q) const {
        auto it = reduced_index.find(reduce(q));
        if (it == reduced_index.end()) throw std::logic_error("class_of: unknown reduced form");
        return it->second;
    }
};

inline ClassGroup class_group(const Discriminant& D) {
    auto part = detail::partition_cycles(detail::small_discriminant(D));
    ClassGroup g;
    g.D = D.value();
    for (std::size_t i : part.rep_index) g.reps.push_back(detail::widen(part.forms[i]));
    for (std::size_t i = 0; i < part.forms.size(); ++i)
        g.reduced_index.emplace(detail::widen(part.forms[i]), part.class_of[i]);
    const std::size_t h = g.reps.size();
    g.table.assign(h, std::vector<std::size_t>(h));
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j) g.table[i][j] = g.class_of(compose(g.reps[i], g.reps[j]));
    g.identity = g.class_of(identity_form(D));
    return g;
}

struct GroupAxiomReport {
    bool closure = true;
    bool identity = true;
    bool inverses = true;
    bool associative = true;
    bool commutative = true;
    bool ok() const { return closure && identity && inverses && associative && commutative; }
};

/// Exhaustive check of the group axioms on the table (h^3 associativity triples).
inline GroupAxiomReport check_group_axioms(const ClassGroup& g) {
    GroupAxiomReport r;
    const std::size_t h = g.order();
    for (std::size_t i = 0; i < h; ++i) {
        if (g.table[i].size() != h) r.closure = false;
        for (std::size_t j = 0; j < h && r.closure; ++j)
            if (g.table[i][j] >= h) r.closure = false;
    }
    if (!r.closure) return r;
    for (std::size_t i = 0; i < h; ++i) {
        if (g.table[g.identity][i] != i || g.table[i][g.identity] != i) r.identity = false;
        bool has_inverse = false;
        for (std::size_t j = 0; j < h; ++j) {
            if (g.table[i][j] == g.identity) has_inverse = true;
            if (g.table[i][j] != g.table[j][i]) r.commutative = false;
        }
        if (!has_inverse) r.inverses = false;
        for (std::size_t j = 0; j < h; ++j)
            for (std::size_t k = 0; k < h; ++k)
                if (g.table[g.table[i][j]][k] != g.table[i][g.table[j][k]]) r.associative = false;
    }
    return r;
}

}  // namespace arith_selberg
