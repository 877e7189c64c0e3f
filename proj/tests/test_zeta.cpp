#include <arith_selberg/zeta.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace arith_selberg;
namespace mp = boost::multiprecision;

namespace {

Real rel(const Real& a, const Real& b) { return mp::abs(a - b) / mp::abs(b); }

ZetaConfig config(double X, int n_max, int j_max = 60) {
    ZetaConfig c;
    c.X = X;
    c.n_max = n_max;
    c.j_max = j_max;
    return c;
}

// Gaussian elimination with partial pivoting.
long double det(std::vector<std::vector<long double>> m) {
    const std::size_t n = m.size();
    long double d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
        if (m[piv][c] == 0) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const long double f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return d;
}

// Composite Simpson for the integral of e^v / v over [log 2, log x].
long double li_simpson(long double x, int n) {
    const long double a = std::log(2.0L), b = std::log(x), h = (b - a) / n;
    auto f = [](long double v) { return std::exp(v) / v; };
    long double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4 : 2) * f(a + i * h);
    return s * h / 3;
}

}  // namespace

TEST(HPoly, Examples) {
    CycleType two_fixed;
    two_fixed.counts[1] = 2;
    EXPECT_DOUBLE_EQ(h_poly(0.3, two_fixed), 0.49);
    CycleType one_two;
    one_two.counts[1] = 1;
    one_two.counts[2] = 1;
    EXPECT_DOUBLE_EQ(h_poly(0.5, one_two), 0.375);
    CycleType id;
    id.counts[1] = 7;
    EXPECT_NEAR(h_poly(0.2, id), std::pow(0.8, 7), 1e-15);
}

TEST(HPoly, EqualsCharacteristicDeterminant) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> xs(-0.99, 0.99);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng() % 12;
        std::vector<std::uint32_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0u);
        std::shuffle(perm.begin(), perm.end(), rng);
        const long double x = xs(rng);
        std::vector<std::vector<long double>> m(n, std::vector<long double>(n, 0));
        for (std::size_t i = 0; i < n; ++i) {
            m[i][i] += 1;
            m[i][perm[i]] -= x;
        }
        const long double expect = det(m);
        const long double got = h_poly(x, cycle_type_of(perm));
        ASSERT_NEAR(static_cast<double>(got), static_cast<double>(expect), 1e-12) << trial;
    }
}

TEST(ZetaSl2z, EmptyAndSingleFactor) {
    precision_scope scope(160);
    const SeriesValue empty = zeta_sl2z(Complex(Real(2)), config(2, 5));
    EXPECT_EQ(empty.value.re, 1);
    EXPECT_EQ(empty.factors, 0u);
    const SeriesValue one = zeta_sl2z(Complex(Real(2)), config(3, 0));
    EXPECT_LT(rel(one.value.re, Real("0.9787137637477918122963235216784004721265")), Real("1e-35"));
    EXPECT_EQ(one.value.im, 0);
    EXPECT_TRUE(one.tail_heuristic);
    EXPECT_GT(one.tail_bound, 0);
}

TEST(ZetaSl2z, DivergenceRegionRejected) {
    EXPECT_THROW(zeta_sl2z(Complex(Real("0.5")), config(30, 10)), divergence_error);
    EXPECT_THROW(zeta_sl2z(Complex(Real(1), Real(3)), config(30, 10)), divergence_error);
    EXPECT_THROW(log_deriv_sl2z(Complex(Real(1)), config(30, 10)), divergence_error);
    EXPECT_THROW(zeta_sl2z(Complex(Real(2)), config(1, 10)), invalid_input);
    EXPECT_THROW(zeta_sl2z(Complex(Real(2)), config(30, -1)), invalid_input);
}

TEST(ZetaSl2z, MonotoneDecreasingInX) {
    Real prev(2);
    for (double X : {2.5, 3.0, 4.5, 8.0, 15.0, 30.0, 60.0}) {
        const Real v = zeta_sl2z(Complex(Real("1.5")), config(X, 6)).value.re;
        EXPECT_LE(v, prev) << X;
        EXPECT_GT(v, 0);
        prev = v;
    }
}

TEST(ZetaSl2z, TailBoundCoversRefinement) {
    precision_scope scope(128);
    for (const char* s : {"2", "2.5", "3"}) {
        const SeriesValue coarse = zeta_sl2z(Complex(Real(s)), config(30, 10));
        const SeriesValue fine = zeta_sl2z(Complex(Real(s)), config(200, 25));
        EXPECT_LE(mp::abs(coarse.value.re - fine.value.re), coarse.tail_bound) << s;
    }
}

TEST(ZetaSl2z, ConjugateSymmetry) {
    const Complex s(Real(3), Real(1)), sbar(Real(3), Real(-1));
    const Complex a = zeta_sl2z(s, config(20, 5)).value, b = zeta_sl2z(sbar, config(20, 5)).value;
    EXPECT_LT(mp::abs(a.re - b.re) + mp::abs(a.im + b.im), Real("1e-30"));
}

TEST(ZetaCongruence, FullLevelReducesToSl2z) {
    for (std::int64_t N : {2, 5, 12}) {
        const auto G = make_subgroup(SubgroupKind::full, N);
        for (const Complex& s : {Complex(Real(2)), Complex(Real("2.5")), Complex(Real(3), Real(1))}) {
            const SeriesValue a = zeta_congruence(G, s, config(30, 10));
            const SeriesValue b = zeta_sl2z(s, config(30, 10));
            EXPECT_LT(abs(a.value - b.value), Real("1e-14"));
            EXPECT_EQ(a.factors, b.factors);
        }
    }
}

TEST(ZetaCongruence, Gamma0Of5SingleFactor) {
    precision_scope scope(160);
    const auto G = make_subgroup(SubgroupKind::gamma0, 5);
    const SeriesValue v = zeta_congruence(G, Complex(Real(2)), config(3, 0));
    EXPECT_LT(rel(v.value.re, Real("0.978713759470685099968006961096848833404")), Real("1e-35"));
}

TEST(ZetaCongruence, MatchesClosedFormForGamma0) {
    for (std::int64_t p : {3, 5, 7, 11}) {
        const auto G = make_subgroup(SubgroupKind::gamma0, p);
        for (const Complex& s : {Complex(Real(2)), Complex(Real("2.5")), Complex(Real(3), Real(1))}) {
            const SeriesValue a = zeta_congruence(G, s, config(30, 10));
            const SeriesValue b = gamma0p_closed_form(p, s, config(30, 10));
            EXPECT_LT(abs(a.value - b.value) / abs(b.value), Real("1e-12")) << p;
        }
    }
    EXPECT_THROW(gamma0p_closed_form(9, Complex(Real(2)), config(30, 10)), invalid_input);
    EXPECT_THROW(gamma0p_closed_form(2, Complex(Real(2)), config(30, 10)), invalid_input);
}

TEST(ClosedForm, Patterns) {
    const auto s12 = fundamental_solution(Discriminant(12));
    const auto s8 = fundamental_solution(Discriminant(8));
    const auto s5 = fundamental_solution(Discriminant(5));
    EXPECT_EQ(first_power_divisible(5, s12), 3);
    EXPECT_EQ(pell_power(Discriminant(12), 3).u, 15);
    EXPECT_EQ(example1_pattern(5, s12).str(), "(3^2)");
    EXPECT_EQ(first_power_divisible(7, s8), 3);
    EXPECT_EQ(pell_power(Discriminant(8), 3).u, 70);
    EXPECT_EQ(example1_pattern(7, s8).str(), "(1^2,3^2)");
    EXPECT_EQ(example1_pattern(5, s5).str(), "(1,5)");
    EXPECT_EQ(example1_pattern(3, fundamental_solution(Discriminant(13))).str(), "(1^4)");
}

TEST(LogDeriv, SingleTermFullLevel) {
    precision_scope scope(160);
    const SeriesValue v = log_deriv_sl2z(Complex(Real(2)), config(3, 0, 1));
    EXPECT_LT(rel(v.value.re, Real("0.04797173639841754004565557832100288747932")), Real("1e-35"));
}

TEST(LogDeriv, InertClassesContributeNothingAtUnitPower) {
    // D = 5 is inert at 3 and 3 | u_2 = 3, so only even powers fix cosets of Gamma0(3)
    const auto G = make_subgroup(SubgroupKind::gamma0, 3);
    const SeriesValue v = log_deriv(G, Complex(Real(2)), config(3, 0, 1));
    EXPECT_EQ(v.factors, 1u);
    EXPECT_EQ(v.value.re, 0);
    EXPECT_GT(log_deriv(G, Complex(Real(2)), config(3, 0, 2)).value.re, 0);
}

TEST(LogDeriv, FiniteDifferenceOfLogZeta) {
    precision_scope scope(192);
    const Real h("1e-5");
    for (std::int64_t p : {0, 5, 7}) {
        std::optional<CongruenceSubgroup> G;
        if (p) G = make_subgroup(SubgroupKind::gamma0, p);
        const SpectralTable table = G ? spectral_table(*G, 20, 192) : spectral_table(20, 192);
        for (const char* sv : {"2", "2.5", "3"}) {
            const Real s(sv);
            const Real up = mp::log(zeta_from_table(table, Complex(Real(s + h)), 40).value.re);
            const Real dn = mp::log(zeta_from_table(table, Complex(Real(s - h)), 40).value.re);
            const Real fd = (up - dn) / (2 * h);
            const Real ld = log_deriv_from_table(table, Complex(s), 120).value.re;
            EXPECT_LT(mp::abs(fd - ld), Real("1e-8")) << p << " " << sv;
        }
    }
}

TEST(GeodesicCount, Examples) {
    EXPECT_EQ(prim_geodesic_count(7.0), 1);
    EXPECT_EQ(prim_geodesic_count(6.0), 0);
    EXPECT_THROW(prim_geodesic_count(1.0), invalid_input);
}

TEST(GeodesicCount, FullLevelEqualsClassNumberSum) {
    for (double x = 1.5; x < 3000; x *= 1.37) EXPECT_EQ(prim_geodesic_count(x), classnum_sum(std::sqrt(x))) << x;
}

TEST(GeodesicCount, MonotoneAndLiftsCycles) {
    const auto G = make_subgroup(SubgroupKind::gamma0, 5);
    std::int64_t prev = 0;
    for (double x = 2; x < 5000; x *= 1.5) {
        const std::int64_t c = prim_geodesic_count(G, x);
        EXPECT_GE(c, prev);
        prev = c;
    }
    // eps(5)^2 < 7: the base class lifts to its fixed point; the 5-cycle has norm eps^10
    EXPECT_EQ(prim_geodesic_count(G, 7.0), 1);
    const SpectralTable t = spectral_table(G, 3.0);
    ASSERT_EQ(t.records.size(), 1u);
    EXPECT_EQ(prim_geodesic_count(t, 1e6), 2);
}

TEST(ClassnumSum, Examples) {
    EXPECT_EQ(classnum_sum(3), 1);
    EXPECT_EQ(classnum_sum(4), 3);
    EXPECT_EQ(classnum_sum(2), 0);
}

TEST(Li, Examples) {
    precision_scope scope(160);
    EXPECT_EQ(li(Real(2)), 0);
    EXPECT_LT(rel(li(Real(1000000)), Real("78626.50399568206442707806615905806654819")), Real("1e-30"));
    EXPECT_LT(rel(li(Real(40000)), Real("4231.966142540110167419449955786975904094")), Real("1e-30"));
    EXPECT_THROW(li(Real("1.5")), invalid_input);
}

TEST(Li, MatchesQuadratureAndIncreases) {
    Real prev(0);
    for (double x : {2.5, 3.0, 10.0, 100.0, 1234.5, 10000.0}) {
        const Real v = li(x);
        EXPECT_GT(v, prev);
        prev = v;
        const long double q = li_simpson(x, 200000);
        EXPECT_NEAR(v.convert_to<double>() / static_cast<double>(q), 1.0, 1e-11) << x;
    }
}

TEST(PgtRow, SmallValues) {
    const PgtRow r4 = pgt_row(std::nullopt, 4);
    EXPECT_EQ(r4.classnum, 3);
    EXPECT_EQ(r4.pi, 3);
    const PgtRow r3 = pgt_row(std::nullopt, 3);
    EXPECT_GT(r3.ratio, 0);
    EXPECT_TRUE(mp::isfinite(r3.ratio));
}
