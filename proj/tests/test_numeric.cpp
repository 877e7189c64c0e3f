#include <arith_selberg/complex.hpp>
#include <arith_selberg/numeric.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace arith_selberg;

TEST(Isqrt, FloorOfRootForMachineIntegers) {
    for (std::int64_t n = 0; n < 20000; ++n) {
        const std::int64_t r = isqrt(n);
        ASSERT_LE(r * r, n);
        ASSERT_GT((r + 1) * (r + 1), n);
    }
    EXPECT_EQ(isqrt<std::int64_t>(3037000499LL * 3037000499LL), 3037000499LL);
}

TEST(Isqrt, BigIntegers) {
    const Int n = Int(1) << 200;
    EXPECT_EQ(isqrt(n), Int(1) << 100);
    EXPECT_EQ(isqrt(Int(n - 1)), (Int(1) << 100) - 1);
    EXPECT_THROW(isqrt(Int(-1)), invalid_input);
}

TEST(ModularArithmetic, InverseAndPower) {
    for (std::int64_t m : {7, 12, 25, 27, 1000003}) {
        for (std::int64_t a = 1; a < std::min<std::int64_t>(m, 200); ++a) {
            if (gcd_value(a, m) != 1) {
                EXPECT_THROW(mod_inverse(a, m), invalid_input);
                continue;
            }
            EXPECT_EQ(mod_mul(a, mod_inverse(a, m), m), 1 % m);
        }
    }
    EXPECT_EQ(mod_pow(3, 4, 5), 1);
    EXPECT_EQ(floor_mod<std::int64_t>(-7, 5), 3);
    EXPECT_EQ(mod_of(Int(-1), 27), 26);
}

TEST(ModularArithmetic, ExtendedGcdIdentity) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> d(-100000, 100000);
    for (int i = 0; i < 1000; ++i) {
        const std::int64_t a = d(rng), b = d(rng);
        const auto r = ext_gcd(a, b);
        EXPECT_EQ(r.g, gcd_value(a, b));
        EXPECT_EQ(r.x * a + r.y * b, r.g);
    }
}

TEST(Primes, FactorAndLegendre) {
    const auto f = factor(2 * 2 * 2 * 3 * 3 * 25 * 7);
    ASSERT_EQ(f.size(), 4u);
    EXPECT_EQ(f[0].p, 2);
    EXPECT_EQ(f[0].r, 3);
    EXPECT_EQ(f[2].value, 25);
    EXPECT_EQ(legendre(Int(2), 5), -1);
    EXPECT_EQ(legendre(Int(4), 5), 1);
    EXPECT_EQ(legendre(Int(10), 5), 0);
    EXPECT_TRUE(is_prime(1000003));
    EXPECT_FALSE(is_prime(1));
}

TEST(Precision, ScopeRestoresPrevious) {
    const auto before = Real::default_precision();
    {
        precision_scope s(512);
        EXPECT_GE(Real::default_precision(), 154u);
        const Real two(2);
        const Real r = boost::multiprecision::sqrt(two);
        EXPECT_LT(boost::multiprecision::abs(r * r - 2), Real("1e-150"));
    }
    EXPECT_EQ(Real::default_precision(), before);
}

TEST(Precision, FormattingIsScientificAndStable) {
    precision_scope s(128);
    EXPECT_EQ(format_real(Real(1) / 4, 5), "2.50000e-01");
    EXPECT_EQ(format_real(Real(1) / 3, 3), format_real(Real(1) / 3, 3));
}

TEST(ComplexArithmetic, ExpLogRoundTrip) {
    precision_scope s(128);
    const Complex z(Real("0.3"), Real("-1.7"));
    const Complex w = log(exp(z));
    EXPECT_LT(abs(w - z), Real("1e-35"));
    const Complex i(Real(0), Real(1));
    EXPECT_LT(abs(i * i + Complex(1)), Real("1e-35"));
    EXPECT_LT(abs(pow_int(z, 5) - z * z * z * z * z), Real("1e-33"));
}
