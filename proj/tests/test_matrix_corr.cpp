#include <arith_selberg/matrix_corr.hpp>
#include <arith_selberg/oracles.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace arith_selberg;

namespace {

QuadForm F(long long a, long long b, long long c) { return {Int(a), Int(b), Int(c)}; }

Mat2 random_sl2(std::mt19937_64& rng, int len, int kmax) {
    std::uniform_int_distribution<int> k(-kmax, kmax);
    Mat2 m{Int(1), Int(0), Int(0), Int(1)};
    for (int i = 0; i < len; ++i) m = m * Mat2{Int(k(rng)), Int(-1), Int(1), Int(0)};
    return m;
}

bool bounded(const Mat2& m, long long bound) {
    for (const Int* x : {&m.a, &m.b, &m.c, &m.d})
        if (abs_value(*x) > bound) return false;
    return true;
}

Mat2 random_hyperbolic(std::mt19937_64& rng, long long bound) {
    for (;;) {
        Mat2 m = random_sl2(rng, 2 + static_cast<int>(rng() % 8), 12);
        if (bounded(m, bound) && abs_value(m.trace()) > 2) return m;
    }
}

}  // namespace

TEST(InvariantsOf, Example) {
    const ClassInvariant inv = invariants_of(Mat2{Int(2), Int(3), Int(1), Int(2)});
    EXPECT_EQ(inv.t, 4);
    EXPECT_EQ(inv.u, 1);
    EXPECT_EQ(inv.Q, F(1, 0, -3));
    EXPECT_EQ(inv.D, 12);
}

TEST(InvariantsOf, RejectsNonHyperbolic) {
    EXPECT_THROW(invariants_of(Mat2{Int(1), Int(1), Int(0), Int(1)}), invalid_input);
    EXPECT_THROW(invariants_of(Mat2{Int(2), Int(1), Int(1), Int(2)}), invalid_input);
    EXPECT_THROW(HyperbolicMatrix(Mat2{Int(0), Int(-1), Int(1), Int(0)}), invalid_input);
}

TEST(ClassList, Examples) {
    EXPECT_EQ(class_list(Int(3), Int(1)).size(), 1u);
    EXPECT_EQ(class_list(Int(4), Int(1)).size(), 2u);
    EXPECT_EQ(class_list(Int(6), Int(2)).size(), 1u);
    EXPECT_THROW(class_list(Int(4), Int(2)), invalid_input);
    EXPECT_THROW(class_list(Int(5), Int(2)), invalid_input);
}

TEST(ClassList, CountMatchesIndependentClassNumbers) {
    for (std::int64_t t = 3; t <= 60; ++t) {
        std::int64_t total = 0;
        for (auto [uD, h] : oracle::trace_class_count(t)) total += h;
        std::int64_t listed = 0;
        for (std::int64_t u = 1; u * u <= t * t - 4; ++u) {
            if ((t * t - 4) % (u * u) != 0 || !is_discriminant((t * t - 4) / (u * u))) continue;
            listed += static_cast<std::int64_t>(class_list(Int(t), Int(u)).size());
        }
        EXPECT_EQ(listed, total) << t;
    }
}

TEST(GammaOf, RoundTripOnRandomMatrices) {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 10000; ++i) {
        const Mat2 g = random_hyperbolic(rng, 1'000'000);
        const ClassInvariant inv = invariants_of(g);
        const Mat2 back = gamma_of(inv.Q, PellSolution{inv.t, inv.u, inv.D}).matrix();
        const Mat2 expect = g.trace() < 0 ? -g : g;
        ASSERT_EQ(back, expect) << g;
    }
}

TEST(GammaOf, InvariantsRecovered) {
    for (std::int64_t D : {5, 8, 12, 13, 21, 40, 60, 145}) {
        const Discriminant d(D);
        for (const QuadForm& q : class_representatives(d))
            for (unsigned j = 1; j <= 4; ++j) {
                const PellSolution s = pell_power(d, j);
                const ClassInvariant inv = invariants_of(gamma_of(q, s));
                EXPECT_EQ(inv.t, s.t);
                EXPECT_EQ(inv.u, s.u);
                EXPECT_EQ(inv.Q, q);
                EXPECT_EQ(inv.D, q.discriminant());
            }
    }
}

TEST(GammaOf, SameFormMultipliesPellSolutions) {
    for (std::int64_t D : {5, 8, 12, 40, 60, 145}) {
        const Discriminant d(D);
        for (const QuadForm& q : class_representatives(d))
            for (unsigned i = 1; i <= 3; ++i)
                for (unsigned j = 1; j <= 3; ++j) {
                    const PellSolution s1 = pell_power(d, i), s2 = pell_power(d, j);
                    const Mat2 prod = gamma_of(q, s1).matrix() * gamma_of(q, s2).matrix();
                    EXPECT_EQ(prod, gamma_of(q, pell_mul(s1, s2)).matrix());
                }
    }
}

// Q of g^-1 gamma g is Q_gamma evaluated at (a x - b y, -c x + d y), g = [[a,b],[c,d]].
TEST(InvariantsOf, ConjugationTransformsForm) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        const Mat2 gamma = random_hyperbolic(rng, 1000);
        Mat2 g = random_sl2(rng, 1 + static_cast<int>(rng() % 5), 6);
        while (!bounded(g, 1000)) g = random_sl2(rng, 2, 3);
        const QuadForm q = invariants_of(gamma).Q;
        const QuadForm qc = invariants_of(inverse_sl2(g) * gamma * g).Q;
        for (long long x = -2; x <= 2; ++x)
            for (long long y = -2; y <= 2; ++y)
                ASSERT_EQ(qc(Int(x), Int(y)), q(g.a * x - g.b * y, -g.c * x + g.d * y));
    }
}

TEST(ClassList, PairwiseInequivalent) {
    for (std::int64_t t = 3; t <= 200; ++t)
        for (std::int64_t u = 1; u * u <= t * t - 4; ++u) {
            if ((t * t - 4) % (u * u) != 0 || !is_discriminant((t * t - 4) / (u * u))) continue;
            const auto list = class_list(Int(t), Int(u));
            for (std::size_t i = 0; i < list.size(); ++i)
                for (std::size_t j = i + 1; j < list.size(); ++j)
                    ASSERT_FALSE(equivalent(invariants_of(list[i]).Q, invariants_of(list[j]).Q)) << t << " " << u;
        }
}
