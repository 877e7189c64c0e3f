#include <arith_selberg/oracles.hpp>
#include <arith_selberg/quadforms.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace arith_selberg;

namespace {

QuadForm F(long long a, long long b, long long c) { return {Int(a), Int(b), Int(c)}; }

// q(p x + q y, r x + s y) for p s - q r = 1.
QuadForm transform(const QuadForm& f, const Int& p, const Int& q, const Int& r, const Int& s) {
    return {f(p, r), 2 * f.a * p * q + f.b * (p * s + q * r) + 2 * f.c * r * s, f(q, s)};
}

std::vector<std::int64_t> discriminants_up_to(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t D = 2; D <= n; ++D)
        if (is_discriminant(D)) out.push_back(D);
    return out;
}

// random element of SL2(Z) as a product of T^k S
std::array<Int, 4> random_sl2(std::mt19937_64& rng, int len, int kmax) {
    std::uniform_int_distribution<int> k(-kmax, kmax);
    Int a = 1, b = 0, c = 0, d = 1;
    for (int i = 0; i < len; ++i) {
        const Int kk = k(rng);
        // (a b; c d) * (k -1; 1 0)
        Int na = a * kk + b, nb = -a, nc = c * kk + d, nd = -c;
        a = na, b = nb, c = nc, d = nd;
    }
    return {a, b, c, d};
}

}  // namespace

TEST(QuadForm, DiscriminantExamples) {
    EXPECT_EQ(discriminant(F(1, 1, -1)), 5);
    EXPECT_EQ(discriminant(F(1, 0, -3)), 12);
    EXPECT_EQ(discriminant(F(2, 0, -5)), 40);
}

TEST(Reduce, Examples) {
    EXPECT_EQ(reduce(F(1, 0, -3)), F(1, 2, -2));
    const QuadForm r = F(1, 2, -2);
    EXPECT_TRUE(is_reduced(r));
    EXPECT_EQ(reduce(r), r);
    EXPECT_THROW(reduce(F(5, 11, 6)), invalid_input);
    EXPECT_THROW(reduce(F(2, 2, -2)), invalid_input);
}

TEST(Reduce, HugeCoefficientsStayInClass) {
    std::mt19937_64 rng(99);
    for (std::int64_t D : {5, 12, 40, 145, 229}) {
        for (const QuadForm& rep : class_representatives(Discriminant(D))) {
            for (int i = 0; i < 20; ++i) {
                auto g = random_sl2(rng, 18, 9);
                ASSERT_EQ(g[0] * g[3] - g[1] * g[2], 1);
                const QuadForm big = transform(rep, g[0], g[1], g[2], g[3]);
                ASSERT_EQ(big.discriminant(), D);
                const QuadForm r = reduce(big);
                EXPECT_TRUE(is_reduced(r));
                EXPECT_TRUE(equivalent(r, rep)) << to_string(big);
            }
        }
    }
}

TEST(Reduce, CyclesHaveEvenLength) {
    for (std::int64_t D : discriminants_up_to(400))
        for (const QuadForm& rep : class_representatives(Discriminant(D)))
            EXPECT_EQ(reduction_cycle(rep).size() % 2, 0u) << D;
}

TEST(Equivalent, Examples) {
    EXPECT_TRUE(equivalent(F(1, 0, -3), F(1, 2, -2)));
    EXPECT_FALSE(equivalent(F(1, 0, -3), F(-1, 0, 3)));
    EXPECT_TRUE(equivalent(F(3, 1, -1), F(3, 1, -1)));
    EXPECT_THROW(equivalent(F(1, 1, -1), F(1, 0, -3)), invalid_input);
}

TEST(ClassNumber, Examples) {
    EXPECT_EQ(class_number(Discriminant(5)), 1);
    EXPECT_EQ(class_number(Discriminant(12)), 2);
    EXPECT_EQ(class_number(Discriminant(40)), 2);
}

TEST(ClassRepresentatives, Examples) {
    const auto r5 = class_representatives(Discriminant(5));
    ASSERT_EQ(r5.size(), 1u);
    EXPECT_TRUE(equivalent(r5[0], F(1, 1, -1)));
    const auto r12 = class_representatives(Discriminant(12));
    ASSERT_EQ(r12.size(), 2u);
    EXPECT_FALSE(equivalent(r12[0], r12[1]));
    for (std::int64_t D : discriminants_up_to(300)) {
        const auto reps = class_representatives(Discriminant(D));
        for (std::size_t i = 0; i < reps.size(); ++i) {
            EXPECT_EQ(reps[i].discriminant(), D);
            EXPECT_TRUE(is_reduced(reps[i]));
            for (std::size_t j = i + 1; j < reps.size(); ++j) EXPECT_LT(reps[i], reps[j]);
        }
    }
}

TEST(IdentityForm, Examples) {
    EXPECT_EQ(identity_form(Discriminant(5)), F(1, 1, -1));
    EXPECT_EQ(identity_form(Discriminant(12)), F(1, 0, -3));
    EXPECT_EQ(identity_form(Discriminant(8)), F(1, 0, -2));
    for (std::int64_t D : discriminants_up_to(500)) EXPECT_EQ(identity_form(Discriminant(D)).discriminant(), D);
}

TEST(Compose, Examples) {
    for (std::int64_t D : {5, 12, 40, 145}) {
        const QuadForm e = identity_form(Discriminant(D));
        for (const QuadForm& q : class_representatives(Discriminant(D))) {
            EXPECT_TRUE(equivalent(compose(e, q), q));
            EXPECT_TRUE(equivalent(compose(q, inverse_class(q)), e));
        }
        EXPECT_TRUE(equivalent(inverse_class(e), e));
    }
    EXPECT_TRUE(equivalent(compose(F(2, 0, -5), F(2, 0, -5)), F(1, 0, -10)));
    EXPECT_THROW(compose(F(1, 1, -1), F(1, 0, -3)), invalid_input);
    EXPECT_EQ(inverse_class(F(1, 1, -1)), F(1, -1, -1));
}

TEST(ClassGroupTable, Examples) {
    EXPECT_EQ(class_group(Discriminant(5)).order(), 1u);
    EXPECT_EQ(class_group(Discriminant(12)).order(), 2u);
    EXPECT_EQ(class_group(Discriminant(40)).order(), 2u);
}

TEST(ClassGroupTable, AxiomsAndOrderUpTo200) {
    for (std::int64_t D : discriminants_up_to(200)) {
        const ClassGroup g = class_group(Discriminant(D));
        EXPECT_TRUE(check_group_axioms(g).ok()) << D;
        EXPECT_EQ(static_cast<std::int64_t>(g.order()), class_number(Discriminant(D)));
        EXPECT_EQ(static_cast<std::int64_t>(g.order()), oracle::zagier_class_number(D)) << D;
    }
}

// Random triples of arbitrary (non-reduced) representatives, composed directly.
TEST(ClassGroupTable, AssociativityOnSampledRepresentatives) {
    std::mt19937_64 rng(5);
    for (std::int64_t D : discriminants_up_to(200)) {
        const ClassGroup g = class_group(Discriminant(D));
        std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
        for (int i = 0; i < 200; ++i) {
            std::array<QuadForm, 3> f;
            for (auto& x : f) {
                auto m = random_sl2(rng, 3, 3);
                x = transform(g.reps[pick(rng)], m[0], m[1], m[2], m[3]);
            }
            const auto lhs = g.class_of(compose(compose(f[0], f[1]), f[2]));
            const auto rhs = g.class_of(compose(f[0], compose(f[1], f[2])));
            ASSERT_EQ(lhs, rhs) << D;
            ASSERT_EQ(g.class_of(compose(f[0], f[1])), g.table[g.class_of(f[0])][g.class_of(f[1])]) << D;
        }
    }
}

TEST(Compose, IndependentOfRepresentativesUpTo120) {
    for (std::int64_t D : discriminants_up_to(120)) {
        const ClassGroup g = class_group(Discriminant(D));
        std::vector<QuadForm> all;
        for (const auto& rep : g.reps) {
            auto cyc = reduction_cycle(rep);
            all.insert(all.end(), cyc.begin(), cyc.end());
        }
        for (const auto& x : all)
            for (const auto& y : all)
                ASSERT_EQ(g.class_of(compose(x, y)), g.table[g.class_of(x)][g.class_of(y)]) << D;
    }
}
