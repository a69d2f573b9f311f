#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace syzygy;

namespace {

Polynomial poly(std::uint32_t p, std::vector<std::int64_t> c) { return Polynomial::from_ints(p, c); }

Polynomial expand(std::uint32_t p, const std::vector<Factor>& fs)
{
    Polynomial r = Polynomial::constant(p, 1);
    for (const auto& f : fs)
        for (unsigned i = 0; i < f.multiplicity; ++i)
            r = r * f.factor;
    return r;
}

// Oracle: trial division by every monic polynomial of degree 1..deg/2.
bool brute_force_irreducible(const Polynomial& f)
{
    const auto p = f.prime();
    const long d = f.degree();
    for (long k = 1; 2 * k <= d; ++k) {
        std::size_t count = 1;
        for (long i = 0; i < k; ++i)
            count *= p;
        for (std::size_t code = 0; code < count; ++code) {
            Vec c(k + 1, 0);
            std::size_t x = code;
            for (long i = 0; i < k; ++i) {
                c[i] = static_cast<Scalar>(x % p);
                x /= p;
            }
            c[k] = 1;
            if ((f % Polynomial(p, c)).is_zero())
                return false;
        }
    }
    return d >= 1;
}

}  // namespace

TEST(MinimalPolynomial, Identity)
{
    EXPECT_EQ(minimal_polynomial(Matrix::identity(7, 3)), poly(7, {-1, 1}));
}

TEST(MinimalPolynomial, Zero)
{
    EXPECT_EQ(minimal_polynomial(Matrix(7, 3, 3)), poly(7, {0, 1}));
}

TEST(MinimalPolynomial, NilpotentJordanBlock)
{
    Matrix j = Matrix::from_rows(7, {{0, 1}, {0, 0}});
    EXPECT_FALSE(j.is_zero());  // t does not annihilate
    EXPECT_EQ(minimal_polynomial(j), poly(7, {0, 0, 1}));
}

TEST(MinimalPolynomial, AnnihilatesAndIsMinimal)
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const std::uint32_t p = trial % 2 ? 5 : 32003;
        // Block structure with repeated eigenvalues makes the minimal polynomial nontrivial.
        Matrix m = syzygy::testing::random_matrix(rng, p, 4, 4, 0.3);
        m = Matrix::block_diagonal(p, std::vector<Matrix>{m, m});
        auto mp = minimal_polynomial(m);
        EXPECT_EQ(mp.leading(), 1u);
        EXPECT_TRUE(mp.evaluate(m).is_zero());
        for (const auto& f : factor_polynomial(mp))
            EXPECT_FALSE((mp / f.factor).evaluate(m).is_zero());
    }
}

TEST(FactorPolynomial, SquareOfT)
{
    auto fs = factor_polynomial(poly(11, {0, 0, 1}));
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].factor, poly(11, {0, 1}));
    EXPECT_EQ(fs[0].multiplicity, 2u);
}

TEST(FactorPolynomial, TSquaredPlusOneModFive)
{
    auto fs = factor_polynomial(poly(5, {1, 0, 1}));
    ASSERT_EQ(fs.size(), 2u);
    EXPECT_EQ(fs[0].factor, poly(5, {2, 1}));
    EXPECT_EQ(fs[1].factor, poly(5, {3, 1}));
    EXPECT_EQ(fs[0].multiplicity, 1u);
    EXPECT_EQ(fs[1].multiplicity, 1u);
}

TEST(FactorPolynomial, IrreducibleOverTwo)
{
    auto fs = factor_polynomial(poly(2, {1, 1, 1}));
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].factor, poly(2, {1, 1, 1}));
    EXPECT_EQ(fs[0].multiplicity, 1u);
}

TEST(FactorPolynomial, ReexpansionAndIrreducibilityProperty)
{
    std::mt19937_64 rng(11);
    for (std::uint32_t p : {2u, 3u, 5u, 32003u}) {
        for (int trial = 0; trial < 40; ++trial) {
            std::size_t deg = 1 + rng() % 6;
            Vec c(deg + 1);
            for (auto& x : c)
                x = static_cast<Scalar>(rng() % p);
            c[deg] = 1;
            Polynomial f(p, c);
            // Occasionally square a piece to exercise multiplicities.
            if (trial % 4 == 0)
                f = f * Polynomial(p, Vec{static_cast<Scalar>(rng() % p), 1}) *
                    Polynomial(p, Vec{static_cast<Scalar>(rng() % p), 1});
            auto fs = factor_polynomial(f);
            EXPECT_EQ(expand(p, fs), f.monic());
            if (p < 32003)
                for (const auto& x : fs)
                    EXPECT_TRUE(brute_force_irreducible(x.factor));
        }
    }
}

TEST(CoprimeSplit, TAndTMinusOne)
{
    auto f = poly(7, {0, 1}), g = poly(7, {-1, 1});
    auto [u, v] = coprime_split(f, g);
    EXPECT_TRUE((u * f + v * g).is_one());
    // t - (t - 1) = 1: u = 1, v = -1 (the sign-normalized form of -t + (t-1) = -1).
    EXPECT_EQ(u, poly(7, {1}));
    EXPECT_EQ(v, poly(7, {-1}));
}

TEST(CoprimeSplit, UnitFirstArgument)
{
    auto [u, v] = coprime_split(poly(7, {1}), poly(7, {3, 0, 2}));
    EXPECT_EQ(u, poly(7, {1}));
    EXPECT_TRUE(v.is_zero());
}

TEST(CoprimeSplit, NotCoprimeThrows)
{
    try {
        coprime_split(poly(7, {0, 1}), poly(7, {0, 1}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotCoprime);
    }
}

TEST(CoprimeSplit, BezoutIdentityProperty)
{
    std::mt19937_64 rng(5);
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        Vec a(1 + rng() % 5), b(1 + rng() % 5);
        for (auto& x : a)
            x = static_cast<Scalar>(rng() % 101);
        for (auto& x : b)
            x = static_cast<Scalar>(rng() % 101);
        Polynomial f(101, a), g(101, b);
        if (f.is_zero() || g.is_zero() || !gcd(f, g).is_one())
            continue;
        auto [u, v] = coprime_split(f, g);
        EXPECT_TRUE((u * f + v * g - Polynomial::constant(101, 1)).is_zero());
        ++checked;
    }
    EXPECT_GT(checked, 20);
}
