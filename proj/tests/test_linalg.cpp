#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace syzygy;
using syzygy::testing::random_matrix;

TEST(RowReduce, IdentityIsFixed)
{
    auto e = row_reduce(Matrix::identity(7, 3));
    EXPECT_EQ(e.reduced, Matrix::identity(7, 3));
    EXPECT_EQ(e.rank, 3u);
    EXPECT_EQ(e.pivot_columns, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(RowReduce, ZeroMatrix)
{
    auto e = row_reduce(Matrix(7, 2, 2));
    EXPECT_TRUE(e.reduced.is_zero());
    EXPECT_EQ(e.rank, 0u);
    EXPECT_TRUE(e.pivot_columns.empty());
}

TEST(RowReduce, DependentRowsModFive)
{
    auto e = row_reduce(Matrix::from_rows(5, {{1, 2}, {2, 4}}));
    EXPECT_EQ(e.reduced, Matrix::from_rows(5, {{1, 2}, {0, 0}}));
    EXPECT_EQ(e.rank, 1u);
}

TEST(KernelBasis, InjectiveAndZeroMaps)
{
    EXPECT_EQ(kernel_basis(Matrix::identity(11, 4)).rows(), 0u);
    EXPECT_EQ(kernel_basis(Matrix(11, 2, 2)).rows(), 2u);
}

TEST(KernelBasis, ColumnOfOnesModSeven)
{
    auto k = kernel_basis(Matrix::from_rows(7, {{1}, {1}}));
    EXPECT_EQ(k, Matrix::from_rows(7, {{1, 6}}));
}

TEST(SolveLinear, IdentityReturnsRightHandSide)
{
    Matrix b = Matrix::from_rows(13, {{3, 4, 5}});
    EXPECT_EQ(solve_linear(Matrix::identity(13, 3), b), b);
}

TEST(SolveLinear, InconsistentSystemThrows)
{
    try {
        solve_linear(Matrix(5, 2, 2), Matrix::from_rows(5, {{1, 0}}));
        FAIL() << "expected Inconsistent";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Inconsistent);
    }
}

TEST(SolveLinear, ParticularSolutionVerifies)
{
    Matrix m = Matrix::from_rows(5, {{1, 0}, {1, 0}});
    Matrix b = Matrix::from_rows(5, {{1, 0}});
    Matrix x = solve_linear(m, b);
    EXPECT_EQ(x * m, b);
    EXPECT_EQ(x, Matrix::from_rows(5, {{1, 0}}));  // free variable set to zero
}

TEST(LinalgProperties, RandomMatrices)
{
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint32_t p = trial % 2 ? 3 : 32003;
        std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
        Matrix m = random_matrix(rng, p, r, c, trial % 3 ? 0.4 : 1.0);
        auto e = row_reduce(m);
        EXPECT_EQ(row_reduce(e.reduced).reduced, e.reduced);
        Matrix k = kernel_basis(m);
        EXPECT_EQ(e.rank + k.rows(), r);
        if (k.rows())
            EXPECT_TRUE((k * m).is_zero());
        Matrix x0 = random_matrix(rng, p, 2, r);
        Matrix b = x0 * m;
        EXPECT_EQ(solve_linear(m, b) * m, b);
    }
}

TEST(Inverse, RoundTrip)
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Matrix m = random_matrix(rng, 32003, 5, 5);
        auto inv = inverse(m);
        if (!inv)
            continue;
        EXPECT_EQ(*inv * m, Matrix::identity(32003, 5));
    }
    EXPECT_FALSE(inverse(Matrix(5, 2, 2)).has_value());
}
