#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace syzygy;
using namespace syzygy::testing;

namespace {

std::size_t radical_dim(const StructureAlgebra& a) { return a.radical_basis().rows(); }

}  // namespace

TEST(Validate, DualNumbers)
{
    auto a = dual_numbers();
    EXPECT_EQ(a->dim(), 2u);
    EXPECT_TRUE(validate_algebra(*a).ok());
}

TEST(Validate, MissingRadicalIsNotSplit)
{
    auto a = dual_numbers()->with_radical(Matrix(P, 0, 2));
    auto rep = validate_algebra(a);
    ASSERT_FALSE(rep.ok());
    bool found = false;
    for (const auto& v : rep.violations)
        found = found || v.find("quotient not semisimple-split") != std::string::npos;
    EXPECT_TRUE(found);
}

TEST(Validate, BrokenAssociativity)
{
    // b0 = 1, b1 with b1*b1 = b1 but b1 declared nilpotent radical: nilpotency fails.
    auto a = StructureAlgebra::from_dense(P, {"1", "x"},
                                          {{{1, 0}, {0, 1}}, {{0, 1}, {0, 1}}}, Vec{1, 0},
                                          Matrix::from_rows(P, {{0, 1}}), {Vec{1, 0}});
    EXPECT_FALSE(validate_algebra(a).ok());
}

TEST(Validate, WholeCorpus)
{
    for (const auto& [name, a] : small_corpus()) {
        SCOPED_TRACE(name);
        EXPECT_TRUE(validate_algebra(*a).ok());
    }
}

TEST(Quiver, Dimensions)
{
    EXPECT_EQ(from_quiver(QuiverPresentation{{"1"}, {}, {}}, P).dim(), 1u);
    EXPECT_EQ(a2()->dim(), 3u);
    EXPECT_EQ(a3()->dim(), 6u);
    EXPECT_EQ(truncated_loop(2)->dim(), 2u);
    EXPECT_EQ(truncated_loop(3)->dim(), 3u);
    EXPECT_EQ(nakayama_cycle()->dim(), 6u);
    EXPECT_EQ(square_zero()->dim(), 4u + 4u + 1u);  // e1..e4, a,b,c,d, c*d
}

TEST(Quiver, CommutativityRelation)
{
    QuiverPresentation q{{"1", "2", "3", "4"},
                         {{"a", "1", "2"}, {"b", "2", "4"}, {"c", "1", "3"}, {"d", "3", "4"}},
                         {{RelationTerm{1, {"a", "b"}}, RelationTerm{-1, {"c", "d"}}}}};
    auto a = from_quiver(q, P);
    EXPECT_EQ(a.dim(), 9u);
    EXPECT_TRUE(validate_algebra(a).ok());
}

TEST(Quiver, UnboundedLoopIsRejected)
{
    QuiverPresentation q{{"1"}, {{"x", "1", "1"}}, {}};
    try {
        from_quiver(q, P, 6);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotFiniteDimensional);
    }
}

TEST(Quiver, NonAdmissibleRelation)
{
    QuiverPresentation q{{"1", "2"}, {{"a", "1", "2"}}, {{RelationTerm{1, {"a"}}}}};
    try {
        from_quiver(q, P);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotAdmissible);
    }
}

TEST(TrivialExtension, Dimensions)
{
    auto t1 = trivial_extension(*field_algebra());
    EXPECT_EQ(t1.dim(), 2u);
    EXPECT_EQ(radical_dim(t1), 1u);
    EXPECT_EQ(t1.multiply(t1.basis_vector(1), t1.basis_vector(1)), (Vec{0, 0}));

    auto t2 = trivial_extension(*field_pair());
    EXPECT_EQ(t2.dim(), 4u);
    EXPECT_EQ(radical_dim(t2), 2u);

    auto t3 = trivial_extension(*dual_numbers());
    EXPECT_EQ(t3.dim(), 4u);
    EXPECT_EQ(radical_dim(t3), 3u);
    for (const auto& [name, a] : small_corpus()) {
        SCOPED_TRACE(name);
        auto t = trivial_extension(*a);
        EXPECT_TRUE(validate_algebra(t).ok());
        EXPECT_EQ(t.dim(), 2 * a->dim());
    }
}

TEST(TrivialExtension, MutantBreaksAssociativityOrUnit)
{
    auto m = detail::trivial_extension_impl(*field_algebra(), true);
    EXPECT_FALSE(validate_algebra(m).ok());
}

TEST(Triangular, ZeroBimoduleIsProduct)
{
    auto u = dual_numbers(), v = field_algebra();
    auto t = triangular(u, v, zero_bimodule(u, v));
    EXPECT_EQ(t.dim(), 3u);
    EXPECT_TRUE(validate_algebra(t).ok());
}

TEST(Triangular, MismatchedBimoduleThrows)
{
    auto u = dual_numbers(), v = field_algebra();
    try {
        triangular(v, u, zero_bimodule(u, v));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BimoduleMismatch);
    }
}

TEST(Cover, Dimensions)
{
    EXPECT_EQ(build_cover(field_algebra()).dim(), 4u);
    EXPECT_EQ(build_cover(dual_numbers()).dim(), 5u);
    EXPECT_EQ(build_lambda(dual_numbers()).dim(), 5u);
    EXPECT_EQ(build_cover(field_pair()).dim(), 2u + 2u + 4u);
    EXPECT_EQ(build_cover(a2()).dim(), 9u);
}

TEST(Cover, ValidOnCorpus)
{
    for (const auto& [name, a] : small_corpus()) {
        SCOPED_TRACE(name);
        auto c = build_cover(a);
        auto l = build_lambda(a);
        EXPECT_TRUE(validate_algebra(c).ok());
        EXPECT_TRUE(validate_algebra(l).ok());
        EXPECT_EQ(c.dim(), a->dim() + 3 * a->vertex_count());
        // Corners: eAe for the A idempotents recovers A exactly.
        auto e = c.idempotent_sum(corner_vertices(c, false));
        auto corner = corner_algebra(c, e);
        EXPECT_EQ(corner.dim(), a->dim());
        Matrix id = Matrix::identity(a->prime(), a->dim());
        EXPECT_TRUE(canonical_iso_check(*a, corner, id));
    }
}

TEST(Cover, LambdaOppositeMatchesCoverOfOpposite)
{
    for (const auto& [name, a] : small_corpus()) {
        SCOPED_TRACE(name);
        auto lop = opposite(build_lambda(a));
        auto cov = build_cover(share(opposite(*a)));
        EXPECT_TRUE(canonical_iso_check(lop, cov, lambda_op_to_cover_permutation(*a)));
    }
}

TEST(Cover, IsoCheckRejectsWrongMap)
{
    auto a = a2();
    auto lop = opposite(build_lambda(a));
    auto cov = build_cover(share(opposite(*a)));
    EXPECT_FALSE(canonical_iso_check(lop, cov, Matrix::identity(P, lop.dim())));
    try {
        canonical_iso_check(*a, cov, Matrix::identity(P, a->dim()));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
    }
}

TEST(Corner, NonIdempotentThrows)
{
    auto a = dual_numbers();
    try {
        corner_algebra(*a, Vec{0, 1});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotIdempotent);
    }
}

TEST(Nilpotency, Indices)
{
    EXPECT_EQ(nilpotency_index(*truncated_loop(3), truncated_loop(3)->radical_basis()), 3u);
    EXPECT_EQ(nilpotency_index(*a3(), a3()->radical_basis()), 3u);
}
