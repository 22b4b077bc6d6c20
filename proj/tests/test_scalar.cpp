#include "support.hpp"

#include <gtest/gtest.h>

using namespace darboux;
using testing_support::kCases;
using testing_support::Rng;

TEST(Rational, ParsesIntegersAndFractions) {
    EXPECT_EQ(parse_rational("7"), Rational(7));
    EXPECT_EQ(parse_rational(" -3/6 "), Rational(-1, 2));
    EXPECT_EQ(to_string(parse_rational("4/2")), "2");
}

TEST(Rational, RejectsMalformedText) {
    EXPECT_THROW(parse_rational("1/0"), Error);
    EXPECT_THROW(parse_rational("abc"), Error);
    EXPECT_THROW(parse_rational("1.5"), Error);
    EXPECT_THROW(parse_rational(""), Error);
}

TEST(Scalar, SquareRootsAreReducedToSquarefreeRadicands) {
    EXPECT_EQ(Scalar::sqrt_of(8).str(), "2*sqrt(2)");
    EXPECT_EQ(Scalar::sqrt_of(9).str(), "3");
    EXPECT_EQ(Scalar::sqrt_of(Rational(1, 2)).str(), "1/2*sqrt(2)");
    Scalar i6 = Scalar::sqrt_of(-6);
    EXPECT_FALSE(i6.is_real());
    EXPECT_EQ(i6 * i6, Scalar(-6));
}

TEST(Scalar, PrintsRationalsAsFractions) {
    EXPECT_EQ(Scalar(Rational(-3, 4)).str(), "-3/4");
    EXPECT_EQ(Scalar(Rational(1), Rational(-2), 6).str(), "1 - 2*sqrt(6)");
}

TEST(Scalar, MixingRadicandsIsAnError) {
    EXPECT_THROW(Scalar::sqrt_of(2) + Scalar::sqrt_of(3), RadicandMismatch);
}

TEST(Scalar, ConjugateAndRealImaginaryParts) {
    Scalar z(Rational(1), Rational(2), -1);  // 1 + 2i
    EXPECT_EQ(z * z.conj(), Scalar(5));
    EXPECT_EQ(z.re(), Scalar(1));
    EXPECT_EQ(z.im(), Scalar(2));
}

// Field axioms in Q(sqrt m) with the norm (a + b sqrt m)(a - b sqrt m)
// = a^2 - m b^2 as an independent check on multiplication.
class FieldAxioms : public ::testing::TestWithParam<long> {};

TEST_P(FieldAxioms, HoldExactly) {
    long m = GetParam();
    Rng rng(1000 + static_cast<unsigned>(m + 100));
    // m = 0 is plain Q
    auto draw = [&] { return m == 0 ? Scalar(rng.rational(9)) : Scalar(rng.rational(9), rng.rational(9), m); };
    for (int k = 0; k < kCases; ++k) {
        Scalar a = draw(), b = draw(), c = draw();
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a - a, Scalar(0));
        EXPECT_EQ(a * a.conj(), Scalar(a.a() * a.a() - m * a.b() * a.b()));
        if (!a.is_zero()) {
            EXPECT_EQ(a * a.inverse(), Scalar(1));
            EXPECT_EQ((b / a) * a, b);
        }
        EXPECT_EQ(a.pow(3), a * a * a);
    }
}

INSTANTIATE_TEST_SUITE_P(Radicands, FieldAxioms, ::testing::Values(0L, 2L, 6L, -1L, -6L));

TEST(Scalar, DoubleValueMatchesRealEmbedding) {
    Rng rng(7);
    for (int k = 0; k < kCases; ++k) {
        Rational a = rng.rational(), b = rng.rational();
        Scalar s(a, b, 2);
        EXPECT_NEAR(s.to_double(), a.get_d() + b.get_d() * std::sqrt(2.0), 1e-12);
    }
}
