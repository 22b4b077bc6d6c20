#include "support.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace darboux;
using testing_support::kCases;
using testing_support::Rng;

namespace {

// Leibniz expansion over all permutations.
Scalar leibniz(const SMatrix& m) {
    size_t n = m.rows();
    std::vector<size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Scalar total;
    do {
        int inversions = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
        Scalar term(inversions % 2 ? -1 : 1);
        for (size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

SMatrix random_matrix(Rng& rng, size_t rows, size_t cols, int zero_bias = 0) {
    SMatrix m(rows, cols);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) m(i, j) = rng.integer(0, 3) < zero_bias ? Scalar() : Scalar(rng.rational());
    return m;
}

}  // namespace

TEST(Linalg, RrefOfKnownMatrix) {
    SMatrix m{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
    auto r = rref(m);
    EXPECT_EQ(r.pivots, (std::vector<size_t>{0, 1}));
    EXPECT_EQ(rank(m), 2u);
    auto ns = nullspace(m);
    ASSERT_EQ(ns.size(), 1u);
    EXPECT_EQ(ns[0], (Vec{1, 1, -1}));
}

TEST(Linalg, InconsistentSystemHasNoParticularSolution) {
    SMatrix a{{1, 1}, {2, 2}};
    EXPECT_FALSE(solve_linear(a, {1, 3}).particular.has_value());
}

TEST(Linalg, CharacteristicPolynomialOfJacobiMatrix) {
    // roots 2, 3, 6
    SMatrix a{{3, -1, 1}, {-1, 5, -1}, {1, -1, 3}};
    EXPECT_EQ(char_poly(a), (std::vector<Scalar>{-36, 36, -11, 1}));
}

TEST(LinalgProperty, DeterminantMatchesLeibniz) {
    Rng rng(21);
    for (int k = 0; k < kCases; ++k) {
        size_t n = rng.integer(1, 4);
        auto m = random_matrix(rng, n, n, k % 3);
        EXPECT_EQ(determinant(m), leibniz(m));
    }
}

TEST(LinalgProperty, SolveAndNullspaceAreExact) {
    Rng rng(22);
    for (int k = 0; k < kCases; ++k) {
        size_t rows = rng.integer(1, 4), cols = rng.integer(1, 5);
        auto a = random_matrix(rng, rows, cols, k % 3);
        Vec x(cols);
        for (auto& v : x) v = Scalar(rng.rational());
        Vec b = a * x;
        auto sol = solve_linear(a, b);
        ASSERT_TRUE(sol.particular.has_value());
        EXPECT_EQ(a * *sol.particular, b);
        for (auto& v : sol.nullspace) EXPECT_TRUE(is_zero_vec(a * v));
        EXPECT_EQ(sol.rank + sol.nullspace.size(), cols);
        EXPECT_EQ(sol.rank, rank(a.transpose()));
    }
}

TEST(LinalgProperty, PolynomialDeterminantMatchesPointwise) {
    Ring r = testing_support::xy();
    Rng rng(23);
    for (int k = 0; k < kCases; ++k) {
        size_t n = rng.integer(1, 3);
        PMatrix m(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) m(i, j) = rng.poly(r, {0, 1}, 2, 3);
        Poly d = det_poly(m);
        std::vector<Scalar> pt{Scalar(rng.rational()), Scalar(rng.rational()), Scalar(rng.rational())};
        SMatrix at(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) at(i, j) = m(i, j).eval(pt);
        EXPECT_EQ(d.ring() ? d.eval(pt) : Scalar(), leibniz(at));
    }
}
