#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "qineq/series.hpp"

using qineq::coeff_t;
using qineq::ProductSpec;
using qineq::Series;

namespace {

// Independent oracle: count multisets of the given parts (parts at different
// positions are distinct) summing to x, by plain backtracking.
std::vector<coeff_t> brute_force_counts(const std::vector<std::int64_t>& parts, std::int64_t degree) {
    std::vector<coeff_t> counts(static_cast<std::size_t>(degree) + 1, 0);
    std::function<void(std::size_t, std::int64_t)> go = [&](std::size_t i, std::int64_t total) {
        if (i == parts.size()) {
            ++counts[static_cast<std::size_t>(total)];
            return;
        }
        for (std::int64_t t = total; t <= degree; t += parts[i]) go(i + 1, t);
    };
    go(0, 0);
    return counts;
}

// Partitions fitting in a box of `rows` parts each at most `cols`, weight q^{step*size}.
std::vector<coeff_t> box_counts(std::int64_t rows, std::int64_t cols, std::int64_t step,
                                std::size_t degree) {
    std::vector<coeff_t> counts(degree + 1, 0);
    std::function<void(std::int64_t, std::int64_t, std::int64_t)> go =
        [&](std::int64_t left, std::int64_t max_part, std::int64_t size) {
            if (static_cast<std::size_t>(size * step) <= degree)
                ++counts[static_cast<std::size_t>(size * step)];
            if (left == 0) return;
            for (std::int64_t part = 1; part <= max_part; ++part) go(left - 1, part, size + part);
        };
    go(rows, cols, 0);
    return counts;
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

Series random_series(std::mt19937& rng, std::size_t degree) {
    std::uniform_int_distribution<coeff_t> d(-9, 9);
    std::vector<coeff_t> c(degree + 1);
    for (auto& v : c) v = d(rng);
    return Series(std::move(c));
}

} // namespace

TEST(Series, CarriesExactlyDegreePlusOneCoefficients) {
    Series s(7);
    EXPECT_EQ(s.degree(), 7u);
    EXPECT_EQ(s.coefficients().size(), 8u);
    EXPECT_THROW(Series(std::vector<coeff_t>{}), std::invalid_argument);
}

TEST(SeriesMul, IdentityAndSquare) {
    const Series s{3, -1, 4, 1, -5};
    EXPECT_EQ(qineq::series_mul(Series::one(4), s), s);
    EXPECT_EQ(qineq::series_mul(Series{1, 1, 0}, Series{1, 1, 0}), (Series{1, 2, 1}));
}

TEST(SeriesMul, PartsOneAndFour) {
    const auto a = qineq::expand_product(ProductSpec{{{1, 1, 1}}}, 9);
    const auto b = qineq::expand_product(ProductSpec{{{4, 1, 1}}}, 9);
    // brute-force count of partitions into parts 1 and 4
    EXPECT_EQ(brute_force_counts({1, 4}, 9), (std::vector<coeff_t>{1, 1, 1, 1, 2, 2, 2, 2, 3, 3}));
    EXPECT_EQ(qineq::series_mul(a, b), Series({1, 1, 1, 1, 2, 2, 2, 2, 3, 3}));
}

TEST(SeriesMul, RejectsMismatchedDegrees) {
    EXPECT_THROW(qineq::series_mul(Series(3), Series(4)), std::invalid_argument);
    EXPECT_THROW(qineq::dominance(Series(3), Series(4)), std::invalid_argument);
}

TEST(SeriesMul, CommutativeAndAssociative) {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + trial % 12;
        const auto a = random_series(rng, n), b = random_series(rng, n), c = random_series(rng, n);
        EXPECT_EQ(qineq::series_mul(a, b), qineq::series_mul(b, a));
        EXPECT_EQ(qineq::series_mul(qineq::series_mul(a, b), c),
                  qineq::series_mul(a, qineq::series_mul(b, c)));
    }
}

TEST(ExpandProduct, EmptyProductIsOne) {
    const ProductSpec spec{{{3, 2, 0}, {1, 1, 0}}};
    EXPECT_EQ(qineq::expand_product(spec, 5), Series({1, 0, 0, 0, 0, 0}));
}

TEST(ExpandProduct, WorkedExampleCounts) {
    // (K,L,m,n,y,z) = (4,2,3,5,2,1)
    const ProductSpec left{{{1, 3, 4}, {10, 15, 2}}};
    const ProductSpec right{{{2, 3, 4}, {5, 15, 2}}};
    EXPECT_EQ(qineq::expand_product(left, 20)[20], 23);
    EXPECT_EQ(qineq::expand_product(right, 20)[20], 17);
}

TEST(ExpandProduct, MatchesBruteForceEnumeration) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::int64_t> base(1, 7), step(1, 6), len(0, 3);
    for (int trial = 0; trial < 40; ++trial) {
        ProductSpec spec;
        const int factors = 1 + trial % 3;
        for (int f = 0; f < factors; ++f) spec.factors.push_back({base(rng), step(rng), len(rng)});
        const std::int64_t N = 60;
        const auto s = qineq::expand_product(spec, N);
        const auto oracle = brute_force_counts(spec.parts(), N);
        ASSERT_EQ(std::vector<coeff_t>(s.coefficients().begin(), s.coefficients().end()), oracle)
            << "trial " << trial;
    }
}

TEST(ExpandProduct, RejectsBadFactors) {
    EXPECT_THROW(qineq::expand_product(ProductSpec{{{0, 1, 2}}}, 4), std::invalid_argument);
    EXPECT_THROW(qineq::expand_product(ProductSpec{{{1, 0, 2}}}, 4), std::invalid_argument);
    EXPECT_THROW(qineq::expand_product(ProductSpec{{{1, 1, -1}}}, 4), std::invalid_argument);
}

TEST(ExpandProduct, DetectsOverflow) {
    // p(500) is far beyond 2^63
    EXPECT_THROW(qineq::expand_product(ProductSpec{{{1, 1, 500}}}, 500), std::overflow_error);
}

TEST(ExpandProduct, StabilizedLengthMatchesLongerProducts) {
    const std::size_t N = 50;
    const auto L = qineq::stabilized_length(5, N);
    EXPECT_EQ(L, 11);
    const auto a = qineq::expand_product(ProductSpec{{{1, 5, L}, {4, 5, L}}}, N);
    const auto b = qineq::expand_product(ProductSpec{{{1, 5, L + 7}, {4, 5, L + 7}}}, N);
    EXPECT_EQ(a, b);
}

TEST(QBinom, SmallCases) {
    for (int k = 0; k < 6; ++k) EXPECT_EQ(qineq::qbinom(k, 0, 1, 8), Series::one(8));
    EXPECT_EQ(qineq::qbinom(2, 1, 1, 3), Series({1, 1, 0, 0}));
    EXPECT_EQ(qineq::qbinom(4, 2, 1, 6), Series({1, 1, 2, 1, 1, 0, 0}));
    EXPECT_THROW(qineq::qbinom(2, 3, 1, 5), std::invalid_argument);
    EXPECT_THROW(qineq::qbinom(2, 1, 0, 5), std::invalid_argument);
}

TEST(QBinom, MatchesBoxCountsAndBinomials) {
    for (std::int64_t t = 0; t <= 9; ++t) {
        for (std::int64_t b = 0; b <= t; ++b) {
            for (std::int64_t step : {1, 2, 3}) {
                const std::size_t N = 40;
                const auto s = qineq::qbinom(t, b, step, N);
                const auto oracle = box_counts(b, t - b, step, N);
                ASSERT_EQ(std::vector<coeff_t>(s.coefficients().begin(), s.coefficients().end()), oracle)
                    << t << " " << b << " " << step;
                EXPECT_EQ(s, qineq::qbinom(t, t - b, step, N));
                for (coeff_t c : s.coefficients()) EXPECT_GE(c, 0);
            }
            const auto full = qineq::qbinom(t, b, 1, static_cast<std::size_t>(b * (t - b)));
            EXPECT_EQ(full.sum(), binomial(t, b));
        }
    }
}

TEST(Dominance, Basics) {
    const Series s{1, 3, 2};
    EXPECT_TRUE(qineq::dominance(s, s).holds);
    EXPECT_TRUE(qineq::dominance(Series{1, 2}, Series{1, 1}).holds);
    const auto d = qineq::dominance(Series{1, 1, 5, 0}, Series{1, 1, 6, 1});
    ASSERT_FALSE(d.holds);
    EXPECT_EQ(d.exponent, 2u);
    EXPECT_EQ(d.lhs, 5);
    EXPECT_EQ(d.rhs, 6);
}

TEST(Dominance, MainInequalityWorkedExample) {
    const ProductSpec left{{{1, 3, 4}, {10, 15, 2}}};
    const ProductSpec right{{{2, 3, 4}, {5, 15, 2}}};
    EXPECT_TRUE(qineq::dominance(qineq::expand_product(left, 40), qineq::expand_product(right, 40)).holds);
}

TEST(SeriesHelpers, ShiftAndDilate) {
    const Series s{1, 2, 3};
    EXPECT_EQ(qineq::series_shift(s, 1), Series({0, 1, 2}));
    EXPECT_EQ(qineq::series_dilate(s, 2), Series({1, 0, 2}));
    EXPECT_EQ(qineq::series_sub(s, s), Series(2));
}
