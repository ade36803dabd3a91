#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "ghm/generate.hpp"
#include "ghm/metric_space.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace ghm {
namespace {

using test::ints;
using test::kind_of;
using test::q;

TEST(Scalar, ParsesExactLiterals) {
    EXPECT_EQ(Scalar::parse("1/3"), q(1, 3));
    EXPECT_EQ(Scalar::parse("0.1"), q(1, 10));
    EXPECT_EQ(Scalar::parse("-2.50"), q(-5, 2));
    EXPECT_EQ(Scalar::parse("2.5e-3"), q(1, 400));
    EXPECT_EQ(Scalar::parse("4/6").str(), "2/3");
    EXPECT_EQ(Scalar::parse("7").str(), "7");
    for (const char* bad : {"", "1/0", "abc", "1.2.3", "1/", "/2", "--1", "1e"}) {
        EXPECT_EQ(kind_of([&] { Scalar::parse(bad); }), ErrorKind::ParseError) << bad;
    }
}

TEST(Scalar, StringRoundTripIsExact) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        const long num = static_cast<long>(uniform_below(rng, 2001)) - 1000;
        const long den = static_cast<long>(uniform_below(rng, 97)) + 1;
        const Scalar v = q(num, den);
        EXPECT_EQ(Scalar::parse(v.str()), v);
    }
}

TEST(Validate, AcceptsSmallestNondegenerateMetric) {
    const auto x = validate({"a", "b"}, ints({{0, 1}, {1, 0}}));
    EXPECT_EQ(x.size(), 2U);
    EXPECT_EQ(x.d(0, 1), Scalar(1));
}

TEST(Validate, ReportsTheOffendingEntries) {
    std::vector<std::size_t> at;
    EXPECT_EQ(kind_of([] { validate({"a", "b"}, ints({{0, 1}, {2, 0}})); }, &at), ErrorKind::AsymmetricMatrix);
    EXPECT_EQ(at, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(kind_of([] { validate({"a", "b", "c"}, ints({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}})); }, &at),
              ErrorKind::TriangleViolation);
    EXPECT_EQ(at, (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_EQ(kind_of([] { validate({}, {}); }), ErrorKind::EmptySpace);
    EXPECT_EQ(kind_of([] { validate({"a", "b"}, ints({{0, 0}, {0, 0}})); }), ErrorKind::ZeroOffDiagonal);
    EXPECT_EQ(kind_of([] { validate({"a", "b"}, ints({{1, 1}, {1, 0}})); }, &at), ErrorKind::NonzeroDiagonal);
    EXPECT_EQ(at, (std::vector<std::size_t>{0}));
    EXPECT_EQ(kind_of([] { validate({"a", "b"}, ints({{0, -1}, {-1, 0}})); }), ErrorKind::NegativeDistance);
    EXPECT_EQ(kind_of([] { validate({"a", "a"}, ints({{0, 1}, {1, 0}})); }), ErrorKind::DuplicateLabel);
    EXPECT_EQ(kind_of([] { validate({"a", "b"}, ints({{0, 1}})); }), ErrorKind::ShapeMismatch);
}

TEST(ValidateSemimetric, AllowsZeroOffDiagonal) {
    EXPECT_NO_THROW(validate_semimetric({"a", "b"}, ints({{0, 0}, {0, 0}})));
    EXPECT_NO_THROW(validate_semimetric({"a", "b"}, ints({{0, 1}, {1, 0}})));
    EXPECT_EQ(kind_of([] { validate_semimetric({"a", "b", "c"}, ints({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}})); }),
              ErrorKind::TriangleViolation);
}

TEST(Validate, AgreesWithTripleLoopOracleOnRandomMatrices) {
    std::mt19937_64 rng(11);
    int accepted = 0;
    for (int t = 0; t < 3000; ++t) {
        const std::size_t n = 1 + uniform_below(rng, 5);
        Matrix d = oracle::random_matrix(rng, n, 0, 4, 2);
        // Occasionally break symmetry or the diagonal as well.
        if (n > 1 && uniform_below(rng, 10) == 0) d[0][1] += Scalar(1);
        if (uniform_below(rng, 20) == 0) d[n - 1][n - 1] = Scalar(1);
        for (bool semi : {false, true}) {
            const bool expect = oracle::is_metric(d, semi);
            bool got = true;
            try {
                if (semi) {
                    validate_semimetric(oracle::labels(n), d);
                } else {
                    validate(oracle::labels(n), d);
                }
            } catch (const Error&) {
                got = false;
            }
            EXPECT_EQ(got, expect);
            accepted += got ? 1 : 0;
        }
    }
    EXPECT_GT(accepted, 100);
}

TEST(QuotientZero, MergesZeroDistanceClasses) {
    const auto two = quotient_zero(validate_semimetric({"a", "b"}, ints({{0, 0}, {0, 0}})));
    EXPECT_EQ(two.space.size(), 1U);
    EXPECT_EQ(two.projection, (std::vector<std::size_t>{0, 0}));

    const auto x = validate({"a", "b"}, ints({{0, 2}, {2, 0}}));
    const auto same = quotient_zero(x.as_semimetric());
    EXPECT_TRUE(same.space.same_distances(x));
    EXPECT_EQ(same.projection, (std::vector<std::size_t>{0, 1}));
}

TEST(QuotientZero, InducedDistanceIsRepresentativeIndependent) {
    // d(a,b) = 0, d(a,c) = d(b,c) = 1.
    const auto s = validate_semimetric({"a", "b", "c"}, ints({{0, 0, 1}, {0, 0, 1}, {1, 1, 0}}));
    const auto qz = quotient_zero(s);
    ASSERT_EQ(qz.space.size(), 2U);
    EXPECT_EQ(qz.space.d(0, 1), Scalar(1));
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(qz.space.d(qz.projection[i], qz.projection[j]), s.d(i, j));
    }
}

TEST(QuotientZero, RandomSemimetricsProjectExactly) {
    std::mt19937_64 rng(5);
    int tried = 0;
    while (tried < 300) {
        const std::size_t n = 1 + uniform_below(rng, 6);
        Matrix d = oracle::random_matrix(rng, n, 0, 3, 1);
        if (!oracle::is_metric(d, true)) continue;
        ++tried;
        const auto s = validate_semimetric(oracle::labels(n), d);
        const auto qz = quotient_zero(s);
        EXPECT_TRUE(oracle::is_metric(qz.space.matrix()));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                EXPECT_EQ(qz.space.d(qz.projection[i], qz.projection[j]), s.d(i, j));
            }
        }
    }
}

TEST(IsIsometric, FindsRelabelingWitness) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        const auto x = oracle::random_metric(rng, 1 + uniform_below(rng, 7));
        const auto perm = oracle::random_permutation(rng, x.size());
        const auto y = relabel(x, perm);
        const auto w = is_isometric(x, y);
        ASSERT_TRUE(w.has_value());
        for (std::size_t i = 0; i < x.size(); ++i) {
            for (std::size_t j = 0; j < x.size(); ++j) EXPECT_EQ(y.d((*w)[i], (*w)[j]), x.d(i, j));
        }
        EXPECT_TRUE(is_isometric(y, x).has_value());
    }
}

TEST(IsIsometric, RejectsDifferentDiameters) {
    EXPECT_FALSE(is_isometric(oracle::two_points(Scalar(1)), oracle::two_points(Scalar(2))).has_value());
}

TEST(IsIsometric, EqualDifferenceMultisetsAreNotEnough) {
    std::vector<Scalar> a, b;
    for (long v : {0, 1, 4, 10, 12, 17}) a.emplace_back(v);
    for (long v : {0, 1, 8, 11, 13, 17}) b.emplace_back(v);
    const auto x = oracle::line_space(a);
    const auto y = oracle::line_space(b);
    // Same multiset of pairwise distances...
    std::vector<Scalar> dx, dy;
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 6; ++j) {
            dx.push_back(x.d(i, j));
            dy.push_back(y.d(i, j));
        }
    }
    std::sort(dx.begin(), dx.end());
    std::sort(dy.begin(), dy.end());
    ASSERT_EQ(dx, dy);
    // ...but no isometry, confirmed over all 6! maps.
    ASSERT_FALSE(oracle::isometric_by_permutation(x, y));
    EXPECT_FALSE(is_isometric(x, y).has_value());
    EXPECT_FALSE(is_isometric(y, x).has_value());
}

TEST(IsIsometric, AgreesWithPermutationOracle) {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 400; ++t) {
        const std::size_t n = 1 + uniform_below(rng, 5);
        const auto x = oracle::random_metric(rng, n, 3, 1);
        const auto y = oracle::random_metric(rng, n, 3, 1);
        EXPECT_EQ(is_isometric(x, y).has_value(), oracle::isometric_by_permutation(x, y));
        EXPECT_EQ(is_isometric(x, y).has_value(), is_isometric(y, x).has_value());
    }
}

TEST(Canonicalize, OnePoint) {
    const auto c = canonicalize(oracle::one_point());
    EXPECT_EQ(c.matrix, (std::vector<Scalar>{Scalar(0)}));
}

TEST(Canonicalize, ThreePointExampleMatchesEnumeration) {
    // d01 = 1, d02 = 2, d12 = 2.
    const auto x = validate({"a", "b", "c"}, ints({{0, 1, 2}, {1, 0, 2}, {2, 2, 0}}));
    const auto c = canonicalize(x);
    const std::vector<Scalar> expect{Scalar(0), Scalar(1), Scalar(2), Scalar(1), Scalar(0),
                                     Scalar(2), Scalar(2), Scalar(2), Scalar(0)};
    EXPECT_EQ(c.matrix, expect);
    EXPECT_EQ(c.matrix, oracle::canonical_by_permutation(x));
    EXPECT_EQ(c.permutation, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Canonicalize, MatchesFullEnumerationAndIsRelabelingInvariant) {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 1 + uniform_below(rng, 6);
        const auto x = oracle::random_metric(rng, n, 3, 1);
        const auto c = canonicalize(x);
        ASSERT_EQ(c.matrix, oracle::canonical_by_permutation(x));
        // The witness permutation reproduces the matrix.
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(c.matrix[i * n + j], x.d(c.permutation[i], c.permutation[j]));
        }
        const auto y = relabel(x, oracle::random_permutation(rng, n));
        EXPECT_EQ(canonicalize(y), c);
    }
}

TEST(Canonicalize, AgreesWithIsometryDecision) {
    std::mt19937_64 rng(29);
    for (int t = 0; t < 400; ++t) {
        const std::size_t n = 1 + uniform_below(rng, 6);
        const auto x = oracle::random_metric(rng, n, 2, 1);
        const auto y = uniform_below(rng, 2) == 0 ? relabel(x, oracle::random_permutation(rng, n))
                                                   : oracle::random_metric(rng, n, 2, 1);
        EXPECT_EQ(canonicalize(x) == canonicalize(y), is_isometric(x, y).has_value());
    }
}

TEST(Canonicalize, HandlesHighlySymmetricSpacesAtTheBound) {
    Matrix d(10, std::vector<Scalar>(10, Scalar(1)));
    for (std::size_t i = 0; i < 10; ++i) d[i][i] = Scalar(0);
    const auto equilateral = validate(oracle::labels(10), d);
    const auto c = canonicalize(equilateral);
    std::vector<Scalar> flat;
    for (const auto& row : d) flat.insert(flat.end(), row.begin(), row.end());
    EXPECT_EQ(c.matrix, flat);
    const auto cycle = generate("cycle", {{"n", "10"}}, 0);
    EXPECT_EQ(canonicalize(relabel(cycle, std::vector<std::size_t>{3, 1, 4, 9, 5, 2, 6, 8, 7, 0})),
              canonicalize(cycle));
}

TEST(Canonicalize, RefusesAboveTheBound) {
    const auto x = generate("path", {{"n", "11"}}, 0);
    EXPECT_EQ(kind_of([&] { canonicalize(x); }), ErrorKind::SizeLimitExceeded);
    EXPECT_NO_THROW(canonicalize(x, CanonicalOptions{11}));
}

TEST(DisjointUnion, BuildsCandidateSemimetric) {
    const auto pt = oracle::one_point();
    const auto u = disjoint_union(pt, pt, {{Scalar(0)}});
    EXPECT_EQ(u.size(), 2U);
    EXPECT_EQ(u.d(0, 1), Scalar(0));

    const auto pair = oracle::two_points(Scalar(1));
    const auto ok = disjoint_union(pt, pair, {{q(1, 2), q(1, 2)}});
    EXPECT_TRUE(oracle::is_metric(ok.matrix(), true));
    EXPECT_NO_THROW(disjoint_union(pt, pair, {{q(1, 4), Scalar(1)}}));

    std::vector<std::size_t> at;
    EXPECT_EQ(kind_of([&] { disjoint_union(pt, pair, {{q(1, 4), Scalar(2)}}); }, &at), ErrorKind::TriangleViolation);
    // c(x, y2) = 2 > c(x, y1) + d(y1, y2) = 5/4, union indices x=0, y1=1, y2=2.
    EXPECT_EQ(at, (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_EQ(kind_of([&] { disjoint_union(pt, pair, {{Scalar(1)}}); }), ErrorKind::ShapeMismatch);
}

TEST(Diam, Examples) {
    EXPECT_EQ(diam(oracle::one_point()), Scalar(0));
    EXPECT_EQ(diam(oracle::two_points(Scalar(3))), Scalar(3));
    EXPECT_EQ(diam(generate("path", {{"n", "4"}}, 0)), Scalar(3));
}

TEST(Embedding, RejectsNonIsometricMaps) {
    const auto x = oracle::two_points(Scalar(1));
    const auto y = generate("path", {{"n", "3"}}, 0);
    EXPECT_NO_THROW(Embedding(x, y, {0, 1}));
    EXPECT_EQ(kind_of([&] { Embedding(x, y, {0, 2}); }), ErrorKind::NotIsometric);
    EXPECT_EQ(kind_of([&] { Embedding(x, y, {0, 5}); }), ErrorKind::IndexOutOfRange);
    const auto image = Embedding(x, y, {2, 1}).range();
    EXPECT_EQ(image, (std::vector<std::size_t>{1, 2}));
}

}  // namespace
}  // namespace ghm
