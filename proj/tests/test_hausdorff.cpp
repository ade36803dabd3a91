#include <gtest/gtest.h>

#include <random>

#include "ghm/hausdorff.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace ghm {
namespace {

using Idx = std::vector<std::size_t>;
using test::kind_of;

FiniteMetricSpace line4() {
    return oracle::line_space({Scalar(0), Scalar(1), Scalar(2), Scalar(3)});
}

std::vector<Idx> nonempty_subsets(std::size_t n) {
    std::vector<Idx> out;
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        Idx s;
        for (std::size_t i = 0; i < n; ++i) {
            if ((mask >> i) & 1U) s.push_back(i);
        }
        out.push_back(s);
    }
    return out;
}

TEST(Hausdorff, Examples) {
    const auto x = line4();
    EXPECT_EQ(hausdorff_dist(x, Idx{1, 2}, Idx{1, 2}), Scalar(0));
    EXPECT_EQ(hausdorff_dist(x, Idx{0, 1}, Idx{2, 3}), Scalar(2));
    EXPECT_EQ(hausdorff_dist(x, Idx{0}, Idx{0, 3}), Scalar(3));
    EXPECT_EQ(directed_hausdorff(x, Idx{0}, Idx{0, 3}), Scalar(0));
    EXPECT_EQ(directed_hausdorff(x, Idx{0, 3}, Idx{0}), Scalar(3));
}

TEST(Hausdorff, Errors) {
    const auto x = line4();
    EXPECT_EQ(kind_of([&] { hausdorff_dist(x, Idx{}, Idx{1}); }), ErrorKind::EmptySubset);
    EXPECT_EQ(kind_of([&] { hausdorff_dist(x, Idx{0}, Idx{4}); }), ErrorKind::IndexOutOfRange);
    EXPECT_EQ(kind_of([&] { in_neighborhood(x, Idx{0}, Idx{}, Scalar(1)); }), ErrorKind::EmptySubset);
}

TEST(InNeighborhood, Examples) {
    const auto x = line4();
    EXPECT_TRUE(in_neighborhood(x, Idx{0, 2}, Idx{3}, diam(x)));
    EXPECT_FALSE(in_neighborhood(x, Idx{0}, Idx{3}, Scalar(2)));
    EXPECT_TRUE(in_neighborhood(x, Idx{0, 1}, Idx{2, 3}, Scalar(2)));
}

TEST(Hausdorff, ExhaustiveSubsetPropertiesOnSmallAmbients) {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 12; ++t) {
        const auto x = oracle::random_metric(rng, 2 + static_cast<std::size_t>(t % 4));
        const auto subsets = nonempty_subsets(x.size());
        for (const auto& a : subsets) {
            for (const auto& b : subsets) {
                const Scalar ab = hausdorff_dist(x, a, b);
                EXPECT_EQ(ab, hausdorff_dist(x, b, a));
                EXPECT_EQ(ab, oracle::hausdorff_by_radius(x, a, b));
                EXPECT_EQ(ab.sign() == 0, a == b);
                for (const auto& c : subsets) {
                    EXPECT_LE(hausdorff_dist(x, a, c), ab + hausdorff_dist(x, b, c));
                }
            }
        }
    }
}

TEST(Hausdorff, RandomizedTriangleOnLargerAmbients) {
    std::mt19937_64 rng(43);
    const auto pick = [&](std::size_t n) {
        Idx s;
        while (s.empty()) {
            for (std::size_t i = 0; i < n; ++i) {
                if (uniform_below(rng, 3) == 0) s.push_back(i);
            }
        }
        return s;
    };
    for (int t = 0; t < 200; ++t) {
        const auto x = generate("graph-shortest-path", {{"n", std::to_string(6 + t % 5)}}, 1000 + t);
        const Idx a = pick(x.size()), b = pick(x.size()), c = pick(x.size());
        EXPECT_LE(hausdorff_dist(x, a, c), hausdorff_dist(x, a, b) + hausdorff_dist(x, b, c));
        EXPECT_EQ(hausdorff_dist(x, a, b), oracle::hausdorff_by_radius(x, a, b));
    }
}

TEST(Hausdorff, WorksOnSemimetricAmbients) {
    const auto s = validate_semimetric({"a", "b", "c"}, test::ints({{0, 0, 1}, {0, 0, 1}, {1, 1, 0}}));
    EXPECT_EQ(hausdorff_dist(s, Idx{0}, Idx{1}), Scalar(0));
    EXPECT_EQ(hausdorff_dist(s, Idx{0}, Idx{1, 2}), Scalar(1));
}

}  // namespace
}  // namespace ghm
