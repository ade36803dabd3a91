#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "ghm/metric_space.hpp"

namespace ghm {

using IndexPair = std::pair<std::size_t, std::size_t>;

/// Relation between the points of a left and a right space that covers both
/// sides. Pairs are kept sorted and unique; the spaces themselves are passed
/// alongside wherever distances are needed.
struct Correspondence {
    std::size_t left_size = 0;
    std::size_t right_size = 0;
    std::vector<IndexPair> pairs;

    /// Sorts, de-duplicates and checks ranges and surjectivity
    /// (NotSurjective, IndexOutOfRange).
    static Correspondence make(std::size_t left_size, std::size_t right_size, std::vector<IndexPair> pairs);
    static Correspondence full(std::size_t left_size, std::size_t right_size);
    static Correspondence identity(std::size_t size);

    bool is_surjective() const;
    /// Same relation read from the right side.
    Correspondence transposed() const;

    friend bool operator==(const Correspondence&, const Correspondence&) = default;
};

/// max over pairs (x,y), (x',y') in R of |d_X(x,x') - d_Y(y,y')|.
Scalar distortion(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const Correspondence& r);

struct GHResult {
    Scalar value;  ///< distortion(witness) / 2
    Correspondence witness;
    std::uint64_t nodes = 0;
};

struct GhOptions {
    /// Brute force enumerates 2^(|X||Y|) relations; refuse beyond this.
    std::size_t brute_force_limit = 20;
    /// Branch-and-bound workers; 0 picks the hardware concurrency.
    unsigned threads = 0;
};

/// Exhaustive minimum over every subset of X×Y. The witness is the
/// lexicographically least optimal pair list. Throws SizeLimitExceeded.
GHResult gh_dist_bruteforce(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                            const GhOptions& options = {});

/// Same value as the brute force, by branch-and-bound over the right-point
/// subset assigned to each left point. Returns the same lexicographically
/// least witness.
GHResult gh_dist_bnb(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const GhOptions& options = {});

inline GHResult gh_dist(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const GhOptions& options = {}) {
    return gh_dist_bnb(x, y, options);
}

/// |diam X - diam Y| / 2.
Scalar lower_bound_diam(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

/// max(diam X, diam Y) / 2, the half-distortion of the full correspondence.
Scalar upper_bound_full(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

/// Cheap valid correspondence: each left point takes its least-damaging right
/// point, then uncovered right points take their least-damaging left point.
Correspondence greedy_correspondence(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

}  // namespace ghm
