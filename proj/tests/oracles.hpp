#pragma once

// Independent reference routes for the test suites. Nothing here calls into
// the solver paths it is used to check: every oracle works from the raw
// distance matrices with the textbook definition.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "ghm/generate.hpp"
#include "ghm/metric_space.hpp"

namespace ghm::oracle {

/// Triple-loop check of the metric (or semimetric) axioms.
inline bool is_metric(const Matrix& d, bool allow_zero = false) {
    const std::size_t n = d.size();
    if (n == 0) return false;
    for (const auto& row : d) {
        if (row.size() != n) return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j && d[i][j].sign() != 0) return false;
            if (d[i][j] != d[j][i]) return false;
            if (d[i][j].sign() < 0) return false;
            if (i != j && !allow_zero && d[i][j].sign() == 0) return false;
            for (std::size_t k = 0; k < n; ++k) {
                if (d[i][k] > d[i][j] + d[j][k]) return false;
            }
        }
    }
    return true;
}

/// Least r among all matrix entries (and 0) with A ⊆ N_r(B) and B ⊆ N_r(A):
/// the infimum definition scanned over candidate radii.
inline Scalar hausdorff_by_radius(const DistanceTable& s, const std::vector<std::size_t>& a,
                                  const std::vector<std::size_t>& b) {
    std::vector<Scalar> radii{Scalar(0)};
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = 0; j < s.size(); ++j) radii.push_back(s.d(i, j));
    }
    std::sort(radii.begin(), radii.end());
    const auto covered = [&](const std::vector<std::size_t>& p, const std::vector<std::size_t>& q, const Scalar& r) {
        for (auto i : p) {
            bool near = false;
            for (auto j : q) near = near || s.d(i, j) <= r;
            if (!near) return false;
        }
        return true;
    };
    for (const auto& r : radii) {
        if (covered(a, b, r) && covered(b, a, r)) return r;
    }
    return radii.back();
}

struct GhOracle {
    Scalar value;
    std::vector<std::pair<std::size_t, std::size_t>> witness;
};

/// Enumerates every relation with plain bitmasks and evaluates the distortion
/// pair by pair in exact arithmetic. Only for |X|·|Y| <= 12 or so.
inline GhOracle gh_by_enumeration(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
    const std::size_t n = x.size(), m = y.size(), bits = n * m;
    std::optional<Scalar> best;
    std::vector<std::pair<std::size_t, std::size_t>> best_pairs;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << bits); ++mask) {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        std::vector<bool> lx(n, false), ry(m, false);
        for (std::size_t p = 0; p < bits; ++p) {
            if ((mask >> p) & 1U) {
                pairs.emplace_back(p / m, p % m);
                lx[p / m] = true;
                ry[p % m] = true;
            }
        }
        if (std::find(lx.begin(), lx.end(), false) != lx.end()) continue;
        if (std::find(ry.begin(), ry.end(), false) != ry.end()) continue;
        Scalar dis;
        for (const auto& [i, j] : pairs) {
            for (const auto& [i2, j2] : pairs) dis = std::max(dis, abs(x.d(i, i2) - y.d(j, j2)));
        }
        if (!best || dis < *best || (dis == *best && pairs < best_pairs)) {
            best = dis;
            best_pairs = pairs;
        }
    }
    return {*best / Scalar(2), best_pairs};
}

/// Every permutation, checked entry by entry.
inline bool isometric_by_permutation(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
    if (x.size() != y.size()) return false;
    std::vector<std::size_t> p(x.size());
    std::iota(p.begin(), p.end(), std::size_t{0});
    do {
        bool ok = true;
        for (std::size_t i = 0; i < p.size() && ok; ++i) {
            for (std::size_t j = 0; j < p.size() && ok; ++j) ok = x.d(i, j) == y.d(p[i], p[j]);
        }
        if (ok) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

/// Row-major minimum over all n! relabelings.
inline std::vector<Scalar> canonical_by_permutation(const FiniteMetricSpace& x) {
    std::vector<std::size_t> p(x.size());
    std::iota(p.begin(), p.end(), std::size_t{0});
    std::optional<std::vector<Scalar>> best;
    do {
        std::vector<Scalar> flat;
        for (std::size_t i = 0; i < p.size(); ++i) {
            for (std::size_t j = 0; j < p.size(); ++j) flat.push_back(x.d(p[i], p[j]));
        }
        if (!best || flat < *best) best = std::move(flat);
    } while (std::next_permutation(p.begin(), p.end()));
    return *best;
}

/// Random symmetric matrix with entries k/den, k in [lo, hi]; not
/// necessarily a metric.
inline Matrix random_matrix(std::mt19937_64& rng, std::size_t n, long lo, long hi, long den) {
    Matrix d(n, std::vector<Scalar>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const long k = lo + static_cast<long>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
            d[i][j] = d[j][i] = Scalar::fraction(k, den);
        }
    }
    return d;
}

inline Labels labels(std::size_t n) {
    Labels l;
    for (std::size_t i = 0; i < n; ++i) l.push_back("p" + std::to_string(i));
    return l;
}

/// Rejection-sampled metric on the grid {1..hi}/den.
inline FiniteMetricSpace random_metric(std::mt19937_64& rng, std::size_t n, long hi = 4, long den = 2) {
    for (;;) {
        Matrix d = random_matrix(rng, n, 1, hi, den);
        if (is_metric(d)) return FiniteMetricSpace::validate(labels(n), d);
    }
}

inline std::vector<std::size_t> random_permutation(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[uniform_below(rng, i)]);
    return p;
}

inline FiniteMetricSpace line_space(const std::vector<Scalar>& xs) {
    Matrix d(xs.size(), std::vector<Scalar>(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = 0; j < xs.size(); ++j) d[i][j] = abs(xs[i] - xs[j]);
    }
    return FiniteMetricSpace::validate(labels(xs.size()), d);
}

inline FiniteMetricSpace two_points(const Scalar& d) {
    return FiniteMetricSpace::validate({"a", "b"}, {{Scalar(0), d}, {d, Scalar(0)}});
}

inline FiniteMetricSpace one_point() { return FiniteMetricSpace::validate({"o"}, {{Scalar(0)}}); }

}  // namespace ghm::oracle
