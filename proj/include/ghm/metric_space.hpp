#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "ghm/error.hpp"
#include "ghm/scalar.hpp"

namespace ghm {

using Labels = std::vector<std::string>;
using Matrix = std::vector<std::vector<Scalar>>;

/// Labels plus a square distance matrix. Algorithms are positional; labels
/// only travel along for readable output.
class DistanceTable {
public:
    std::size_t size() const noexcept { return labels_.size(); }
    const Labels& labels() const noexcept { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const Scalar& d(std::size_t i, std::size_t j) const { return dist_[i * size() + j]; }
    std::span<const Scalar> row(std::size_t i) const {
        return std::span<const Scalar>(dist_).subspan(i * size(), size());
    }
    Matrix matrix() const;
    std::optional<std::size_t> find(std::string_view label) const;

    /// Same points in the same order with identical distances (labels ignored).
    bool same_distances(const DistanceTable& other) const;

protected:
    DistanceTable() = default;
    DistanceTable(Labels labels, std::vector<Scalar> flat)
        : labels_(std::move(labels)), dist_(std::move(flat)) {}

    Labels labels_;
    std::vector<Scalar> dist_;
};

/// Distances obeying every metric axiom except that distinct points may sit at
/// distance zero.
class SemiMetricSpace : public DistanceTable {
public:
    static SemiMetricSpace validate(Labels labels, const Matrix& dist);

private:
    using DistanceTable::DistanceTable;
    SemiMetricSpace() = default;
    friend class FiniteMetricSpace;
};

/// Nonempty finite metric space with exact rational distances.
class FiniteMetricSpace : public DistanceTable {
public:
    /// Errors, checked in this order: EmptySpace, ShapeMismatch,
    /// DuplicateLabel, NonzeroDiagonal(i), AsymmetricMatrix(i,j),
    /// NegativeDistance(i,j), ZeroOffDiagonal(i,j), TriangleViolation(i,j,k)
    /// where d(i,k) > d(i,j) + d(j,k).
    static FiniteMetricSpace validate(Labels labels, const Matrix& dist);

    SemiMetricSpace as_semimetric() const { return SemiMetricSpace(labels_, dist_); }

private:
    using DistanceTable::DistanceTable;
    FiniteMetricSpace() = default;
};

inline FiniteMetricSpace validate(Labels labels, const Matrix& dist) {
    return FiniteMetricSpace::validate(std::move(labels), dist);
}

inline SemiMetricSpace validate_semimetric(Labels labels, const Matrix& dist) {
    return SemiMetricSpace::validate(std::move(labels), dist);
}

/// Checks that `map` preserves distances from `source` into `target`;
/// throws NotIsometric(i, j) on the first mismatch.
void verify_isometry(const DistanceTable& source, const DistanceTable& target,
                     std::span<const std::size_t> map, bool require_injective);

/// A point map together with the certificate that it preserves distances.
/// Construction is the only way to obtain one, so holding an instance means
/// the check passed.
template <class Target>
class IsometricEmbedding {
public:
    IsometricEmbedding(FiniteMetricSpace source, Target target, std::vector<std::size_t> map)
        : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
        verify_isometry(source_, target_, map_, std::is_same_v<Target, FiniteMetricSpace>);
    }

    const FiniteMetricSpace& source() const noexcept { return source_; }
    const Target& target() const noexcept { return target_; }
    const std::vector<std::size_t>& map() const noexcept { return map_; }
    std::size_t operator()(std::size_t i) const { return map_.at(i); }

    /// Sorted, de-duplicated image indices.
    std::vector<std::size_t> range() const;

    /// `outer ∘ this`; outer's source must carry the same distances as this
    /// embedding's target.
    template <class Outer>
    IsometricEmbedding<Outer> then(const IsometricEmbedding<Outer>& outer) const {
        if (!outer.source().same_distances(target_)) {
            throw Error(ErrorKind::NotIsometric, "composition: intermediate spaces differ");
        }
        std::vector<std::size_t> composed(map_.size());
        for (std::size_t i = 0; i < map_.size(); ++i) composed[i] = outer(map_[i]);
        return IsometricEmbedding<Outer>(source_, outer.target(), std::move(composed));
    }

private:
    FiniteMetricSpace source_;
    Target target_;
    std::vector<std::size_t> map_;
};

using Embedding = IsometricEmbedding<FiniteMetricSpace>;
using SemiEmbedding = IsometricEmbedding<SemiMetricSpace>;

extern template class IsometricEmbedding<FiniteMetricSpace>;
extern template class IsometricEmbedding<SemiMetricSpace>;

struct Quotient {
    FiniteMetricSpace space;
    /// Input point index -> class index in `space`.
    std::vector<std::size_t> projection;
};

/// Merges points at distance zero. Classes are numbered by their first member
/// and take its label.
Quotient quotient_zero(const SemiMetricSpace& s);

struct UnionTags {
    std::string left;
    std::string right;
};

/// Semimetric on X ⊔ Y with the given |X|×|Y| cross block. Throws
/// ShapeMismatch, NegativeDistance or TriangleViolation (union indexing: Y's
/// points follow X's) when the cross block is not admissible.
SemiMetricSpace disjoint_union(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                               const Matrix& cross, const UnionTags& tags = {});

Scalar diam(const DistanceTable& x);
Scalar eccentricity(const DistanceTable& x, std::size_t i);

/// Point k of the result is point perm[k] of x.
FiniteMetricSpace relabel(const FiniteMetricSpace& x, std::span<const std::size_t> perm);

/// Induced subspace on the given (distinct) indices, in the given order.
FiniteMetricSpace subspace(const FiniteMetricSpace& x, std::span<const std::size_t> indices);

/// Distance-preserving bijection x -> y (map[i] is the image of x's point i),
/// or nullopt. Exhaustive backtracking, lowest candidate index first, pruned
/// by sorted distance rows.
std::optional<std::vector<std::size_t>> is_isometric(const FiniteMetricSpace& x,
                                                     const FiniteMetricSpace& y);

struct CanonicalForm {
    std::size_t n = 0;
    /// Row-major, lexicographically least over all relabelings.
    std::vector<Scalar> matrix;
    /// permutation[k] = original index placed at position k.
    std::vector<std::size_t> permutation;

    friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
        return a.n == b.n && a.matrix == b.matrix;
    }
};

struct CanonicalOptions {
    std::size_t max_points = 10;
};

/// Throws SizeLimitExceeded above `options.max_points`.
CanonicalForm canonicalize(const FiniteMetricSpace& x, const CanonicalOptions& options = {});

}  // namespace ghm
