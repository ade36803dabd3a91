#pragma once

#include <vector>

#include "ghm/gh.hpp"
#include "ghm/metric_space.hpp"

namespace ghm {

/// c(x, y) = min over (x', y') in R of d_X(x, x') + r + d_Y(y', y).
/// Throws SlackTooSmall when r < distortion(R) / 2.
Matrix realizing_cross_block(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const Correspondence& r,
                             const Scalar& slack);

/// The semimetric on X ⊔ Y carrying `realizing_cross_block` as cross block.
SemiMetricSpace realizing_cross_distance(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                         const Correspondence& r, const Scalar& slack,
                                         const UnionTags& tags = {"x:", "y:"});

/// A common metric space holding isometric copies of X and Y whose Hausdorff
/// distance equals their Gromov-Hausdorff distance.
struct Realization {
    FiniteMetricSpace glued;
    Embedding embed_left;
    Embedding embed_right;
    Scalar value;
    Correspondence witness;
};

Realization realize(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const GhOptions& options = {},
                    const UnionTags& tags = {"x:", "y:"});

/// Point of a finite-dimensional sup-norm space.
using SupNormPoint = std::vector<Scalar>;

/// max_k |a_k - b_k|; throws ShapeMismatch on differing dimensions.
Scalar sup_dist(const SupNormPoint& a, const SupNormPoint& b);

/// Pairwise sup-norm distances of a point cloud; coincident points are allowed.
SemiMetricSpace sup_norm_space(const std::vector<SupNormPoint>& points, const Labels& labels);

struct KuratowskiImage {
    std::vector<SupNormPoint> points;
    /// X -> its image, certified isometric.
    Embedding certificate;
};

/// x_i maps to its distance row (d(x_i, x_0), ..., d(x_i, x_{n-1})).
KuratowskiImage kuratowski_embed(const FiniteMetricSpace& x);

/// Embeds X and Y into one sup-norm space with coordinates indexed by X's
/// points followed by Y's: a point sends each coordinate to its distance from
/// that reference point, reading X-to-Y distances from the cross block.
struct CommonSupNormImage {
    std::vector<SupNormPoint> left;
    std::vector<SupNormPoint> right;
};
CommonSupNormImage kuratowski_common(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const Matrix& cross);

}  // namespace ghm
