#include "ghm/realization.hpp"

#include <algorithm>
#include <numeric>

#include "ghm/hausdorff.hpp"

namespace ghm {

Matrix realizing_cross_block(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const Correspondence& r,
                             const Scalar& slack) {
    const Scalar half = distortion(x, y, r) / Scalar(2);
    if (slack < half) {
        throw Error(ErrorKind::SlackTooSmall, "slack " + slack.str() + " is below distortion/2 = " + half.str());
    }
    Matrix c(x.size(), std::vector<Scalar>(y.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < y.size(); ++j) {
            bool first = true;
            for (const auto& [i2, j2] : r.pairs) {
                Scalar v = x.d(i, i2) + y.d(j2, j);
                if (first || v < c[i][j]) c[i][j] = std::move(v);
                first = false;
            }
            c[i][j] += slack;
        }
    }
    return c;
}

SemiMetricSpace realizing_cross_distance(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                         const Correspondence& r, const Scalar& slack, const UnionTags& tags) {
    return disjoint_union(x, y, realizing_cross_block(x, y, r, slack), tags);
}

Realization realize(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const GhOptions& options,
                    const UnionTags& tags) {
    GHResult gh = gh_dist_bnb(x, y, options);
    const SemiMetricSpace semi = realizing_cross_distance(x, y, gh.witness, gh.value, tags);
    Quotient q = quotient_zero(semi);
    const std::size_t n = x.size();
    std::vector<std::size_t> left(q.projection.begin(), q.projection.begin() + static_cast<std::ptrdiff_t>(n));
    std::vector<std::size_t> right(q.projection.begin() + static_cast<std::ptrdiff_t>(n), q.projection.end());
    Embedding embed_left(x, q.space, std::move(left));
    Embedding embed_right(y, q.space, std::move(right));
    const auto a = embed_left.range();
    const auto b = embed_right.range();
    if (hausdorff_dist(q.space, a, b) != gh.value) {
        throw Error(ErrorKind::Internal, "realization does not attain the Gromov-Hausdorff value");
    }
    return Realization{std::move(q.space), std::move(embed_left), std::move(embed_right), gh.value,
                       std::move(gh.witness)};
}

Scalar sup_dist(const SupNormPoint& a, const SupNormPoint& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::ShapeMismatch, "sup-norm points of different dimension");
    Scalar best;
    for (std::size_t k = 0; k < a.size(); ++k) best = std::max(best, abs(a[k] - b[k]));
    return best;
}

SemiMetricSpace sup_norm_space(const std::vector<SupNormPoint>& points, const Labels& labels) {
    Matrix d(points.size(), std::vector<Scalar>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            d[i][j] = sup_dist(points[i], points[j]);
            d[j][i] = d[i][j];
        }
    }
    return SemiMetricSpace::validate(labels, d);
}

KuratowskiImage kuratowski_embed(const FiniteMetricSpace& x) {
    std::vector<SupNormPoint> points;
    points.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) points.emplace_back(x.row(i).begin(), x.row(i).end());
    Matrix d = sup_norm_space(points, x.labels()).matrix();
    auto image = FiniteMetricSpace::validate(x.labels(), d);
    std::vector<std::size_t> id(x.size());
    std::iota(id.begin(), id.end(), std::size_t{0});
    return KuratowskiImage{std::move(points), Embedding(x, std::move(image), std::move(id))};
}

CommonSupNormImage kuratowski_common(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const Matrix& cross) {
    const std::size_t n = x.size(), m = y.size();
    if (cross.size() != n) throw Error(ErrorKind::ShapeMismatch, "cross block row count");
    for (const auto& row : cross) {
        if (row.size() != m) throw Error(ErrorKind::ShapeMismatch, "cross block column count");
    }
    CommonSupNormImage out;
    for (std::size_t i = 0; i < n; ++i) {
        SupNormPoint p(x.row(i).begin(), x.row(i).end());
        p.insert(p.end(), cross[i].begin(), cross[i].end());
        out.left.push_back(std::move(p));
    }
    for (std::size_t j = 0; j < m; ++j) {
        SupNormPoint p;
        for (std::size_t i = 0; i < n; ++i) p.push_back(cross[i][j]);
        p.insert(p.end(), y.row(j).begin(), y.row(j).end());
        out.right.push_back(std::move(p));
    }
    return out;
}

}  // namespace ghm
