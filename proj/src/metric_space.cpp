#include "ghm/metric_space.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>

#include "ranking.hpp"

namespace ghm {

namespace {

std::string idx(std::size_t i) { return std::to_string(i); }

std::vector<Scalar> check_shape(const Labels& labels, const Matrix& dist) {
    const std::size_t n = labels.size();
    if (n == 0) throw Error(ErrorKind::EmptySpace, "a space needs at least one point");
    if (dist.size() != n) {
        throw Error(ErrorKind::ShapeMismatch, "expected " + idx(n) + " rows, got " + idx(dist.size()));
    }
    std::vector<Scalar> flat;
    flat.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (dist[i].size() != n) {
            throw Error(ErrorKind::ShapeMismatch,
                        "row " + idx(i) + " has " + idx(dist[i].size()) + " entries, expected " + idx(n),
                        {i});
        }
        flat.insert(flat.end(), dist[i].begin(), dist[i].end());
    }
    std::set<std::string> seen;
    for (std::size_t i = 0; i < n; ++i) {
        if (!seen.insert(labels[i]).second) {
            throw Error(ErrorKind::DuplicateLabel, "duplicate label '" + labels[i] + "'", {i});
        }
    }
    return flat;
}

void check_axioms(std::size_t n, const std::vector<Scalar>& d, bool allow_zero) {
    const auto at = [&](std::size_t i, std::size_t j) -> const Scalar& { return d[i * n + j]; };
    for (std::size_t i = 0; i < n; ++i) {
        if (at(i, i).sign() != 0) {
            throw Error(ErrorKind::NonzeroDiagonal, "d(" + idx(i) + "," + idx(i) + ") != 0", {i});
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (at(i, j) != at(j, i)) {
                throw Error(ErrorKind::AsymmetricMatrix,
                            "d(" + idx(i) + "," + idx(j) + ") != d(" + idx(j) + "," + idx(i) + ")", {i, j});
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (at(i, j).sign() < 0) {
                throw Error(ErrorKind::NegativeDistance, "d(" + idx(i) + "," + idx(j) + ") < 0", {i, j});
            }
        }
    }
    if (!allow_zero) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (at(i, j).sign() == 0) {
                    throw Error(ErrorKind::ZeroOffDiagonal,
                                "distinct points " + idx(i) + " and " + idx(j) + " at distance 0", {i, j});
                }
            }
        }
    }
    // Skip the rational addition when a single summand already covers d(i,k).
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                const Scalar& lhs = at(i, k);
                if (lhs <= at(i, j) || lhs <= at(j, k)) continue;
                if (lhs > at(i, j) + at(j, k)) {
                    throw Error(ErrorKind::TriangleViolation,
                                "d(" + idx(i) + "," + idx(k) + ") > d(" + idx(i) + "," + idx(j) + ") + d(" +
                                    idx(j) + "," + idx(k) + ")",
                                {i, j, k});
                }
            }
        }
    }
}

}  // namespace

Matrix DistanceTable::matrix() const {
    Matrix m(size(), std::vector<Scalar>(size()));
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = 0; j < size(); ++j) m[i][j] = d(i, j);
    }
    return m;
}

std::optional<std::size_t> DistanceTable::find(std::string_view label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
}

bool DistanceTable::same_distances(const DistanceTable& other) const {
    return size() == other.size() && dist_ == other.dist_;
}

SemiMetricSpace SemiMetricSpace::validate(Labels labels, const Matrix& dist) {
    auto flat = check_shape(labels, dist);
    check_axioms(labels.size(), flat, true);
    return SemiMetricSpace(std::move(labels), std::move(flat));
}

FiniteMetricSpace FiniteMetricSpace::validate(Labels labels, const Matrix& dist) {
    auto flat = check_shape(labels, dist);
    check_axioms(labels.size(), flat, false);
    return FiniteMetricSpace(std::move(labels), std::move(flat));
}

void verify_isometry(const DistanceTable& source, const DistanceTable& target,
                     std::span<const std::size_t> map, bool require_injective) {
    if (map.size() != source.size()) {
        throw Error(ErrorKind::NotIsometric,
                    "map has " + idx(map.size()) + " entries for " + idx(source.size()) + " points");
    }
    for (std::size_t i = 0; i < map.size(); ++i) {
        if (map[i] >= target.size()) {
            throw Error(ErrorKind::IndexOutOfRange, "image " + idx(map[i]) + " out of range", {i});
        }
    }
    for (std::size_t i = 0; i < map.size(); ++i) {
        for (std::size_t j = i + 1; j < map.size(); ++j) {
            if (target.d(map[i], map[j]) != source.d(i, j)) {
                throw Error(ErrorKind::NotIsometric,
                            "distance between " + idx(i) + " and " + idx(j) + " not preserved", {i, j});
            }
            if (require_injective && map[i] == map[j]) {
                throw Error(ErrorKind::NotIsometric, "map is not injective", {i, j});
            }
        }
    }
}

template <class Target>
std::vector<std::size_t> IsometricEmbedding<Target>::range() const {
    std::vector<std::size_t> r = map_;
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

template class IsometricEmbedding<FiniteMetricSpace>;
template class IsometricEmbedding<SemiMetricSpace>;

Quotient quotient_zero(const SemiMetricSpace& s) {
    const std::size_t n = s.size();
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> projection(n, unset);
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < n; ++i) {
        if (projection[i] != unset) continue;
        projection[i] = reps.size();
        for (std::size_t j = i + 1; j < n; ++j) {
            if (projection[j] == unset && s.d(i, j).sign() == 0) projection[j] = reps.size();
        }
        reps.push_back(i);
    }
    Labels labels;
    Matrix dist(reps.size(), std::vector<Scalar>(reps.size()));
    for (std::size_t a = 0; a < reps.size(); ++a) {
        labels.push_back(s.label(reps[a]));
        for (std::size_t b = 0; b < reps.size(); ++b) dist[a][b] = s.d(reps[a], reps[b]);
    }
    return {FiniteMetricSpace::validate(std::move(labels), dist), std::move(projection)};
}

SemiMetricSpace disjoint_union(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                               const Matrix& cross, const UnionTags& tags) {
    const std::size_t n = x.size();
    const std::size_t m = y.size();
    if (cross.size() != n) throw Error(ErrorKind::ShapeMismatch, "cross block needs " + idx(n) + " rows");
    for (std::size_t i = 0; i < n; ++i) {
        if (cross[i].size() != m) {
            throw Error(ErrorKind::ShapeMismatch, "cross row " + idx(i) + " needs " + idx(m) + " entries", {i});
        }
    }
    Labels labels;
    std::set<std::string> used;
    const auto push_label = [&](std::string l) {
        while (used.count(l) != 0) l += '\'';
        used.insert(l);
        labels.push_back(std::move(l));
    };
    for (const auto& l : x.labels()) push_label(tags.left + l);
    for (const auto& l : y.labels()) push_label(tags.right + l);

    Matrix dist(n + m, std::vector<Scalar>(n + m));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) dist[i][j] = x.d(i, j);
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) dist[n + i][n + j] = y.d(i, j);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            dist[i][n + j] = cross[i][j];
            dist[n + j][i] = cross[i][j];
        }
    }
    return SemiMetricSpace::validate(std::move(labels), dist);
}

Scalar diam(const DistanceTable& x) {
    Scalar best;
    for (std::size_t i = 0; i < x.size(); ++i) best = std::max(best, eccentricity(x, i));
    return best;
}

Scalar eccentricity(const DistanceTable& x, std::size_t i) {
    Scalar best;
    for (const auto& v : x.row(i)) best = std::max(best, v);
    return best;
}

FiniteMetricSpace relabel(const FiniteMetricSpace& x, std::span<const std::size_t> perm) {
    if (perm.size() != x.size()) throw Error(ErrorKind::InvalidParams, "permutation size mismatch");
    std::vector<bool> hit(x.size(), false);
    for (auto p : perm) {
        if (p >= x.size() || hit[p]) throw Error(ErrorKind::InvalidParams, "not a permutation");
        hit[p] = true;
    }
    return subspace(x, perm);
}

FiniteMetricSpace subspace(const FiniteMetricSpace& x, std::span<const std::size_t> indices) {
    Labels labels;
    Matrix dist(indices.size(), std::vector<Scalar>(indices.size()));
    for (std::size_t a = 0; a < indices.size(); ++a) {
        if (indices[a] >= x.size()) throw Error(ErrorKind::IndexOutOfRange, "subspace index", {indices[a]});
        labels.push_back(x.label(indices[a]));
        for (std::size_t b = 0; b < indices.size(); ++b) {
            if (indices[b] >= x.size()) throw Error(ErrorKind::IndexOutOfRange, "subspace index", {indices[b]});
            dist[a][b] = x.d(indices[a], indices[b]);
        }
    }
    return FiniteMetricSpace::validate(std::move(labels), dist);
}

// ---------------------------------------------------------------------------
// Isometry decision

namespace {

using RankMatrix = std::vector<std::uint32_t>;

RankMatrix rank_matrix(const DistanceTable& x, const detail::Ranking& ranking) {
    RankMatrix r(x.size() * x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) r[i * x.size() + j] = ranking.of(x.d(i, j));
    }
    return r;
}

class IsometrySearch {
public:
    IsometrySearch(const FiniteMetricSpace& x, const FiniteMetricSpace& y) : n_(x.size()) {
        detail::Ranking ranking;
        for (const auto* s : {&x, &y}) {
            for (std::size_t i = 0; i < n_; ++i) {
                for (const auto& v : s->row(i)) ranking.add(v);
            }
        }
        ranking.finalize();
        rx_ = rank_matrix(x, ranking);
        ry_ = rank_matrix(y, ranking);

        std::vector<std::vector<std::uint32_t>> sx(n_), sy(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            sx[i].assign(rx_.begin() + i * n_, rx_.begin() + (i + 1) * n_);
            sy[i].assign(ry_.begin() + i * n_, ry_.begin() + (i + 1) * n_);
            std::sort(sx[i].begin(), sx[i].end());
            std::sort(sy[i].begin(), sy[i].end());
        }
        candidates_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                if (sx[i] == sy[j]) candidates_[i].push_back(j);
            }
        }
    }

    std::optional<std::vector<std::size_t>> run() {
        map_.assign(n_, 0);
        used_.assign(n_, false);
        if (extend(0)) return map_;
        return std::nullopt;
    }

private:
    bool extend(std::size_t i) {
        if (i == n_) return true;
        for (std::size_t y : candidates_[i]) {
            if (used_[y]) continue;
            bool ok = true;
            for (std::size_t k = 0; k < i && ok; ++k) ok = rx_[i * n_ + k] == ry_[y * n_ + map_[k]];
            if (!ok) continue;
            map_[i] = y;
            used_[y] = true;
            if (extend(i + 1)) return true;
            used_[y] = false;
        }
        return false;
    }

    std::size_t n_;
    RankMatrix rx_, ry_;
    std::vector<std::vector<std::size_t>> candidates_;
    std::vector<std::size_t> map_;
    std::vector<bool> used_;
};

}  // namespace

std::optional<std::vector<std::size_t>> is_isometric(const FiniteMetricSpace& x,
                                                     const FiniteMetricSpace& y) {
    if (x.size() != y.size()) return std::nullopt;
    if (diam(x) != diam(y)) return std::nullopt;
    return IsometrySearch(x, y).run();
}

// ---------------------------------------------------------------------------
// Canonical form
//
// Positions are filled left to right. Once positions 0..k-1 are fixed, the
// remaining points are split into cells by their distance signature to the
// placed points; cells are ordered by signature and the lex-least matrix must
// respect that order. Row k is then fully determined by the choice of the
// point at position k, so rows can be compared level by level.

namespace {

class CanonicalSearch {
public:
    explicit CanonicalSearch(const FiniteMetricSpace& x) : n_(x.size()) {
        detail::Ranking ranking;
        for (std::size_t i = 0; i < n_; ++i) {
            for (const auto& v : x.row(i)) ranking.add(v);
        }
        ranking.finalize();
        r_ = rank_matrix(x, ranking);
        rows_.assign(n_, {});
        best_rows_.assign(n_, {});
    }

    std::vector<std::size_t> run() {
        std::vector<std::size_t> all(n_);
        for (std::size_t i = 0; i < n_; ++i) all[i] = i;
        std::vector<std::size_t> perm;
        search(perm, {all}, true);
        return best_perm_;
    }

private:
    using Cells = std::vector<std::vector<std::size_t>>;

    std::uint32_t r(std::size_t i, std::size_t j) const { return r_[i * n_ + j]; }

    bool twins(std::size_t a, std::size_t b) const {
        for (std::size_t z = 0; z < n_; ++z) {
            if (z != a && z != b && r(a, z) != r(b, z)) return false;
        }
        return true;
    }

    void search(std::vector<std::size_t>& perm, const Cells& cells, bool tight) {
        const std::size_t level = perm.size();
        if (level == n_) {
            best_rows_ = rows_;
            best_perm_ = perm;
            have_best_ = true;
            ++improvements_;
            return;
        }
        const auto& first = cells.front();
        std::vector<std::size_t> tried;
        for (std::size_t pick = 0; pick < first.size(); ++pick) {
            const std::size_t c = first[pick];
            if (std::any_of(tried.begin(), tried.end(), [&](std::size_t t) { return twins(t, c); })) continue;
            tried.push_back(c);

            Cells next;
            std::vector<std::uint32_t> row;
            row.reserve(n_);
            for (auto p : perm) row.push_back(r(c, p));
            row.push_back(0);
            for (std::size_t ci = 0; ci < cells.size(); ++ci) {
                std::vector<std::size_t> members = cells[ci];
                if (ci == 0) members.erase(members.begin() + static_cast<std::ptrdiff_t>(pick));
                std::stable_sort(members.begin(), members.end(),
                                 [&](std::size_t a, std::size_t b) { return r(c, a) < r(c, b); });
                for (std::size_t k = 0; k < members.size();) {
                    std::size_t e = k;
                    while (e < members.size() && r(c, members[e]) == r(c, members[k])) {
                        row.push_back(r(c, members[e]));
                        ++e;
                    }
                    next.emplace_back(members.begin() + static_cast<std::ptrdiff_t>(k),
                                      members.begin() + static_cast<std::ptrdiff_t>(e));
                    k = e;
                }
            }

            const bool compare = have_best_ && tight;
            if (compare) {
                if (row > best_rows_[level]) continue;
            }
            const bool still_tight = compare && row == best_rows_[level];
            rows_[level] = std::move(row);
            perm.push_back(c);
            const auto before = improvements_;
            search(perm, next, still_tight);
            perm.pop_back();
            // A descendant improvement makes the best share our prefix.
            if (improvements_ != before) tight = true;
        }
    }

    std::size_t n_;
    std::vector<std::uint32_t> r_;
    std::vector<std::vector<std::uint32_t>> rows_;
    std::vector<std::vector<std::uint32_t>> best_rows_;
    std::vector<std::size_t> best_perm_;
    bool have_best_ = false;
    std::uint64_t improvements_ = 0;
};

}  // namespace

CanonicalForm canonicalize(const FiniteMetricSpace& x, const CanonicalOptions& options) {
    if (x.size() > options.max_points) {
        throw Error(ErrorKind::SizeLimitExceeded,
                    "canonical form limited to " + idx(options.max_points) + " points, got " + idx(x.size()),
                    {x.size()});
    }
    CanonicalForm form;
    form.n = x.size();
    form.permutation = CanonicalSearch(x).run();
    form.matrix.reserve(form.n * form.n);
    for (std::size_t i = 0; i < form.n; ++i) {
        for (std::size_t j = 0; j < form.n; ++j) form.matrix.push_back(x.d(form.permutation[i], form.permutation[j]));
    }
    return form;
}

}  // namespace ghm
