#include "ghm/gluing.hpp"

#include <string>

#include "ghm/hausdorff.hpp"

namespace ghm {

GluedSpace glue(const Embedding& phi, const Embedding& psi, const UnionTags& tags) {
    if (!phi.source().same_distances(psi.source())) {
        throw Error(ErrorKind::NotIsometric, "glue maps must start from the same space");
    }
    const std::size_t glue_points = phi.source().size();
    if (glue_points == 0) throw Error(ErrorKind::EmptyGlueSet, "nothing to glue along");
    const FiniteMetricSpace& y = phi.target();
    const FiniteMetricSpace& z = psi.target();

    Matrix cross(y.size(), std::vector<Scalar>(z.size()));
    for (std::size_t i = 0; i < y.size(); ++i) {
        for (std::size_t j = 0; j < z.size(); ++j) {
            for (std::size_t k = 0; k < glue_points; ++k) {
                Scalar v = y.d(i, phi(k)) + z.d(psi(k), j);
                if (k == 0 || v < cross[i][j]) cross[i][j] = std::move(v);
            }
        }
    }
    Quotient q = quotient_zero(disjoint_union(y, z, cross, tags));
    std::vector<std::size_t> left(q.projection.begin(), q.projection.begin() + static_cast<std::ptrdiff_t>(y.size()));
    std::vector<std::size_t> right(q.projection.begin() + static_cast<std::ptrdiff_t>(y.size()), q.projection.end());
    Embedding from_left(y, q.space, std::move(left));
    Embedding from_right(z, q.space, std::move(right));
    return GluedSpace{std::move(q.space), std::move(from_left), std::move(from_right)};
}

namespace {

std::string tag(std::size_t k) { return "X" + std::to_string(k) + ":"; }

}  // namespace

TowerLevel tower_start(const FiniteMetricSpace& x0) {
    Labels labels;
    for (const auto& l : x0.labels()) labels.push_back(tag(0) + l);
    auto space = FiniteMetricSpace::validate(std::move(labels), x0.matrix());
    std::vector<std::size_t> id(x0.size());
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
    TowerLevel level{space, {}};
    level.embed_all.emplace_back(x0, std::move(space), std::move(id));
    return level;
}

TowerLevel tower_extend(const TowerLevel& level, const FiniteMetricSpace& next, const GhOptions& options) {
    const std::size_t n = level.embed_all.size() - 1;
    const FiniteMetricSpace& current = level.embed_last().source();
    const Realization step = realize(current, next, options, {tag(n), tag(n + 1)});
    const GluedSpace glued = glue(level.embed_last(), step.embed_left);

    TowerLevel out{glued.space, {}};
    out.embed_all.reserve(level.embed_all.size() + 1);
    for (const auto& e : level.embed_all) out.embed_all.push_back(e.then(glued.from_left));
    out.embed_all.push_back(step.embed_right.then(glued.from_right));
    return out;
}

std::vector<TowerLevel> build_tower(const std::vector<FiniteMetricSpace>& spaces, const GhOptions& options) {
    if (spaces.empty()) throw Error(ErrorKind::EmptySpace, "a tower needs at least one space");
    std::vector<TowerLevel> levels;
    levels.push_back(tower_start(spaces.front()));
    for (std::size_t k = 1; k < spaces.size(); ++k) levels.push_back(tower_extend(levels.back(), spaces[k], options));
    return levels;
}

BoundSequence BoundSequence::geometric(const Scalar& first, const Scalar& ratio) {
    if (first.sign() < 0 || ratio.sign() < 0 || ratio >= Scalar(1)) {
        throw Error(ErrorKind::InvalidParams, "geometric bounds need first >= 0 and 0 <= ratio < 1");
    }
    BoundSequence b;
    b.geometric_ = true;
    b.first_ = first;
    b.ratio_ = ratio;
    return b;
}

BoundSequence BoundSequence::listed(std::vector<Scalar> terms, const Scalar& tail) {
    for (const auto& t : terms) {
        if (t.sign() < 0) throw Error(ErrorKind::InvalidParams, "bounds must be nonnegative");
    }
    if (tail.sign() < 0) throw Error(ErrorKind::InvalidParams, "tail must be nonnegative");
    BoundSequence b;
    b.terms_ = std::move(terms);
    b.tail_ = tail;
    return b;
}

Scalar BoundSequence::term(std::size_t k) const {
    if (!geometric_) {
        // Past the listed terms only the tail sum is known; it bounds each term.
        return k < terms_.size() ? terms_[k] : tail_;
    }
    Scalar v = first_;
    for (std::size_t i = 0; i < k; ++i) v *= ratio_;
    return v;
}

Scalar BoundSequence::tail_from(std::size_t k) const {
    if (geometric_) return term(k) / (Scalar(1) - ratio_);
    Scalar sum = tail_;
    for (std::size_t i = k; i < terms_.size(); ++i) sum += terms_[i];
    return sum;
}

CauchyLimit cauchy_limit(const std::vector<FiniteMetricSpace>& spaces, const BoundSequence& bounds,
                         const GhOptions& options) {
    if (spaces.empty()) throw Error(ErrorKind::EmptySpace, "a Cauchy prefix needs at least one space");
    const std::size_t last = spaces.size() - 1;
    std::vector<Scalar> gh_steps;
    for (std::size_t k = 0; k < last; ++k) {
        Scalar g = gh_dist_bnb(spaces[k], spaces[k + 1], options).value;
        if (g > bounds.term(k)) {
            throw Error(ErrorKind::CauchyBoundViolated,
                        "gh(X" + std::to_string(k) + ", X" + std::to_string(k + 1) + ") = " + g.str() + " exceeds " +
                            bounds.term(k).str(),
                        {k});
        }
        gh_steps.push_back(std::move(g));
    }
    std::vector<TowerLevel> tower = build_tower(spaces, options);
    const TowerLevel& top = tower.back();
    std::vector<Scalar> hausdorff_steps;
    for (std::size_t k = 0; k < last; ++k) {
        const auto a = top.embed_all[k].range();
        const auto b = top.embed_all[k + 1].range();
        Scalar h = hausdorff_dist(top.space, a, b);
        if (h > bounds.term(k)) {
            throw Error(ErrorKind::Internal, "tower copies drifted beyond the verified bound", {k});
        }
        hausdorff_steps.push_back(std::move(h));
    }
    std::vector<std::size_t> limit_points = top.embed_last().map();
    FiniteMetricSpace limit_approx = subspace(top.space, limit_points);
    return CauchyLimit{std::move(tower),          std::move(limit_approx),   std::move(limit_points),
                       bounds.tail_from(last),    std::move(gh_steps),       std::move(hausdorff_steps)};
}

}  // namespace ghm
