#pragma once

#include <cstddef>
#include <vector>

#include "ghm/gh.hpp"
#include "ghm/metric_space.hpp"
#include "ghm/realization.hpp"

namespace ghm {

/// Y and Z glued along a common subspace X, after merging coincident points.
struct GluedSpace {
    FiniteMetricSpace space;
    Embedding from_left;   ///< Y -> space
    Embedding from_right;  ///< Z -> space
};

/// d(y, z) = min over x of d_Y(y, phi(x)) + d_Z(psi(x), z), then quotient.
/// `phi` and `psi` must share their source (NotIsometric otherwise).
GluedSpace glue(const Embedding& phi, const Embedding& psi, const UnionTags& tags = {});

/// A space holding isometric copies of X_0..X_n; `embed_all[k]` is the copy of
/// X_k and the last entry is the copy the next step glues along.
struct TowerLevel {
    FiniteMetricSpace space;
    std::vector<Embedding> embed_all;

    const Embedding& embed_last() const { return embed_all.back(); }
};

TowerLevel tower_start(const FiniteMetricSpace& x0);

/// Glues `level.space` to an optimal realization of (X_n, next) along X_n.
TowerLevel tower_extend(const TowerLevel& level, const FiniteMetricSpace& next, const GhOptions& options = {});

/// Z_0 = X_0, Z_{k+1} = tower_extend(Z_k, X_{k+1}). Returns every level.
std::vector<TowerLevel> build_tower(const std::vector<FiniteMetricSpace>& spaces, const GhOptions& options = {});

/// Summable sequence b_0, b_1, ... given by explicit leading terms followed
/// by either zeros or a geometric tail.
class BoundSequence {
public:
    /// b_k = first * ratio^k, 0 <= ratio < 1.
    static BoundSequence geometric(const Scalar& first, const Scalar& ratio);
    /// b_k = terms[k] for listed k, and the remaining terms sum to `tail`.
    static BoundSequence listed(std::vector<Scalar> terms, const Scalar& tail = Scalar(0));
    /// 2^-k, the default.
    static BoundSequence dyadic() { return geometric(Scalar(1), Scalar::fraction(1, 2)); }

    Scalar term(std::size_t k) const;
    /// sum over j >= k of b_j.
    Scalar tail_from(std::size_t k) const;

private:
    std::vector<Scalar> terms_;
    Scalar tail_;
    bool geometric_ = false;
    Scalar first_, ratio_;
};

struct CauchyLimit {
    std::vector<TowerLevel> tower;
    /// The copy X'_N inside the top level, as a space of its own.
    FiniteMetricSpace limit_approx;
    /// Indices of X'_N inside the top level.
    std::vector<std::size_t> limit_points;
    /// sum over k >= N of b_k.
    Scalar error_bound;
    /// gh(X_k, X_{k+1}) for k < N.
    std::vector<Scalar> gh_steps;
    /// d_H(X'_k, X'_{k+1}) inside the top level for k < N.
    std::vector<Scalar> hausdorff_steps;
};

/// Throws CauchyBoundViolated(k) if gh(X_k, X_{k+1}) > b_k.
CauchyLimit cauchy_limit(const std::vector<FiniteMetricSpace>& spaces,
                         const BoundSequence& bounds = BoundSequence::dyadic(), const GhOptions& options = {});

}  // namespace ghm
