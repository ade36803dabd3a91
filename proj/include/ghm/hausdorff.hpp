#pragma once

#include <cstddef>
#include <span>

#include "ghm/metric_space.hpp"

namespace ghm {

/// max over a in A of min over b in B of d(a, b).
Scalar directed_hausdorff(const DistanceTable& ambient, std::span<const std::size_t> a,
                          std::span<const std::size_t> b);

/// Hausdorff distance between two nonempty index sets of a common (semi)metric
/// space, in its attained max-min form. Throws EmptySubset, IndexOutOfRange.
Scalar hausdorff_dist(const DistanceTable& ambient, std::span<const std::size_t> a,
                      std::span<const std::size_t> b);

/// True iff every point of A lies within distance r of some point of B.
bool in_neighborhood(const DistanceTable& ambient, std::span<const std::size_t> a,
                     std::span<const std::size_t> b, const Scalar& r);

}  // namespace ghm
