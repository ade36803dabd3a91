#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>

#include "ghm/metric_space.hpp"

namespace ghm {

using GeneratorParams = std::map<std::string, std::string>;

/// "n=4,max=6" -> {{"n","4"},{"max","6"}}. Throws InvalidParams.
GeneratorParams parse_params(std::string_view text);

/// Deterministic corpus generator. Kinds and their parameters:
///   path                n, step=1
///   cycle               n, step=1
///   dyadic-net          n (points k/2^n on [0,1])
///   graph-shortest-path n, max=4, den=2   complete graph, weights from
///                                          {1..max}/den, shortest-path metric
///   sup-norm-points     n, dim=2, max=4, den=2   distinct coordinates from
///                                          {0..max}/den under the max norm
///   perturb             of=<kind> plus its params, delta (default: random
///                       from {1..max}/den) added to every off-diagonal entry
/// Throws UnknownKind / InvalidParams.
FiniteMetricSpace generate(std::string_view kind, const GeneratorParams& params, std::uint64_t seed);

/// Adds delta >= 0 to every off-diagonal distance; the result is again a metric.
FiniteMetricSpace perturb(const FiniteMetricSpace& x, const Scalar& delta);

/// Uniform integer in [0, bound) from the raw 64-bit stream, identical on
/// every platform.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

}  // namespace ghm
