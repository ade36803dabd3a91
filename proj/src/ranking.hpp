#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "ghm/error.hpp"
#include "ghm/scalar.hpp"

namespace ghm::detail {

/// Order-preserving map from a finite set of rationals onto 0..k-1, so hot
/// loops compare machine integers instead of rationals.
class Ranking {
public:
    void add(const Scalar& v) { values_.push_back(v); }

    void finalize() {
        std::sort(values_.begin(), values_.end());
        values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
    }

    std::uint32_t of(const Scalar& v) const {
        const auto it = std::lower_bound(values_.begin(), values_.end(), v);
        if (it == values_.end() || *it != v) throw Error(ErrorKind::Internal, "value not ranked");
        return static_cast<std::uint32_t>(it - values_.begin());
    }

    const Scalar& value(std::uint32_t rank) const { return values_.at(rank); }
    std::size_t size() const noexcept { return values_.size(); }

private:
    std::vector<Scalar> values_;
};

}  // namespace ghm::detail
