#include "ghm/hausdorff.hpp"

#include <algorithm>
#include <string>

namespace ghm {

namespace {

void check_subset(const DistanceTable& ambient, std::span<const std::size_t> s, const char* name) {
    if (s.empty()) throw Error(ErrorKind::EmptySubset, std::string("subset ") + name + " is empty");
    for (auto i : s) {
        if (i >= ambient.size()) {
            throw Error(ErrorKind::IndexOutOfRange,
                        std::string("subset ") + name + ": index " + std::to_string(i) + " out of range", {i});
        }
    }
}

Scalar gap(const DistanceTable& ambient, std::size_t a, std::span<const std::size_t> b) {
    Scalar best = ambient.d(a, b.front());
    for (auto j : b.subspan(1)) best = std::min(best, ambient.d(a, j));
    return best;
}

}  // namespace

Scalar directed_hausdorff(const DistanceTable& ambient, std::span<const std::size_t> a,
                          std::span<const std::size_t> b) {
    check_subset(ambient, a, "A");
    check_subset(ambient, b, "B");
    Scalar worst;
    for (auto i : a) worst = std::max(worst, gap(ambient, i, b));
    return worst;
}

Scalar hausdorff_dist(const DistanceTable& ambient, std::span<const std::size_t> a,
                      std::span<const std::size_t> b) {
    return std::max(directed_hausdorff(ambient, a, b), directed_hausdorff(ambient, b, a));
}

bool in_neighborhood(const DistanceTable& ambient, std::span<const std::size_t> a,
                     std::span<const std::size_t> b, const Scalar& r) {
    check_subset(ambient, a, "A");
    check_subset(ambient, b, "B");
    return std::all_of(a.begin(), a.end(), [&](std::size_t i) { return gap(ambient, i, b) <= r; });
}

}  // namespace ghm
