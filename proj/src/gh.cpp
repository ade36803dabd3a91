#include "ghm/gh.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <thread>

#include "ranking.hpp"

namespace ghm {

// ---------------------------------------------------------------------------
// Correspondence

Correspondence Correspondence::make(std::size_t left_size, std::size_t right_size, std::vector<IndexPair> pairs) {
    for (const auto& [i, j] : pairs) {
        if (i >= left_size || j >= right_size) {
            throw Error(ErrorKind::IndexOutOfRange,
                        "pair (" + std::to_string(i) + "," + std::to_string(j) + ") out of range", {i, j});
        }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    Correspondence r{left_size, right_size, std::move(pairs)};
    if (!r.is_surjective()) throw Error(ErrorKind::NotSurjective, "relation does not cover both spaces");
    return r;
}

Correspondence Correspondence::full(std::size_t left_size, std::size_t right_size) {
    std::vector<IndexPair> pairs;
    for (std::size_t i = 0; i < left_size; ++i) {
        for (std::size_t j = 0; j < right_size; ++j) pairs.emplace_back(i, j);
    }
    return make(left_size, right_size, std::move(pairs));
}

Correspondence Correspondence::identity(std::size_t size) {
    std::vector<IndexPair> pairs;
    for (std::size_t i = 0; i < size; ++i) pairs.emplace_back(i, i);
    return make(size, size, std::move(pairs));
}

bool Correspondence::is_surjective() const {
    if (left_size == 0 || right_size == 0) return false;
    std::vector<bool> left(left_size, false), right(right_size, false);
    for (const auto& [i, j] : pairs) {
        if (i >= left_size || j >= right_size) return false;
        left[i] = true;
        right[j] = true;
    }
    return std::all_of(left.begin(), left.end(), [](bool b) { return b; }) &&
           std::all_of(right.begin(), right.end(), [](bool b) { return b; });
}

Correspondence Correspondence::transposed() const {
    std::vector<IndexPair> t;
    t.reserve(pairs.size());
    for (const auto& [i, j] : pairs) t.emplace_back(j, i);
    return make(right_size, left_size, std::move(t));
}

Scalar distortion(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const Correspondence& r) {
    if (r.left_size != x.size() || r.right_size != y.size()) {
        throw Error(ErrorKind::ShapeMismatch, "correspondence sizes do not match the spaces");
    }
    if (!r.is_surjective()) throw Error(ErrorKind::NotSurjective, "relation does not cover both spaces");
    Scalar worst;
    for (std::size_t a = 0; a < r.pairs.size(); ++a) {
        for (std::size_t b = a + 1; b < r.pairs.size(); ++b) {
            const auto& [i, j] = r.pairs[a];
            const auto& [i2, j2] = r.pairs[b];
            worst = std::max(worst, abs(x.d(i, i2) - y.d(j, j2)));
        }
    }
    return worst;
}

Scalar lower_bound_diam(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
    return abs(diam(x) - diam(y)) / Scalar(2);
}

Scalar upper_bound_full(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
    return std::max(diam(x), diam(y)) / Scalar(2);
}

// ---------------------------------------------------------------------------
// Ranked pair costs

namespace {

constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

/// rank of |d_L(i,i2) - d_R(j,j2)| for every pair of pairs.
class CostTable {
public:
    CostTable(const DistanceTable& left, const DistanceTable& right) : n_(left.size()), m_(right.size()) {
        detail::Ranking lv, rv;
        for (std::size_t i = 0; i < n_; ++i) {
            for (const auto& v : left.row(i)) lv.add(v);
        }
        for (std::size_t j = 0; j < m_; ++j) {
            for (const auto& v : right.row(j)) rv.add(v);
        }
        lv.finalize();
        rv.finalize();
        std::vector<Scalar> diffs;
        diffs.reserve(lv.size() * rv.size());
        for (std::uint32_t a = 0; a < lv.size(); ++a) {
            for (std::uint32_t b = 0; b < rv.size(); ++b) {
                diffs.push_back(abs(lv.value(a) - rv.value(b)));
                values_.add(diffs.back());
            }
        }
        values_.finalize();
        std::vector<std::uint32_t> diff_rank(diffs.size());
        for (std::size_t k = 0; k < diffs.size(); ++k) diff_rank[k] = values_.of(diffs[k]);

        std::vector<std::uint32_t> lr(n_ * n_), rr(m_ * m_);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t k = 0; k < n_; ++k) lr[i * n_ + k] = lv.of(left.d(i, k));
        }
        for (std::size_t j = 0; j < m_; ++j) {
            for (std::size_t k = 0; k < m_; ++k) rr[j * m_ + k] = rv.of(right.d(j, k));
        }
        table_.resize(n_ * n_ * m_ * m_);
        for (std::size_t ii = 0; ii < n_ * n_; ++ii) {
            for (std::size_t jj = 0; jj < m_ * m_; ++jj) {
                table_[ii * m_ * m_ + jj] = diff_rank[lr[ii] * rv.size() + rr[jj]];
            }
        }
    }

    std::uint32_t operator()(std::size_t i, std::size_t i2, std::size_t j, std::size_t j2) const {
        return table_[((i * n_ + i2) * m_ + j) * m_ + j2];
    }
    /// Cost of two pairs sharing the left point: d_R(j, j2).
    std::uint32_t right_spread(std::size_t j, std::size_t j2) const { return (*this)(0, 0, j, j2); }

    const Scalar& value(std::uint32_t rank) const { return values_.value(rank); }
    std::uint32_t rank_of(const Scalar& v) const { return values_.of(v); }
    std::size_t n() const noexcept { return n_; }
    std::size_t m() const noexcept { return m_; }

private:
    std::size_t n_, m_;
    detail::Ranking values_;
    std::vector<std::uint32_t> table_;
};

GHResult make_result(const CostTable& cost, std::uint32_t rank, Correspondence witness, std::uint64_t nodes) {
    return GHResult{cost.value(rank) / Scalar(2), std::move(witness), nodes};
}

std::uint32_t greedy_rank(const CostTable& c, std::vector<IndexPair>* out) {
    const std::size_t n = c.n(), m = c.m();
    std::vector<IndexPair> pairs;
    std::uint32_t cur = 0;
    const auto damage = [&](std::size_t i, std::size_t j) {
        std::uint32_t w = 0;
        for (const auto& [i2, j2] : pairs) w = std::max(w, c(i, i2, j, j2));
        return w;
    };
    std::vector<bool> covered(m, false);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t pick = 0;
        std::uint32_t pick_w = kInf;
        for (std::size_t j = 0; j < m; ++j) {
            const auto w = damage(i, j);
            if (w < pick_w) pick_w = w, pick = j;
        }
        cur = std::max(cur, pick_w);
        pairs.emplace_back(i, pick);
        covered[pick] = true;
    }
    for (std::size_t j = 0; j < m; ++j) {
        if (covered[j]) continue;
        std::size_t pick = 0;
        std::uint32_t pick_w = kInf;
        for (std::size_t i = 0; i < n; ++i) {
            const auto w = damage(i, j);
            if (w < pick_w) pick_w = w, pick = i;
        }
        cur = std::max(cur, pick_w);
        pairs.emplace_back(pick, j);
    }
    if (out != nullptr) *out = std::move(pairs);
    return cur;
}

}  // namespace

Correspondence greedy_correspondence(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
    CostTable cost(x, y);
    std::vector<IndexPair> pairs;
    greedy_rank(cost, &pairs);
    return Correspondence::make(x.size(), y.size(), std::move(pairs));
}

// ---------------------------------------------------------------------------
// Brute force
//
// Pair p = (i, j) is bit i*m + j, so ascending bit order is the
// lexicographic pair order. The distortion of a mask obeys
//   dis(S) = max(dis(S - p), dis(S - q), cost(p, q))
// for its two lowest bits p, q, which makes the full enumeration O(1) per mask.

namespace {

/// Pair-list lexicographic order on bit sets.
bool lex_less(std::uint64_t a, std::uint64_t b) {
    const std::uint64_t diff = a ^ b;
    if (diff == 0) return false;
    const int low = std::countr_zero(diff);
    const auto above = [low](std::uint64_t s) { return low + 1 < 64 ? (s >> (low + 1)) != 0 : false; };
    if ((a >> low) & 1U) return above(b);
    return !above(a);
}

}  // namespace

GHResult gh_dist_bruteforce(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const GhOptions& options) {
    const std::size_t n = x.size(), m = y.size();
    const std::size_t bits = n * m;
    constexpr std::size_t hard_cap = 26;
    if (bits > options.brute_force_limit || bits > hard_cap) {
        throw Error(ErrorKind::SizeLimitExceeded,
                    "brute force needs |X|*|Y| <= " + std::to_string(std::min(options.brute_force_limit, hard_cap)) +
                        ", got " + std::to_string(bits),
                    {n, m});
    }
    CostTable c(x, y);
    std::vector<std::uint32_t> pair_cost(bits * bits);
    for (std::size_t p = 0; p < bits; ++p) {
        for (std::size_t q = 0; q < bits; ++q) pair_cost[p * bits + q] = c(p / m, q / m, p % m, q % m);
    }
    std::vector<std::uint64_t> row_mask(n, 0), col_mask(m, 0);
    for (std::size_t p = 0; p < bits; ++p) {
        row_mask[p / m] |= std::uint64_t{1} << p;
        col_mask[p % m] |= std::uint64_t{1} << p;
    }

    const std::uint64_t total = std::uint64_t{1} << bits;
    std::vector<std::uint32_t> dis(total, 0);
    std::uint32_t best = kInf;
    std::uint64_t best_mask = 0;
    for (std::uint64_t mask = 1; mask < total; ++mask) {
        const std::uint64_t rest = mask & (mask - 1);
        if (rest != 0) {
            const int p = std::countr_zero(mask);
            const int q = std::countr_zero(rest);
            dis[mask] = std::max({dis[rest], dis[mask ^ (std::uint64_t{1} << q)],
                                  pair_cost[static_cast<std::size_t>(p) * bits + static_cast<std::size_t>(q)]});
        }
        if (dis[mask] > best) continue;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) ok = (mask & row_mask[i]) != 0;
        for (std::size_t j = 0; j < m && ok; ++j) ok = (mask & col_mask[j]) != 0;
        if (!ok) continue;
        if (dis[mask] < best || lex_less(mask, best_mask)) {
            best = dis[mask];
            best_mask = mask;
        }
    }
    std::vector<IndexPair> pairs;
    for (std::size_t p = 0; p < bits; ++p) {
        if ((best_mask >> p) & 1U) pairs.emplace_back(p / m, p % m);
    }
    return make_result(c, best, Correspondence::make(n, m, std::move(pairs)), total - 1);
}

// ---------------------------------------------------------------------------
// Branch and bound
//
// Left points are processed by decreasing eccentricity; each receives a
// nonempty set of right points. Distortion is monotone under inclusion, so an
// optimum is attained by a minimal correspondence, in which every left point
// with two or more partners owns them exclusively. The search only generates
// such "star" shaped relations, which cuts the branching to singletons plus
// exclusive cliques of uncovered points.

namespace {

using Mask = std::uint64_t;
constexpr std::size_t kMaxSide = 64;

Mask bit(std::size_t j) { return Mask{1} << j; }

struct BnbShared {
    std::atomic<std::uint32_t> best;
    std::atomic<std::uint64_t> nodes{0};
    std::uint32_t lower = 0;

    void offer(std::uint32_t value) {
        std::uint32_t cur = best.load();
        while (value < cur && !best.compare_exchange_weak(cur, value)) {
        }
    }
    bool finished() const { return best.load() <= lower; }
};

class BnbWorker {
public:
    BnbWorker(const CostTable& cost, const std::vector<std::size_t>& order, BnbShared& shared)
        : c_(cost), n_(cost.n()), m_(cost.m()), order_(order), shared_(shared),
          pc_(n_ + 1, std::vector<std::uint32_t>(n_ * m_, 0)) {}

    ~BnbWorker() { shared_.nodes += nodes_; }

    struct Choice {
        Mask set;
        std::uint32_t cur;
    };

    /// Choices for the left point at `depth`, given the state at that depth.
    std::vector<Choice> choices(std::size_t depth, std::uint32_t cur, Mask covered, Mask exclusive) const {
        std::vector<Choice> out;
        const std::size_t x = order_[depth];
        const auto& pc = pc_[depth];
        const std::uint32_t best = shared_.best.load();
        for (std::size_t y = 0; y < m_; ++y) {
            if ((exclusive & bit(y)) != 0) continue;
            const auto w = std::max(cur, pc[x * m_ + y]);
            if (w < best) out.push_back({bit(y), w});
        }
        // Exclusive cliques (size >= 2) of uncovered, individually admissible points.
        std::vector<std::size_t> pool;
        for (std::size_t y = 0; y < m_; ++y) {
            if ((covered & bit(y)) == 0 && std::max(cur, pc[x * m_ + y]) < best) pool.push_back(y);
        }
        std::vector<std::size_t> clique;
        std::function<void(std::size_t, std::uint32_t, Mask)> grow = [&](std::size_t from, std::uint32_t w, Mask set) {
            for (std::size_t k = from; k < pool.size(); ++k) {
                const std::size_t y = pool[k];
                std::uint32_t w2 = std::max(w, pc[x * m_ + y]);
                for (std::size_t z : clique) w2 = std::max(w2, c_.right_spread(y, z));
                if (w2 >= best) continue;
                clique.push_back(y);
                if (clique.size() >= 2) out.push_back({set | bit(y), w2});
                grow(k + 1, w2, set | bit(y));
                clique.pop_back();
            }
        };
        grow(0, cur, 0);
        return out;
    }

    void descend(std::size_t depth, const Choice& ch, Mask covered, Mask exclusive) {
        ++nodes_;
        if (shared_.finished()) return;
        const std::size_t x = order_[depth];
        const Mask covered2 = covered | ch.set;
        const Mask exclusive2 = std::popcount(ch.set) >= 2 ? (exclusive | ch.set) : exclusive;
        if (depth + 1 == n_) {
            if (covered2 == full()) shared_.offer(ch.cur);
            return;
        }
        const std::uint32_t best = shared_.best.load();
        const auto& pc = pc_[depth];
        auto& next = pc_[depth + 1];
        std::uint32_t lb = ch.cur;
        for (std::size_t d = depth + 1; d < n_; ++d) {
            const std::size_t x2 = order_[d];
            std::uint32_t row_min = kInf;
            for (std::size_t y2 = 0; y2 < m_; ++y2) {
                std::uint32_t v = pc[x2 * m_ + y2];
                for (Mask s = ch.set; s != 0; s &= s - 1) {
                    v = std::max(v, c_(x2, x, y2, static_cast<std::size_t>(std::countr_zero(s))));
                }
                next[x2 * m_ + y2] = v;
                if ((exclusive2 & bit(y2)) == 0) row_min = std::min(row_min, v);
            }
            lb = std::max(lb, row_min);
            if (lb >= best) return;
        }
        for (Mask u = full() & ~covered2; u != 0; u &= u - 1) {
            const auto y2 = static_cast<std::size_t>(std::countr_zero(u));
            std::uint32_t col_min = kInf;
            for (std::size_t d = depth + 1; d < n_; ++d) col_min = std::min(col_min, next[order_[d] * m_ + y2]);
            lb = std::max(lb, col_min);
            if (lb >= best) return;
        }
        for (const auto& next_choice : choices(depth + 1, ch.cur, covered2, exclusive2)) {
            descend(depth + 1, next_choice, covered2, exclusive2);
            if (shared_.finished()) return;
        }
    }

private:
    Mask full() const { return m_ == 64 ? ~Mask{0} : (bit(m_) - 1); }

    const CostTable& c_;
    std::size_t n_, m_;
    const std::vector<std::size_t>& order_;
    BnbShared& shared_;
    std::vector<std::vector<std::uint32_t>> pc_;
    std::uint64_t nodes_ = 0;
};

/// Lexicographically least relation with every pair cost <= bound, by DFS over
/// left points in index order. Subsets for all but the last left point are
/// generated include-first (a set containing the smallest differing element
/// sorts first because more pairs follow it); the last block uses plain
/// sequence order.
class WitnessSearch {
public:
    WitnessSearch(const CostTable& cost, std::uint32_t bound)
        : c_(cost), n_(cost.n()), m_(cost.m()), bound_(bound),
          pc_(n_ + 1, std::vector<std::uint32_t>(n_ * m_, 0)), chosen_(n_, 0) {}

    std::vector<IndexPair> run() {
        if (!visit(0, 0)) throw Error(ErrorKind::Internal, "no relation attains the optimal distortion");
        std::vector<IndexPair> pairs;
        for (std::size_t i = 0; i < n_; ++i) {
            for (Mask s = chosen_[i]; s != 0; s &= s - 1) {
                pairs.emplace_back(i, static_cast<std::size_t>(std::countr_zero(s)));
            }
        }
        return pairs;
    }

    std::uint64_t nodes() const noexcept { return nodes_; }

private:
    Mask full() const { return m_ == 64 ? ~Mask{0} : (bit(m_) - 1); }

    bool admissible(std::size_t i, std::size_t y, Mask set) const {
        if (pc_[i][i * m_ + y] > bound_) return false;
        for (Mask s = set; s != 0; s &= s - 1) {
            if (c_.right_spread(y, static_cast<std::size_t>(std::countr_zero(s))) > bound_) return false;
        }
        return true;
    }

    bool visit(std::size_t i, Mask covered) {
        if (i == n_) return covered == full();
        if (i + 1 == n_) return last_block(i, covered, 0, 0);
        return inner_block(i, covered, 0, 0);
    }

    bool inner_block(std::size_t i, Mask covered, std::size_t y, Mask set) {
        if (y == m_) return set != 0 && commit(i, covered, set);
        if (admissible(i, y, set) && inner_block(i, covered, y + 1, set | bit(y))) return true;
        return inner_block(i, covered, y + 1, set);
    }

    bool last_block(std::size_t i, Mask covered, std::size_t from, Mask set) {
        const Mask need = full() & ~covered;
        for (std::size_t y = from; y < m_; ++y) {
            // Later picks only add larger indices, so a missed required point is final.
            if ((need & (bit(y) - 1) & ~set) != 0) return false;
            if (!admissible(i, y, set)) continue;
            const Mask s2 = set | bit(y);
            if ((need & ~s2) == 0 && commit(i, covered, s2)) return true;
            if (last_block(i, covered, y + 1, s2)) return true;
        }
        return false;
    }

    bool commit(std::size_t i, Mask covered, Mask set) {
        ++nodes_;
        const Mask covered2 = covered | set;
        chosen_[i] = set;
        if (i + 1 == n_) return covered2 == full();
        const auto& pc = pc_[i];
        auto& next = pc_[i + 1];
        for (std::size_t i2 = i + 1; i2 < n_; ++i2) {
            bool any = false;
            for (std::size_t y2 = 0; y2 < m_; ++y2) {
                std::uint32_t v = pc[i2 * m_ + y2];
                for (Mask s = set; s != 0; s &= s - 1) {
                    v = std::max(v, c_(i2, i, y2, static_cast<std::size_t>(std::countr_zero(s))));
                }
                next[i2 * m_ + y2] = v;
                any = any || v <= bound_;
            }
            if (!any) return false;
        }
        for (Mask u = full() & ~covered2; u != 0; u &= u - 1) {
            const auto y2 = static_cast<std::size_t>(std::countr_zero(u));
            bool any = false;
            for (std::size_t i2 = i + 1; i2 < n_ && !any; ++i2) any = next[i2 * m_ + y2] <= bound_;
            if (!any) return false;
        }
        return visit(i + 1, covered2);
    }

    const CostTable& c_;
    std::size_t n_, m_;
    std::uint32_t bound_;
    std::vector<std::vector<std::uint32_t>> pc_;
    std::vector<Mask> chosen_;
    std::uint64_t nodes_ = 0;
};

std::uint32_t bnb_value(const CostTable& c, std::uint32_t lower, unsigned threads, std::uint64_t& nodes) {
    const std::size_t n = c.n();
    BnbShared shared;
    shared.lower = lower;
    // The greedy relation is attained, so the search only has to beat it.
    shared.best = greedy_rank(c, nullptr);
    if (shared.best.load() <= lower) return shared.best.load();

    std::vector<std::size_t> order(n);
    std::vector<std::uint32_t> ecc(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        order[i] = i;
        for (std::size_t k = 0; k < n; ++k) ecc[i] = std::max(ecc[i], c(i, k, 0, 0));
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ecc[a] > ecc[b]; });

    std::vector<BnbWorker::Choice> top;
    {
        BnbWorker probe(c, order, shared);
        top = probe.choices(0, 0, 0, 0);
    }
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        BnbWorker worker(c, order, shared);
        for (std::size_t k = next++; k < top.size(); k = next++) {
            if (shared.finished()) break;
            if (top[k].cur >= shared.best.load()) continue;
            worker.descend(0, top[k], 0, 0);
        }
    };
    const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(top.size())));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    }
    nodes += shared.nodes.load();
    return shared.best.load();
}

}  // namespace

GHResult gh_dist_bnb(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const GhOptions& options) {
    // Left is the larger side, so per-point subsets range over the smaller one.
    const bool swap = y.size() > x.size();
    const FiniteMetricSpace& left = swap ? y : x;
    const FiniteMetricSpace& right = swap ? x : y;
    if (right.size() > kMaxSide) {
        throw Error(ErrorKind::SizeLimitExceeded, "branch-and-bound supports at most 64 points per side",
                    {x.size(), y.size()});
    }
    unsigned threads = options.threads;
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());

    const CostTable oriented(left, right);
    const std::uint32_t lower = oriented.rank_of(abs(diam(x) - diam(y)));
    std::uint64_t nodes = 0;
    const std::uint32_t best = bnb_value(oriented, lower, threads, nodes);
    const Scalar value = oriented.value(best);

    const CostTable forward(x, y);
    WitnessSearch witness(forward, forward.rank_of(value));
    auto pairs = witness.run();
    nodes += witness.nodes();
    return GHResult{value / Scalar(2), Correspondence::make(x.size(), y.size(), std::move(pairs)), nodes};
}

}  // namespace ghm
