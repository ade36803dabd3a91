#include "ghm/generate.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace ghm {

namespace {

Labels point_labels(std::size_t n) {
    Labels labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
    return labels;
}

class Params {
public:
    explicit Params(const GeneratorParams& p) : p_(p) {}

    long integer(const std::string& key, std::optional<long> fallback, long min_value) const {
        const auto it = p_.find(key);
        if (it == p_.end()) {
            if (!fallback) throw Error(ErrorKind::InvalidParams, "missing parameter '" + key + "'");
            return *fallback;
        }
        long v = 0;
        try {
            std::size_t used = 0;
            v = std::stol(it->second, &used);
            if (used != it->second.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw Error(ErrorKind::InvalidParams, "parameter '" + key + "' must be an integer");
        }
        if (v < min_value) {
            throw Error(ErrorKind::InvalidParams, "parameter '" + key + "' must be >= " + std::to_string(min_value));
        }
        return v;
    }

    std::optional<Scalar> scalar(const std::string& key) const {
        const auto it = p_.find(key);
        if (it == p_.end()) return std::nullopt;
        try {
            return Scalar::parse(it->second);
        } catch (const Error&) {
            throw Error(ErrorKind::InvalidParams, "parameter '" + key + "' must be a rational");
        }
    }

    std::string text(const std::string& key, const std::string& fallback) const {
        const auto it = p_.find(key);
        return it == p_.end() ? fallback : it->second;
    }

private:
    const GeneratorParams& p_;
};

FiniteMetricSpace line(std::size_t n, const Scalar& step, bool cyclic) {
    Matrix d(n, std::vector<Scalar>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t gap = i > j ? i - j : j - i;
            if (cyclic) gap = std::min(gap, n - gap);
            d[i][j] = step * Scalar(static_cast<long>(gap));
        }
    }
    return FiniteMetricSpace::validate(point_labels(n), d);
}

FiniteMetricSpace dyadic_net(unsigned level) {
    const long count = (1L << level) + 1;
    Labels labels;
    std::vector<Scalar> coords;
    for (long k = 0; k < count; ++k) {
        coords.push_back(Scalar::fraction(k, 1L << level));
        labels.push_back(coords.back().str());
    }
    Matrix d(coords.size(), std::vector<Scalar>(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i) {
        for (std::size_t j = 0; j < coords.size(); ++j) d[i][j] = abs(coords[i] - coords[j]);
    }
    return FiniteMetricSpace::validate(std::move(labels), d);
}

FiniteMetricSpace graph_metric(std::size_t n, long max, long den, std::mt19937_64& rng) {
    Matrix d(n, std::vector<Scalar>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto w = static_cast<long>(uniform_below(rng, static_cast<std::uint64_t>(max))) + 1;
            d[i][j] = d[j][i] = Scalar::fraction(w, den);
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
            }
        }
    }
    return FiniteMetricSpace::validate(point_labels(n), d);
}

FiniteMetricSpace sup_norm_points(std::size_t n, long dim, long max, long den, std::mt19937_64& rng) {
    double cells = 1.0;
    for (long k = 0; k < dim; ++k) cells *= static_cast<double>(max + 1);
    if (static_cast<double>(n) > cells) throw Error(ErrorKind::InvalidParams, "grid too small for distinct points");
    std::set<std::vector<long>> seen;
    std::vector<std::vector<long>> pts;
    while (pts.size() < n) {
        std::vector<long> p(static_cast<std::size_t>(dim));
        for (auto& c : p) c = static_cast<long>(uniform_below(rng, static_cast<std::uint64_t>(max + 1)));
        if (seen.insert(p).second) pts.push_back(std::move(p));
    }
    Matrix d(n, std::vector<Scalar>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            long best = 0;
            for (std::size_t k = 0; k < pts[i].size(); ++k) best = std::max(best, std::labs(pts[i][k] - pts[j][k]));
            d[i][j] = Scalar::fraction(best, den);
        }
    }
    return FiniteMetricSpace::validate(point_labels(n), d);
}

}  // namespace

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) throw Error(ErrorKind::InvalidParams, "empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v = rng();
    while (v >= limit) v = rng();
    return v % bound;
}

GeneratorParams parse_params(std::string_view text) {
    GeneratorParams out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        if (!item.empty()) {
            const auto eq = item.find('=');
            if (eq == std::string_view::npos || eq == 0) {
                throw Error(ErrorKind::InvalidParams, "expected key=value, got '" + std::string(item) + "'");
            }
            out[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
        }
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

FiniteMetricSpace perturb(const FiniteMetricSpace& x, const Scalar& delta) {
    if (delta.sign() < 0) throw Error(ErrorKind::InvalidParams, "perturbation must be nonnegative");
    Matrix d = x.matrix();
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (i != j) d[i][j] += delta;
        }
    }
    return FiniteMetricSpace::validate(x.labels(), d);
}

FiniteMetricSpace generate(std::string_view kind, const GeneratorParams& params, std::uint64_t seed) {
    const Params p(params);
    std::mt19937_64 rng(seed);
    if (kind == "path" || kind == "cycle") {
        const auto n = static_cast<std::size_t>(p.integer("n", std::nullopt, 1));
        return line(n, p.scalar("step").value_or(Scalar(1)), kind == "cycle");
    }
    if (kind == "dyadic-net") {
        const long level = p.integer("n", std::nullopt, 0);
        if (level > 16) throw Error(ErrorKind::InvalidParams, "dyadic-net level above 16");
        return dyadic_net(static_cast<unsigned>(level));
    }
    if (kind == "graph-shortest-path") {
        return graph_metric(static_cast<std::size_t>(p.integer("n", std::nullopt, 1)), p.integer("max", 4, 1),
                            p.integer("den", 2, 1), rng);
    }
    if (kind == "sup-norm-points") {
        return sup_norm_points(static_cast<std::size_t>(p.integer("n", std::nullopt, 1)), p.integer("dim", 2, 1),
                               p.integer("max", 4, 1), p.integer("den", 2, 1), rng);
    }
    if (kind == "perturb") {
        const std::string base = p.text("of", "path");
        if (base == "perturb") throw Error(ErrorKind::InvalidParams, "perturb cannot wrap itself");
        const FiniteMetricSpace x = generate(base, params, seed);
        Scalar delta;
        if (auto given = p.scalar("delta")) {
            delta = *given;
        } else {
            const long max = p.integer("max", 4, 1);
            const long den = p.integer("den", 2, 1);
            std::mt19937_64 drng(seed ^ 0x9e3779b97f4a7c15ULL);
            delta = Scalar::fraction(static_cast<long>(uniform_below(drng, static_cast<std::uint64_t>(max))) + 1, den);
        }
        return perturb(x, delta);
    }
    throw Error(ErrorKind::UnknownKind, "unknown generator kind '" + std::string(kind) + "'");
}

}  // namespace ghm
