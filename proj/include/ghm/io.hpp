#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

#include "ghm/metric_space.hpp"

namespace ghm {

struct NamedSpace {
    std::string name;
    FiniteMetricSpace space;
};

/// Parses a space document
///   {"name": "...", "points": ["a", ...], "dist": [[0, "1/3", 0.5], ...]}
/// Matrix entries may be JSON integers, JSON decimals or strings holding any
/// Scalar literal; decimals are read from their source text, never through a
/// double. Syntax and field errors raise ParseError naming the line or field;
/// metric violations raise the matching validation error. `origin` prefixes
/// messages (typically the file path).
NamedSpace parse_space(std::string_view text, std::string_view origin = "<input>");
NamedSpace parse_space_file(const std::filesystem::path& path);

/// Inverse of parse_space. Integers are written as JSON integers, other
/// rationals as "p/q" strings, one matrix row per line.
std::string emit_space(const FiniteMetricSpace& space, std::string_view name);

/// {"exact": "p/q", "decimal": approx} style pair used by reports.
nlohmann::json scalar_json(const Scalar& value);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

}  // namespace ghm
