#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ghm {

enum class ErrorKind {
    ParseError,
    EmptySpace,
    DuplicateLabel,
    ShapeMismatch,
    AsymmetricMatrix,
    NegativeDistance,
    NonzeroDiagonal,
    ZeroOffDiagonal,
    TriangleViolation,
    EmptySubset,
    IndexOutOfRange,
    NotSurjective,
    NotIsometric,
    SizeLimitExceeded,
    SlackTooSmall,
    EmptyGlueSet,
    CauchyBoundViolated,
    UnknownKind,
    InvalidParams,
    Internal,
};

std::string_view to_string(ErrorKind kind);

/// Process exit code for an error class: 2 parse/validation, 3 size limit,
/// 4 Cauchy-bound violation, 5 internal.
int exit_code(ErrorKind kind);

/// Every failure raised by the library. `indices()` carries the offending
/// positions (e.g. the (i, j, k) of a triangle violation).
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message, std::vector<std::size_t> indices = {});

    ErrorKind kind() const noexcept { return kind_; }
    const std::vector<std::size_t>& indices() const noexcept { return indices_; }

private:
    ErrorKind kind_;
    std::vector<std::size_t> indices_;
};

}  // namespace ghm
