#include "ghm/error.hpp"

namespace ghm {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::EmptySpace: return "EmptySpace";
    case ErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::AsymmetricMatrix: return "AsymmetricMatrix";
    case ErrorKind::NegativeDistance: return "NegativeDistance";
    case ErrorKind::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorKind::ZeroOffDiagonal: return "ZeroOffDiagonal";
    case ErrorKind::TriangleViolation: return "TriangleViolation";
    case ErrorKind::EmptySubset: return "EmptySubset";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotSurjective: return "NotSurjective";
    case ErrorKind::NotIsometric: return "NotIsometric";
    case ErrorKind::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorKind::SlackTooSmall: return "SlackTooSmall";
    case ErrorKind::EmptyGlueSet: return "EmptyGlueSet";
    case ErrorKind::CauchyBoundViolated: return "CauchyBoundViolated";
    case ErrorKind::UnknownKind: return "UnknownKind";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::Internal: return "Internal";
    }
    return "Internal";
}

int exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::SizeLimitExceeded:
        return 3;
    case ErrorKind::CauchyBoundViolated:
        return 4;
    case ErrorKind::Internal:
        return 5;
    default:
        return 2;
    }
}

Error::Error(ErrorKind kind, std::string message, std::vector<std::size_t> indices)
    : std::runtime_error(std::move(message)), kind_(kind), indices_(std::move(indices)) {}

}  // namespace ghm
