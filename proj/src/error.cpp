#include "signbal/error.hpp"

namespace signbal {

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

ValidationError::ValidationError(ValidationKind kind, const std::string& what)
    : Error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

DegenerateError::DegenerateError(DegeneracyKind kind, const std::string& what)
    : Error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

const char* to_string(ValidationKind kind) noexcept {
    switch (kind) {
        case ValidationKind::asymmetric: return "asymmetric matrix";
        case ValidationKind::nonzero_diagonal: return "nonzero diagonal";
        case ValidationKind::alphabet: return "entry outside {-1,0,1}";
        case ValidationKind::shape: return "matrix is not square";
    }
    return "validation error";
}

const char* to_string(DegeneracyKind kind) noexcept {
    switch (kind) {
        case DegeneracyKind::no_triangles: return "no triangles";
        case DegeneracyKind::zero_variance: return "degenerate variance";
        case DegeneracyKind::all_replicates: return "degenerate replicates";
    }
    return "degenerate input";
}

}  // namespace signbal
