#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace signbal {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad argument or configuration supplied by the caller.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Edge-list text that cannot be turned into a network.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

enum class ValidationKind { asymmetric, nonzero_diagonal, alphabet, shape };

/// A matrix that is not a signed adjacency matrix.
class ValidationError : public Error {
public:
    ValidationError(ValidationKind kind, const std::string& what);
    ValidationKind kind() const noexcept { return kind_; }

private:
    ValidationKind kind_;
};

enum class DegeneracyKind { no_triangles, zero_variance, all_replicates };

/// Inference is impossible on this input (no triangles, zero variance, ...).
class DegenerateError : public Error {
public:
    DegenerateError(DegeneracyKind kind, const std::string& what);
    DegeneracyKind kind() const noexcept { return kind_; }

private:
    DegeneracyKind kind_;
};

const char* to_string(ValidationKind kind) noexcept;
const char* to_string(DegeneracyKind kind) noexcept;

}  // namespace signbal
