#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace memchaos {

// Base for everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid numeric input: non-finite values, out-of-range parameters,
// preconditions on sizes and lengths.
class DomainError : public Error {
public:
    using Error::Error;
};

// A trajectory left the admissible region (|x_i| > 1e12 or non-finite).
// step_index() is the count of completed integration steps, first step = 1.
class DivergenceError : public Error {
public:
    DivergenceError(std::size_t step_index, const std::string& what)
        : Error(what), step_(step_index) {}
    std::size_t step_index() const noexcept { return step_; }

private:
    std::size_t step_;
};

// Malformed text input (key files, hex frames). token_index() is the
// 0-based index of the offending token.
class ParseError : public Error {
public:
    ParseError(std::size_t token_index, const std::string& what)
        : Error(what), index_(token_index) {}
    std::size_t token_index() const noexcept { return index_; }

private:
    std::size_t index_;
};

// Binary container violations: bad magic, version, size arithmetic,
// trailing bytes, unsupported image depth.
class FormatError : public Error {
public:
    using Error::Error;
};

// Filesystem failures.
class IoError : public Error {
public:
    using Error::Error;
};

// Statistical degeneracies: zero variance, collapsed tangent basis,
// all-zero series.
class NumericError : public Error {
public:
    using Error::Error;
};

}  // namespace memchaos
