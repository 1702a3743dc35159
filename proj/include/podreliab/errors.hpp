#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace podreliab {

// Bad user input: malformed files, invalid configuration, domain violations.
// The CLI maps these to exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
public:
    ParseError(std::size_t line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Argument outside the mathematical domain of an operation (e.g. log of a
// non-positive value).
class DomainError : public InputError {
public:
    using InputError::InputError;
};

// Response series that do not share a horizon grid.
class AlignmentError : public InputError {
public:
    AlignmentError(const std::string& series_id, const std::string& what)
        : InputError("series '" + series_id + "': " + what), series_id_(series_id) {}

    const std::string& series_id() const noexcept { return series_id_; }

private:
    std::string series_id_;
};

// Regression design matrix without variance in the process parameter.
class SingularDesignError : public InputError {
public:
    using InputError::InputError;
};

// Invariant broken inside the library (exit code 1).
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace podreliab
