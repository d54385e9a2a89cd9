#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pretopo {

// Base of every error raised by the library. The CLI maps subclasses onto
// exit codes (see cli.hpp).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A caller broke a documented precondition (index out of range, mixed
// universes, empty set where a non-empty one is required).
class ContractViolation : public Error {
public:
    using Error::Error;
};

// Invalid parameters or configuration documents.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Malformed input text. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Well-formed input whose content cannot be processed.
class DataError : public Error {
public:
    using Error::Error;
};

// A series with zero variance was handed to a correlation criterion.
class DegenerateSeries : public DataError {
public:
    DegenerateSeries(std::size_t item, const std::string& context = {})
        : DataError("degenerate (constant) series for item " + std::to_string(item) +
                    (context.empty() ? std::string{} : " [" + context + "]")),
          item_(item) {}

    std::size_t item() const noexcept { return item_; }

private:
    std::size_t item_;
};

// The operation is not defined for this kind of input.
class Unsupported : public Error {
public:
    using Error::Error;
};

} // namespace pretopo
