#pragma once

#include <stdexcept>
#include <string>

namespace pinnfcg {

/// Argument outside the domain of a formula (log of a non-positive value,
/// non-monotone cycle axis, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A regression or min-max scaling with zero spread in its input.
class DegenerateError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Invalid configuration value.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed input file. Carries the file name and 1-based line when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& file, std::size_t line, const std::string& what)
        : std::runtime_error(file + (line > 0 ? ":" + std::to_string(line) : std::string{}) + ": " + what),
          file_(file),
          line_(line) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

/// Training produced a non-finite loss or gradient.
class NumericAbort : public std::runtime_error {
public:
    NumericAbort(const std::string& term, int epoch)
        : std::runtime_error("non-finite " + term + " at epoch " + std::to_string(epoch)),
          term_(term),
          epoch_(epoch) {}

    const std::string& term() const noexcept { return term_; }
    int epoch() const noexcept { return epoch_; }

private:
    std::string term_;
    int epoch_;
};

}  // namespace pinnfcg
