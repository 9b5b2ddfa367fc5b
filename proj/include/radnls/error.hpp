#pragma once

#include <stdexcept>
#include <string>

namespace radnls {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid grid, step policy, or other configuration value.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Step size violates the phase-resolution guard.
class PhaseGuardError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Too much mass near the outer boundary of the domain.
class TailLeakError : public Error {
public:
    using Error::Error;
};

/// Significant spectral content in the top octave where differentiation aliases.
class AliasingError : public Error {
public:
    using Error::Error;
};

/// Index outside an allowed range (dyadic shell, parameter range).
class RangeError : public Error {
public:
    using Error::Error;
};

/// Dyadic truncation lost too much of a Besov sum.
class TruncationError : public Error {
public:
    using Error::Error;
};

/// No admissible tail radius fits inside the domain.
class DomainTooSmallError : public Error {
public:
    using Error::Error;
};

/// Non-finite values appeared during time stepping.
class InstabilityError : public Error {
public:
    InstabilityError(const std::string& what, std::size_t step)
        : Error(what), step_(step) {}
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

/// Sampling too coarse for differencing or windowed integration.
class StrideError : public Error {
public:
    using Error::Error;
};

/// The smallness search ran past its largest admissible scale.
class RescaleError : public Error {
public:
    using Error::Error;
};

/// Malformed configuration or checkpoint input.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace radnls
