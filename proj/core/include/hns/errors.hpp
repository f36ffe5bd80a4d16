#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hns {

/// Malformed or invalid configuration text. `line` is 1-based, 0 = whole file.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// NaN/Inf or other non-recoverable numerical breakdown during a computation.
/// Carries a snapshot of where the solver was when it died.
class NumericalFailure : public std::runtime_error {
public:
    NumericalFailure(std::string msg, double t = 0.0, std::uint64_t step = 0)
        : std::runtime_error(msg + " (t=" + std::to_string(t) +
                             ", step=" + std::to_string(step) + ")"),
          t_(t), step_(step) {}
    double time() const { return t_; }
    std::uint64_t step() const { return step_; }

private:
    double t_;
    std::uint64_t step_;
};

/// File format or filesystem problem (trace CSV, checkpoint, manifest).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hns
