#pragma once

#include <stdexcept>
#include <string>

namespace phxmem {

// Exit-code contract used by the CLI: 0 success, 1 I/O, 2 config, 3 physics/solver.

/// Malformed or inconsistent user input (config files, schemas, geometry setup).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A physically meaningless request or an out-of-model condition
/// (out-of-range wavelength, fraction outside [0,1], unreachable set target, ...).
class PhysicsError : public std::runtime_error {
public:
    explicit PhysicsError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure: non-convergence, non-finite fields.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Filesystem failure (unreadable input, unwritable output).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace phxmem
