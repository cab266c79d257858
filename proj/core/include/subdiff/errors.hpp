#pragma once

#include <stdexcept>
#include <string>

namespace subdiff {

/// Invalid configuration, parameters outside the supported domain, or a
/// profile/kernel failing its admissibility checks. CLI exit code 2.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A numeric procedure failed to reach its target (quadrature not converging,
/// truncation bound unattainable, out-of-range table lookup). CLI exit code 3.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A spatial grid cannot resolve the requested construction (symbol decay or
/// aliasing requirements not met). CLI exit code 4.
class resolution_error : public std::runtime_error {
public:
    explicit resolution_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline constexpr const char* library_version = "0.1.0";

} // namespace subdiff
