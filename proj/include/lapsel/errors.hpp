#pragma once

#include <stdexcept>
#include <string>

namespace lapsel {

/// Raised when a computation produces non-finite values or an internal
/// numerical consistency check (e.g. dual-rule quadrature agreement) fails.
class numeric_error : public std::runtime_error {
public:
  explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised by jump detection when the selection path is flat: the a-grid
/// must be widened by the caller.
class no_jump_error : public std::runtime_error {
public:
  explicit no_jump_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when a spherical-coordinate operation is requested too close to a
/// pole (sin(phi) below the configured margin).
class pole_error : public std::domain_error {
public:
  explicit pole_error(const std::string& msg) : std::domain_error(msg) {}
};

}  // namespace lapsel
