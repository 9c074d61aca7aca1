#pragma once

#include <stdexcept>
#include <string>

namespace detqpe {

/// Malformed or inconsistent user input (files, CLI arguments, formats).
class InputError : public std::runtime_error {
  public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical breakdown (lost normalization, failed tolerance, overflow).
class NumericError : public std::runtime_error {
  public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace detqpe
