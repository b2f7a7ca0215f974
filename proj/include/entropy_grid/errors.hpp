#pragma once

#include <stdexcept>
#include <string>

namespace entropy_grid {

// Precondition or validity-range violation. CLI maps this to exit code 2.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// File system / serialization failure. CLI maps this to exit code 3.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace entropy_grid
