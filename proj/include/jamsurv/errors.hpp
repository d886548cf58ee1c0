#pragma once

#include <stdexcept>
#include <string>

namespace jamsurv {

// Invalid argument or parameter outside a function's domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A numerical routine failed to meet its contract (no bracket, no convergence).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed scenario file or command-line input.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace jamsurv
