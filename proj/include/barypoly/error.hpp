#pragma once

#include <stdexcept>
#include <string>

namespace barypoly {

/// Raised when an argument violates a documented precondition
/// (length mismatch, parameter outside ]0;1[, non-distinct points, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace barypoly
