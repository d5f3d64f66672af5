#pragma once

#include <stdexcept>
#include <string>

namespace berk {

// Kernel-level precondition violations (red of the Gauss point, Infinity*Zero, ...).
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input objects (bad schema, non-partition cheese input, invalid triangulation).
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Operations that would need data outside the computable backend
// (irrational preimage centers, poles in both charts, ...).
class unsupported_error : public std::runtime_error {
public:
    explicit unsupported_error(const std::string& what) : std::runtime_error(what) {}
};

// Fiber computations that need preimage centers the oracle did not supply.
class incomplete_oracle_error : public std::runtime_error {
public:
    explicit incomplete_oracle_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace berk
