#pragma once

#include <stdexcept>
#include <string>

namespace shiftq {

/// Malformed or mismatched inputs: wrong variable lists, bad indices, parse trouble.
struct StructuralError : std::runtime_error {
    explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

/// A mathematical precondition is violated (unverified MC element, wrong degree, ...).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// A configured budget was exceeded (degree cap, candidate count, series order).
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

namespace limits {

/// Total-degree guard for polynomial products; keeps Schouten/Gerstenhaber
/// iterations from blowing up silently.
unsigned max_total_degree();
void set_max_total_degree(unsigned cap);

/// Candidate budget for the scanner.
unsigned long long default_budget();
void set_default_budget(unsigned long long budget);

}  // namespace limits

}  // namespace shiftq
