#pragma once

#include <stdexcept>
#include <string>

namespace kacdepth {

// Enumeration would exceed the configured guard limit.
class GuardExceeded : public std::runtime_error {
public:
    explicit GuardExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A verified identity failed, or a result violated a structural property
// (polynomiality, nonnegativity) that the mathematics guarantees.
class MathMismatch : public std::runtime_error {
public:
    explicit MathMismatch(const std::string& what) : std::runtime_error(what) {}
};

// Default bound on the number of points any brute-force scan may visit.
inline constexpr unsigned long long kDefaultGuard = 1ULL << 24;

} // namespace kacdepth
