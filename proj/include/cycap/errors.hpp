#pragma once

#include <stdexcept>
#include <string>

namespace cycap {

// Bad user input: malformed channel spec, out-of-range parameters, parse
// failures. Maps to CLI exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// An operation was invoked in an interference regime where its result is not
// defined (e.g. the strong-regime capacity on a weak channel). Maps to CLI
// exit code 3.
class RegimeError : public std::runtime_error {
public:
    RegimeError(const std::string& what, int violating_user)
        : std::runtime_error(what), violating_user_(violating_user) {}

    // 1-based index of the first user violating the regime condition.
    int violating_user() const { return violating_user_; }

private:
    int violating_user_;
};

// Vertex enumeration on a polytope with a recession ray.
class UnboundedPolytopeError : public std::runtime_error {
public:
    UnboundedPolytopeError(const std::string& what, std::string ray)
        : std::runtime_error(what), ray_(std::move(ray)) {}

    const std::string& ray() const { return ray_; }

private:
    std::string ray_;  // human-readable unbounded direction
};

}  // namespace cycap
