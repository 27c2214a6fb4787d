#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cycap/ineq.hpp"
#include "cycap/rational.hpp"

namespace cycap {

// A point separating two systems: it satisfies one and violates the
// indicated row of the other.
struct Witness {
    std::vector<Rat> point;
    std::optional<std::size_t> violated_row;
};

// Result of projection/reduction. When the input is infeasible, `system` is
// replaced by a minimal infeasible core: an inclusion-minimal subsystem (or
// lower/upper row pair found during elimination) that already has no
// solution. Removing any row of the core makes it feasible, so the core is
// itself the irredundant description of the empty set.
struct Reduction {
    InequalitySystem system;
    std::optional<InequalitySystem> infeasible_core;

    bool feasible() const { return !infeasible_core.has_value(); }
};

struct FmOptions {
    // Wall-clock budget; exceeded => TimeBudgetError with progress attached.
    std::optional<std::chrono::milliseconds> budget;
};

class TimeBudgetError : public std::runtime_error {
public:
    TimeBudgetError(const std::string& what, std::vector<std::string> eliminated, std::size_t rows)
        : std::runtime_error(what), eliminated_(std::move(eliminated)), rows_(rows) {}

    const std::vector<std::string>& eliminated() const { return eliminated_; }
    std::size_t rows_at_stop() const { return rows_; }

private:
    std::vector<std::string> eliminated_;
    std::size_t rows_;
};

// Exact Fourier-Motzkin projection onto the complement of `eliminate`.
// One variable at a time (cheapest pairing first), every lower bound paired
// with every upper bound, pass-through of rows not mentioning the variable,
// redundancy removal after each elimination pass.
Reduction fourier_motzkin_eliminate(const InequalitySystem& sys,
                                    const std::vector<std::string>& eliminate,
                                    const FmOptions& options = {});

// Irredundant equivalent system: drops row k iff max coeffs_k . x over the
// remaining rows is <= rhs_k (decided exactly; unbounded keeps the row).
// Scaled duplicates collapse first. Infeasible input yields a minimal
// infeasible core, as described on Reduction.
Reduction remove_redundant(const InequalitySystem& sys);

struct ContainsResult {
    enum class Status { Contained, NotContained, InnerUnbounded };
    Status status = Status::Contained;
    std::optional<Witness> witness;  // NotContained: inner point outside outer row
    std::size_t outer_row = 0;       // row at fault for NotContained / InnerUnbounded
    std::vector<Rat> ray;            // InnerUnbounded: direction of unbounded growth

    bool ok() const { return status == Status::Contained; }
};

// Every point of inner satisfies outer? Decided by maximizing each outer row
// over inner. Both systems must share the variable list. An empty inner is
// contained in anything.
ContainsResult contains(const InequalitySystem& outer, const InequalitySystem& inner);

struct SetEqualResult {
    bool equal = false;
    ContainsResult forward;   // contains(a, b)
    ContainsResult backward;  // contains(b, a)
};

SetEqualResult set_equal(const InequalitySystem& a, const InequalitySystem& b);

struct VertexList {
    bool feasible = true;
    // Exact vertices; counterclockwise order in 2 dimensions.
    std::vector<std::vector<Rat>> points;
};

// All vertices of a bounded polytope of dimension <= 3 (basic feasible
// solutions, deduplicated). Throws ValidationError above 3 dimensions and
// UnboundedPolytopeError (naming a ray) on unbounded input; an infeasible
// system returns an empty, feasible=false list.
VertexList enumerate_vertices(const InequalitySystem& sys, bool add_nonneg);

}  // namespace cycap
