#pragma once

#include <vector>

#include "cycap/ineq.hpp"
#include "cycap/rational.hpp"

namespace cycap {

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rat value;               // Optimal: the optimum of the objective
    std::vector<Rat> point;  // Optimal: a maximizer (one entry per system variable)
    std::vector<Rat> ray;    // Unbounded: recession direction with growing objective
};

// max objective . x over {x free : rows}. Exact rational simplex, Bland's
// rule. Variables are unrestricted; bounds come only from the rows.
LpResult maximize(const InequalitySystem& sys, const std::vector<Rat>& objective);

bool lp_feasible(const InequalitySystem& sys);

// sup objective . x computed on the multiplier side: min y.b subject to
// y.A = objective, y >= 0. Requires a feasible system (callers check).
// Infeasible here means no multiplier certificate exists, i.e. the primal
// maximum is unbounded. Much smaller tableaus than maximize() when rows
// outnumber variables, but produces no maximizing point.
LpResult support_value(const InequalitySystem& sys, const std::vector<Rat>& objective);

}  // namespace cycap
