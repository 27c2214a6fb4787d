#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cycap/constraint.hpp"
#include "cycap/rational.hpp"

namespace cycap {

// One inequality: coeffs . x <= rhs, exact rationals.
struct LinRow {
    std::vector<Rat> coeffs;
    Rat rhs;
};

// Rescales by a positive rational so coefficients are coprime integers.
// Zero rows are left untouched. Direction is preserved (never flips sign).
void normalize_row(LinRow& row);

// A named-variable system of <=-inequalities over exact rationals. The
// trivially false row 0 <= negative is rejected at insertion; engine
// operations that derive one report infeasibility explicitly instead.
class InequalitySystem {
public:
    InequalitySystem() = default;
    explicit InequalitySystem(std::vector<std::string> variables);

    const std::vector<std::string>& variables() const { return variables_; }
    const std::vector<LinRow>& rows() const { return rows_; }
    const LinRow& row(std::size_t i) const { return rows_[i]; }
    std::size_t dimension() const { return variables_.size(); }
    std::size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }

    void add_row(LinRow row);  // throws on arity mismatch or 0 <= negative
    void add_row(std::vector<Rat> coeffs, Rat rhs);

    std::optional<std::size_t> variable_index(std::string_view name) const;

    InequalitySystem without_row(std::size_t i) const;

    // Fixes one variable to a value and drops it from the system. Rows whose
    // remaining coefficients vanish are dropped when satisfied; if one is
    // violated the substituted system is infeasible and nullopt is returned.
    std::optional<InequalitySystem> substituted(std::size_t var, const Rat& value) const;

    bool satisfies(const std::vector<Rat>& point, std::size_t* violated = nullptr) const;

    std::vector<std::string> notes;  // serialized as '#' comments

private:
    std::vector<std::string> variables_;
    std::vector<LinRow> rows_;
};

// Rate constraints as an exact system over R_1..R_K; rhs values enter through
// dyadic(). Nonnegativity rows -R_i <= 0 are appended when add_nonneg is set
// (rate regions always carry them; raw engine systems may not want them).
InequalitySystem system_from_constraints(const ConstraintSet& cs, bool add_nonneg = true);

// Interchange format: '#' comment lines, a header line of variable names,
// then one row per line "c1 c2 ... cn <= rhs" with rationals as p/q.
std::string to_text(const InequalitySystem& sys);
InequalitySystem system_from_text(const std::string& text);

}  // namespace cycap
