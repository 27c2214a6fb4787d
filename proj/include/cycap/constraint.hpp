#pragma once

#include <string>
#include <vector>

#include "cycap/channel.hpp"

namespace cycap {

// The four families of rate constraints shared by the achievable region and
// the outer bound: per-user rate, sums of l cyclically adjacent rates, the
// total sum, and the total sum plus one repeated user.
enum class ConstraintFamily { Individual, AdjacentSum, TotalSum, TotalSumPlus };

struct ConstraintKind {
    ConstraintFamily family = ConstraintFamily::Individual;
    int index = 0;   // 1-based user i (Individual, TotalSumPlus) or window start m (AdjacentSum); 0 for TotalSum
    int length = 0;  // window length l for AdjacentSum; 0 otherwise

    friend bool operator==(const ConstraintKind&, const ConstraintKind&) = default;
    friend auto operator<=>(const ConstraintKind&, const ConstraintKind&) = default;
};

std::string to_string(const ConstraintKind& k);

// Rate multiplicities on R_1..R_K implied by a kind.
std::vector<int> kind_coeffs(const ConstraintKind& k, int users);

// Number of rate terms counted with multiplicity: 1, l, K, K+1.
int rate_terms(const ConstraintKind& k, int users);

// One candidate right-hand side of a min{...} expression, with its symbolic
// form ("d_1", "a_1+e_2", ...) kept for provenance.
struct Branch {
    std::string label;
    double value = 0.0;  // bits
};

// coeffs . R <= rhs, rhs evaluated eagerly as the min over branches.
struct LinearConstraint {
    ConstraintKind kind;
    std::vector<int> coeffs;
    double rhs = 0.0;  // bits
    int branch = 0;    // index of the branch attaining the min
    std::vector<Branch> branches;

    const std::string& branch_label() const { return branches[branch].label; }
};

LinearConstraint make_min_constraint(ConstraintKind kind, int users, std::vector<Branch> branches);

struct ConstraintSet {
    int users = 0;
    Regime regime = Regime::Weak;  // regime of the generating channel
    std::vector<LinearConstraint> rows;
    std::vector<std::string> notes;  // diagnostics (degenerate inputs, reductions)
};

// Serialized record identity: kind, coeffs, rhs bits, attained branch label.
bool same_record(const LinearConstraint& a, const LinearConstraint& b);

// CSV: kind,index,length,coeffs,rhs_bits,branch. Doubles rendered so that the
// round-trip is bit-exact.
std::string to_csv(const ConstraintSet& cs);
ConstraintSet constraint_set_from_csv(const std::string& text);

// Line-oriented structured text with '#' comments; same record contents.
std::string to_text(const ConstraintSet& cs);
ConstraintSet constraint_set_from_text(const std::string& text);

// Shortest decimal form of x that parses back to the identical double.
std::string format_double(double x);

}  // namespace cycap
