#pragma once

#include <vector>

#include "cycap/channel.hpp"
#include "cycap/constraint.hpp"
#include "cycap/ineq.hpp"

namespace cycap {

// Private/common power split, expressed through the private part's ratios.
// inr_private[i] is the interference user i's private signal causes at
// receiver i-1; snr_private[i] its direct ratio at receiver i. Both scale
// with the same power fraction, hence the consistency invariant
// snr_private * INR == snr * inr_private.
struct PowerSplit {
    std::vector<double> snr_private;
    std::vector<double> inr_private;

    void validate(const ChannelRatios& r) const;
};

// The Etkin-Tse-Wang choice: private interference pinned to the noise floor,
// INR_ip = min(INR_i, 1).
PowerSplit etw_split(const ChannelRatios& r);

// Everything private (no common message), INR_ip = INR_i.
PowerSplit all_private_split(const ChannelRatios& r);

// Scalar rate parameters of the achievable region, in bits. At receiver i
// the interferer is user i+1, whose undecodable private part raises the
// noise floor to 1 + INR_(i+1)p:
//   a_i: own private alone          d_i: own full signal
//   e_i: own private + neighbour's common
//   g_i: own full signal + neighbour's common
//   r_i = a_{i-1} + g_i + sum of e_j over j != i, i-1.
struct HkParams {
    int users = 0;
    std::vector<double> a, d, e, g, r;

    void validate() const;
};

HkParams hk_parameters(const ChannelRatios& r, const PowerSplit& s);

// The K^2+1 achievable rate constraints (individual, adjacent-window sums,
// total sum, total sum plus a repeated user), each min-branch evaluated
// eagerly with its symbolic provenance recorded.
ConstraintSet achievable_constraints(const HkParams& p, Regime regime);

// Exact-rational mirror of a, d, e, g for the polytope experiments. r is
// derived, never rounded separately, so the closed form and the rate-split
// system are built from identical scalars.
struct HkParamsExact {
    int users = 0;
    std::vector<Rat> a, d, e, g;
};

HkParamsExact to_exact(const HkParams& p);

// The rate-split system over {S_i, T_i, R_i}: nonnegative split rates,
// R_i = S_i + T_i (two inequalities), and the four decoding constraints per
// receiver: S_i <= a_i, S_i+T_i <= d_i, S_i+T_{i+1} <= e_i,
// S_i+T_i+T_{i+1} <= g_i. 8K rows over 3K variables. Eliminating all S and T
// should project onto the closed-form region below; set_equal decides.
InequalitySystem pre_elimination_system(const HkParamsExact& p);

// Closed-form achievable region over R_1..R_K in exact arithmetic
// (nonnegativity rows included).
InequalitySystem closed_form_system(const HkParamsExact& p);

}  // namespace cycap
