#pragma once

#include <vector>

#include "cycap/channel.hpp"
#include "cycap/constraint.hpp"

namespace cycap {

// Scalar parameters of the genie-aided outer bound, in bits. beta is
// computed as lambda - mu so the identity beta_i = lambda_i - mu_i holds
// bitwise. rho_i = beta_{i-1} + gamma_i + sum of alpha_j over j != i, i-1.
struct OuterParams {
    int users = 0;
    std::vector<double> alpha, beta, gamma, lambda, mu, rho;

    void validate() const;
};

// Formulas are evaluated in any regime; the bound is asserted only for weak
// channels (the caller tags the emitted set with the channel regime).
OuterParams outer_parameters(const ChannelRatios& r);

// The K^2+1 outer-bound constraints, kind-for-kind pairable with the
// achievable set. Rows with negative rhs (degenerate inputs such as
// SNR_i = 0 with INR_i > 0) are kept verbatim and flagged in notes.
ConstraintSet outer_constraints(const OuterParams& p, Regime regime);

// Strong-regime capacity: K individual rows plus K adjacent-pair rows; in
// the very strong regime the pair rows are verified implied and only the
// K-row box is returned. Throws RegimeError outside Strong/VeryStrong.
ConstraintSet strong_capacity(const ChannelRatios& r);

// Intersection of the K two-user multiple-access regions: for each receiver
// i, rows R_i <= log2(1+SNR_i), R_{i+1} <= log2(1+INR_{i+1}),
// R_i + R_{i+1} <= log2(1+SNR_i+INR_{i+1}). 3K rows, any regime.
ConstraintSet mac_intersection(const ChannelRatios& r);

}  // namespace cycap
