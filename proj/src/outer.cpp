#include "cycap/outer.hpp"

#include <cmath>
#include <string>

#include "cycap/errors.hpp"

namespace cycap {

namespace {

std::string term(const char* name, int i0) {
    return std::string(name) + "_" + std::to_string(i0 + 1);
}

}  // namespace

void OuterParams::validate() const {
    for (int i = 0; i < users; ++i) {
        bool finite = std::isfinite(alpha[i]) && std::isfinite(beta[i]) && std::isfinite(gamma[i]) &&
                      std::isfinite(lambda[i]) && std::isfinite(mu[i]) && std::isfinite(rho[i]);
        if (!finite || mu[i] < 0.0) {
            throw ValidationError("outer parameters must be finite, mu nonnegative");
        }
        if (beta[i] > lambda[i] || lambda[i] > gamma[i] || alpha[i] > gamma[i]) {
            throw ValidationError("outer parameter ordering violated at user " + std::to_string(i + 1));
        }
    }
}

OuterParams outer_parameters(const ChannelRatios& r) {
    r.validate();
    OuterParams p;
    p.users = r.users;
    p.alpha.resize(r.users);
    p.beta.resize(r.users);
    p.gamma.resize(r.users);
    p.lambda.resize(r.users);
    p.mu.resize(r.users);
    p.rho.resize(r.users);
    for (int i = 0; i < r.users; ++i) {
        int n = r.next(i);
        p.alpha[i] = std::log2(1.0 + r.inr[n] + r.snr[i] / (1.0 + r.inr[i]));
        p.gamma[i] = std::log2(1.0 + r.inr[n] + r.snr[i]);
        p.lambda[i] = std::log2(1.0 + r.snr[i]);
        p.mu[i] = std::log2(1.0 + r.inr[i]);
        // lambda - mu rather than log2 of the quotient: keeps the
        // beta_i = lambda_i - mu_i identity bitwise.
        p.beta[i] = p.lambda[i] - p.mu[i];
    }
    for (int i = 0; i < r.users; ++i) {
        int prev = r.prev(i);
        double sum = p.beta[prev] + p.gamma[i];
        for (int j = 0; j < r.users; ++j) {
            if (j != i && j != prev) sum += p.alpha[j];
        }
        p.rho[i] = sum;
    }
    p.validate();
    return p;
}

ConstraintSet outer_constraints(const OuterParams& p, Regime regime) {
    if (p.users < 2) {
        throw ValidationError("outer bound needs K >= 2");
    }
    p.validate();
    const int K = p.users;
    ConstraintSet cs;
    cs.users = K;
    cs.regime = regime;
    if (regime != Regime::Weak) {
        cs.notes.push_back(std::string("regime: ") + to_string(regime) +
                           " - outer bound unasserted outside the weak regime");
    }

    auto prev = [K](int i) { return (i + K - 1) % K; };

    for (int i = 0; i < K; ++i) {
        cs.rows.push_back(make_min_constraint({ConstraintFamily::Individual, i + 1, 0}, K,
                                              {Branch{term("lambda", i), p.lambda[i]}}));
    }

    for (int m = 0; m < K; ++m) {
        for (int l = 2; l <= K - 1; ++l) {
            int last = (m + l - 1) % K;
            Branch b1{term("gamma", m), p.gamma[m]};
            for (int off = 1; off <= l - 2; ++off) {
                int j = (m + off) % K;
                b1.label += "+" + term("alpha", j);
                b1.value += p.alpha[j];
            }
            b1.label += "+" + term("beta", last);
            b1.value += p.beta[last];

            Branch b2{term("mu", m), p.mu[m]};
            for (int off = 0; off <= l - 2; ++off) {
                int j = (m + off) % K;
                b2.label += "+" + term("alpha", j);
                b2.value += p.alpha[j];
            }
            b2.label += "+" + term("beta", last);
            b2.value += p.beta[last];

            cs.rows.push_back(make_min_constraint({ConstraintFamily::AdjacentSum, m + 1, l}, K,
                                                  {std::move(b1), std::move(b2)}));
        }
    }

    {
        std::vector<Branch> branches;
        Branch sum_alpha;
        for (int j = 0; j < K; ++j) {
            if (j) sum_alpha.label += "+";
            sum_alpha.label += term("alpha", j);
            sum_alpha.value += p.alpha[j];
        }
        branches.push_back(std::move(sum_alpha));
        for (int i = 0; i < K; ++i) {
            Branch ri{term("beta", prev(i)) + "+" + term("gamma", i), p.rho[i]};
            for (int j = 0; j < K; ++j) {
                if (j != i && j != prev(i)) ri.label += "+" + term("alpha", j);
            }
            branches.push_back(std::move(ri));
        }
        cs.rows.push_back(
            make_min_constraint({ConstraintFamily::TotalSum, 0, 0}, K, std::move(branches)));
    }

    for (int i = 0; i < K; ++i) {
        Branch b{term("beta", i) + "+" + term("gamma", i), p.beta[i] + p.gamma[i]};
        for (int j = 0; j < K; ++j) {
            if (j != i) {
                b.label += "+" + term("alpha", j);
                b.value += p.alpha[j];
            }
        }
        cs.rows.push_back(make_min_constraint({ConstraintFamily::TotalSumPlus, i + 1, 0}, K, {b}));
    }

    for (int i = 0; i < K; ++i) {
        if (p.beta[i] < 0.0) {
            cs.notes.push_back("degenerate input: beta_" + std::to_string(i + 1) +
                               " < 0 (SNR below INR at user " + std::to_string(i + 1) +
                               "); rows kept as-is");
        }
    }
    for (const auto& row : cs.rows) {
        if (row.rhs < 0.0) {
            cs.notes.push_back("negative rhs on " + to_string(row.kind));
        }
    }
    return cs;
}

ConstraintSet strong_capacity(const ChannelRatios& r) {
    Regime regime = classify_regime(r);
    if (regime != Regime::Strong && regime != Regime::VeryStrong) {
        int bad = first_weak_index(r);
        throw RegimeError("strong-regime capacity requested but INR_" + std::to_string(bad) +
                              " < SNR_" + std::to_string(bad) + " (regime: " +
                              std::string(to_string(regime)) + ")",
                          bad);
    }
    const int K = r.users;
    ConstraintSet cs;
    cs.users = K;
    cs.regime = regime;

    std::vector<double> box(K), pair(K);
    for (int i = 0; i < K; ++i) {
        box[i] = std::log2(1.0 + r.snr[i]);
        pair[i] = std::log2(1.0 + r.snr[i] + r.inr[r.next(i)]);
    }

    for (int i = 0; i < K; ++i) {
        cs.rows.push_back(make_min_constraint({ConstraintFamily::Individual, i + 1, 0}, K,
                                              {Branch{term("lambda", i), box[i]}}));
    }
    if (regime == Regime::VeryStrong) {
        // Each pair row is implied by the two box rows once
        // INR_{i+1} >= (1+SNR_i) SNR_{i+1}; keep only the box.
        for (int i = 0; i < K; ++i) {
            if (box[i] + box[r.next(i)] > pair[i] + 1e-12) {
                throw ValidationError("very-strong reduction check failed at user " +
                                      std::to_string(i + 1));
            }
        }
        cs.notes.push_back("very_strong: pairwise sum rows implied by individual rows");
        return cs;
    }
    for (int i = 0; i < K; ++i) {
        cs.rows.push_back(make_min_constraint({ConstraintFamily::AdjacentSum, i + 1, 2}, K,
                                              {Branch{term("gamma", i), pair[i]}}));
    }
    return cs;
}

ConstraintSet mac_intersection(const ChannelRatios& r) {
    r.validate();
    const int K = r.users;
    ConstraintSet cs;
    cs.users = K;
    cs.regime = classify_regime(r);
    for (int i = 0; i < K; ++i) {
        int n = r.next(i);
        cs.rows.push_back(make_min_constraint(
            {ConstraintFamily::Individual, i + 1, 0}, K,
            {Branch{term("lambda", i), std::log2(1.0 + r.snr[i])}}));
        cs.rows.push_back(make_min_constraint(
            {ConstraintFamily::Individual, n + 1, 0}, K,
            {Branch{term("mu", n), std::log2(1.0 + r.inr[n])}}));
        cs.rows.push_back(make_min_constraint(
            {ConstraintFamily::AdjacentSum, i + 1, 2}, K,
            {Branch{term("gamma", i), std::log2(1.0 + r.snr[i] + r.inr[n])}}));
        if (r.inr[n] == 0.0) {
            cs.notes.push_back("mac " + std::to_string(i + 1) + ": INR_" + std::to_string(n + 1) +
                               " = 0 forces R_" + std::to_string(n + 1) + " <= 0");
        }
    }
    return cs;
}

}  // namespace cycap
