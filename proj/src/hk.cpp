#include "cycap/hk.hpp"

#include <cmath>
#include <string>

#include "cycap/errors.hpp"

namespace cycap {

namespace {

std::string term(const char* name, int i0) {
    return std::string(name) + "_" + std::to_string(i0 + 1);
}

}  // namespace

void PowerSplit::validate(const ChannelRatios& r) const {
    if (static_cast<int>(snr_private.size()) != r.users ||
        static_cast<int>(inr_private.size()) != r.users) {
        throw ValidationError("power split arity mismatch");
    }
    for (int i = 0; i < r.users; ++i) {
        if (!(inr_private[i] >= 0.0) || inr_private[i] > r.inr[i]) {
            throw ValidationError("split: INR_ip out of [0, INR_i] at user " + std::to_string(i + 1));
        }
        if (!(snr_private[i] >= 0.0) || snr_private[i] > r.snr[i]) {
            throw ValidationError("split: SNR_ip out of [0, SNR_i] at user " + std::to_string(i + 1));
        }
        if (r.inr[i] > 0.0) {
            // Both ratios scale with the same private power fraction.
            double lhs = snr_private[i] * r.inr[i];
            double rhs = r.snr[i] * inr_private[i];
            double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
            if (std::abs(lhs - rhs) > 1e-9 * scale) {
                throw ValidationError("split fractions inconsistent at user " + std::to_string(i + 1));
            }
        }
    }
}

PowerSplit etw_split(const ChannelRatios& r) {
    r.validate();
    PowerSplit s;
    s.snr_private.resize(r.users);
    s.inr_private.resize(r.users);
    for (int i = 0; i < r.users; ++i) {
        if (r.inr[i] > 1.0) {
            s.inr_private[i] = 1.0;
            s.snr_private[i] = r.snr[i] / r.inr[i];
        } else {
            s.inr_private[i] = r.inr[i];
            s.snr_private[i] = r.snr[i];
        }
    }
    return s;
}

PowerSplit all_private_split(const ChannelRatios& r) {
    r.validate();
    PowerSplit s;
    s.snr_private = r.snr;
    s.inr_private = r.inr;
    return s;
}

void HkParams::validate() const {
    for (int i = 0; i < users; ++i) {
        bool finite = std::isfinite(a[i]) && std::isfinite(d[i]) && std::isfinite(e[i]) &&
                      std::isfinite(g[i]) && std::isfinite(r[i]);
        if (!finite || a[i] < 0.0 || e[i] < 0.0) {
            throw ValidationError("rate parameters must be finite and nonnegative");
        }
        if (a[i] > d[i] || d[i] > g[i] || a[i] > e[i] || e[i] > g[i]) {
            throw ValidationError("rate parameter ordering violated at user " + std::to_string(i + 1));
        }
    }
}

HkParams hk_parameters(const ChannelRatios& r, const PowerSplit& s) {
    r.validate();
    s.validate(r);
    HkParams p;
    p.users = r.users;
    p.a.resize(r.users);
    p.d.resize(r.users);
    p.e.resize(r.users);
    p.g.resize(r.users);
    p.r.resize(r.users);
    for (int i = 0; i < r.users; ++i) {
        int n = r.next(i);
        // Noise floor at receiver i: unit noise plus the neighbour's private
        // part. Keeping `floor <= common` bitwise keeps the a<=e, d<=g
        // orderings exact in floating point.
        double floor = 1.0 + s.inr_private[n];
        double common = 1.0 + r.inr[n];
        p.a[i] = std::log2((floor + s.snr_private[i]) / floor);
        p.d[i] = std::log2((floor + r.snr[i]) / floor);
        p.e[i] = std::log2((common + s.snr_private[i]) / floor);
        p.g[i] = std::log2((common + r.snr[i]) / floor);
    }
    for (int i = 0; i < r.users; ++i) {
        double sum = p.a[r.prev(i)] + p.g[i];
        for (int j = 0; j < r.users; ++j) {
            if (j != i && j != r.prev(i)) sum += p.e[j];
        }
        p.r[i] = sum;
    }
    p.validate();
    return p;
}

ConstraintSet achievable_constraints(const HkParams& p, Regime regime) {
    if (p.users < 2) {
        throw ValidationError("achievable region needs K >= 2");
    }
    p.validate();
    const int K = p.users;
    ConstraintSet cs;
    cs.users = K;
    cs.regime = regime;

    auto prev = [K](int i) { return (i + K - 1) % K; };

    for (int i = 0; i < K; ++i) {
        cs.rows.push_back(make_min_constraint(
            {ConstraintFamily::Individual, i + 1, 0}, K,
            {Branch{term("d", i), p.d[i]},
             Branch{term("a", i) + "+" + term("e", prev(i)), p.a[i] + p.e[prev(i)]}}));
    }

    for (int m = 0; m < K; ++m) {
        for (int l = 2; l <= K - 1; ++l) {
            int last = (m + l - 1) % K;
            Branch b1{term("g", m), p.g[m]};
            for (int off = 1; off <= l - 2; ++off) {
                int j = (m + off) % K;
                b1.label += "+" + term("e", j);
                b1.value += p.e[j];
            }
            b1.label += "+" + term("a", last);
            b1.value += p.a[last];

            Branch b2;
            for (int off = -1; off <= l - 2; ++off) {
                int j = (m + off + K) % K;
                if (!b2.label.empty()) b2.label += "+";
                b2.label += term("e", j);
                b2.value += p.e[j];
            }
            b2.label += "+" + term("a", last);
            b2.value += p.a[last];

            cs.rows.push_back(make_min_constraint({ConstraintFamily::AdjacentSum, m + 1, l}, K,
                                                  {std::move(b1), std::move(b2)}));
        }
    }

    {
        std::vector<Branch> branches;
        Branch sum_e;
        for (int j = 0; j < K; ++j) {
            if (j) sum_e.label += "+";
            sum_e.label += term("e", j);
            sum_e.value += p.e[j];
        }
        branches.push_back(std::move(sum_e));
        for (int i = 0; i < K; ++i) {
            Branch ri{term("a", prev(i)) + "+" + term("g", i), p.r[i]};
            for (int j = 0; j < K; ++j) {
                if (j != i && j != prev(i)) ri.label += "+" + term("e", j);
            }
            branches.push_back(std::move(ri));
        }
        cs.rows.push_back(
            make_min_constraint({ConstraintFamily::TotalSum, 0, 0}, K, std::move(branches)));
    }

    for (int i = 0; i < K; ++i) {
        Branch b{term("a", i) + "+" + term("g", i), p.a[i] + p.g[i]};
        for (int j = 0; j < K; ++j) {
            if (j != i) {
                b.label += "+" + term("e", j);
                b.value += p.e[j];
            }
        }
        cs.rows.push_back(make_min_constraint({ConstraintFamily::TotalSumPlus, i + 1, 0}, K, {b}));
    }

    return cs;
}

HkParamsExact to_exact(const HkParams& p) {
    HkParamsExact x;
    x.users = p.users;
    x.a.reserve(p.users);
    for (int i = 0; i < p.users; ++i) {
        x.a.push_back(dyadic(p.a[i]));
        x.d.push_back(dyadic(p.d[i]));
        x.e.push_back(dyadic(p.e[i]));
        x.g.push_back(dyadic(p.g[i]));
    }
    return x;
}

InequalitySystem pre_elimination_system(const HkParamsExact& p) {
    const int K = p.users;
    std::vector<std::string> vars;
    for (int i = 0; i < K; ++i) vars.push_back("S_" + std::to_string(i + 1));
    for (int i = 0; i < K; ++i) vars.push_back("T_" + std::to_string(i + 1));
    for (int i = 0; i < K; ++i) vars.push_back("R_" + std::to_string(i + 1));
    InequalitySystem sys(vars);
    const int S = 0, T = K, R = 2 * K;
    auto zero = [&] { return std::vector<Rat>(3 * K, Rat(0)); };

    for (int i = 0; i < K; ++i) {
        auto row = zero();
        row[S + i] = -1;
        sys.add_row(std::move(row), Rat(0));
        row = zero();
        row[T + i] = -1;
        sys.add_row(std::move(row), Rat(0));
    }
    for (int i = 0; i < K; ++i) {
        auto row = zero();
        row[R + i] = 1;
        row[S + i] = -1;
        row[T + i] = -1;
        sys.add_row(row, Rat(0));
        for (auto& c : row) c = -c;
        sys.add_row(std::move(row), Rat(0));
    }
    for (int i = 0; i < K; ++i) {
        int n = (i + 1) % K;
        auto row = zero();
        row[S + i] = 1;
        sys.add_row(row, p.a[i]);
        row[T + i] = 1;
        sys.add_row(row, p.d[i]);
        row[T + i] = 0;
        row[T + n] = 1;
        sys.add_row(row, p.e[i]);
        row[T + i] = 1;
        sys.add_row(std::move(row), p.g[i]);
    }
    sys.notes.push_back("dyadic_resolution 2^-" + std::to_string(kDyadicBits));
    return sys;
}

InequalitySystem closed_form_system(const HkParamsExact& p) {
    const int K = p.users;
    std::vector<Rat> r(K);
    for (int i = 0; i < K; ++i) {
        int prev = (i + K - 1) % K;
        r[i] = p.a[prev] + p.g[i];
        for (int j = 0; j < K; ++j) {
            if (j != i && j != prev) r[i] += p.e[j];
        }
    }

    std::vector<std::string> vars;
    for (int i = 0; i < K; ++i) vars.push_back("R_" + std::to_string(i + 1));
    InequalitySystem sys(vars);
    auto add = [&](const std::vector<int>& coeffs, Rat rhs) {
        std::vector<Rat> row(coeffs.begin(), coeffs.end());
        sys.add_row(std::move(row), std::move(rhs));
    };

    for (int i = 0; i < K; ++i) {
        int prev = (i + K - 1) % K;
        Rat alt = p.a[i] + p.e[prev];
        add(kind_coeffs({ConstraintFamily::Individual, i + 1, 0}, K), std::min(p.d[i], alt));
    }
    for (int m = 0; m < K; ++m) {
        for (int l = 2; l <= K - 1; ++l) {
            int last = (m + l - 1) % K;
            Rat b1 = p.g[m] + p.a[last];
            for (int off = 1; off <= l - 2; ++off) b1 += p.e[(m + off) % K];
            Rat b2 = p.a[last];
            for (int off = -1; off <= l - 2; ++off) b2 += p.e[(m + off + K) % K];
            add(kind_coeffs({ConstraintFamily::AdjacentSum, m + 1, l}, K), std::min(b1, b2));
        }
    }
    {
        Rat best = 0;
        for (int j = 0; j < K; ++j) best += p.e[j];
        for (int i = 0; i < K; ++i) best = std::min(best, r[i]);
        add(kind_coeffs({ConstraintFamily::TotalSum, 0, 0}, K), best);
    }
    for (int i = 0; i < K; ++i) {
        Rat rhs = p.a[i] + p.g[i];
        for (int j = 0; j < K; ++j) {
            if (j != i) rhs += p.e[j];
        }
        add(kind_coeffs({ConstraintFamily::TotalSumPlus, i + 1, 0}, K), std::move(rhs));
    }
    for (int i = 0; i < K; ++i) {
        std::vector<Rat> row(K, Rat(0));
        row[i] = -1;
        sys.add_row(std::move(row), Rat(0));
    }
    sys.notes.push_back("dyadic_resolution 2^-" + std::to_string(kDyadicBits));
    return sys;
}

}  // namespace cycap
