#include "cycap/simplex.hpp"

#include <cassert>
#include <stdexcept>

namespace cycap {

namespace {

// Dense tableau for min cost.z subject to M z = q, z >= 0, solved in exact
// arithmetic with Bland's rule (entering: lowest eligible column; leaving:
// lowest basis index among minimal ratios), which rules out cycling.
class Tableau {
public:
    Tableau(int nrows, int ncols) : nrows_(nrows), ncols_(ncols) {
        rows_.assign(nrows, std::vector<Rat>(ncols + 1, Rat(0)));
        basis_.assign(nrows, -1);
        allowed_.assign(ncols, true);
    }

    Rat& at(int i, int j) { return rows_[i][j]; }
    Rat& rhs(int i) { return rows_[i][ncols_]; }
    int basis(int i) const { return basis_[i]; }
    void set_basis(int i, int j) { basis_[i] = j; }
    void forbid(int j) { allowed_[j] = false; }
    int row_count() const { return nrows_; }

    void pivot(int prow, int pcol) {
        auto& pr = rows_[prow];
        Rat pv = pr[pcol];
        assert(pv != 0);
        for (auto& x : pr) x /= pv;
        for (int i = 0; i < nrows_; ++i) {
            if (i == prow) continue;
            Rat f = rows_[i][pcol];
            if (f == 0) continue;
            auto& ri = rows_[i];
            for (int j = 0; j <= ncols_; ++j) {
                if (pr[j] != 0) ri[j] -= f * pr[j];
            }
        }
        Rat f = obj_[pcol];
        if (f != 0) {
            for (int j = 0; j <= ncols_; ++j) {
                if (pr[j] != 0) obj_[j] -= f * pr[j];
            }
        }
        basis_[prow] = pcol;
    }

    // Installs cost as the objective and prices out the current basis.
    void set_objective(const std::vector<Rat>& cost) {
        obj_.assign(ncols_ + 1, Rat(0));
        for (int j = 0; j < ncols_; ++j) obj_[j] = cost[j];
        for (int i = 0; i < nrows_; ++i) {
            Rat f = obj_[basis_[i]];
            if (f == 0) continue;
            const auto& ri = rows_[i];
            for (int j = 0; j <= ncols_; ++j) {
                if (ri[j] != 0) obj_[j] -= f * ri[j];
            }
        }
    }

    // Current objective value (obj row keeps -value in the rhs slot).
    Rat objective_value() const { return -obj_[ncols_]; }

    // Runs Bland minimization. Returns true at an optimum, false when
    // unbounded (entering column left in *unbounded_col).
    bool run(int* unbounded_col) {
        for (;;) {
            int enter = -1;
            for (int j = 0; j < ncols_; ++j) {
                if (allowed_[j] && obj_[j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return true;
            int leave = -1;
            Rat best;
            for (int i = 0; i < nrows_; ++i) {
                const Rat& piv = rows_[i][enter];
                if (piv > 0) {
                    Rat ratio = rows_[i][ncols_] / piv;
                    if (leave < 0 || ratio < best ||
                        (ratio == best && basis_[i] < basis_[leave])) {
                        leave = i;
                        best = ratio;
                    }
                }
            }
            if (leave < 0) {
                if (unbounded_col) *unbounded_col = enter;
                return false;
            }
            pivot(leave, enter);
        }
    }

    // Value of a column in the current basic solution.
    Rat value_of(int col) const {
        for (int i = 0; i < nrows_; ++i) {
            if (basis_[i] == col) return rows_[i][ncols_];
        }
        return Rat(0);
    }

    void drop_row(int i) {
        rows_.erase(rows_.begin() + i);
        basis_.erase(basis_.begin() + i);
        --nrows_;
    }

private:
    int nrows_;
    int ncols_;
    std::vector<std::vector<Rat>> rows_;
    std::vector<Rat> obj_;
    std::vector<int> basis_;
    std::vector<char> allowed_;
};

// Phase 1 over artificial columns [art_start, art_start + nart). Returns
// false when the system M z = q has no nonnegative solution. On success the
// artificials are driven out of the basis (redundant rows get dropped) and
// forbidden from re-entering.
bool phase_one(Tableau& t, int art_start, int nart) {
    if (nart == 0) return true;
    std::vector<Rat> cost(art_start + nart, Rat(0));
    for (int j = 0; j < nart; ++j) cost[art_start + j] = 1;
    t.set_objective(cost);
    t.run(nullptr);  // min of a sum of nonnegatives is never unbounded
    if (t.objective_value() != 0) return false;
    for (int i = 0; i < t.row_count();) {
        if (t.basis(i) < art_start) {
            ++i;
            continue;
        }
        int col = -1;
        for (int j = 0; j < art_start; ++j) {
            if (t.at(i, j) != 0) {
                col = j;
                break;
            }
        }
        if (col >= 0) {
            t.pivot(i, col);  // degenerate pivot, rhs of this row is zero
            ++i;
        } else {
            t.drop_row(i);  // original row was linearly dependent
        }
    }
    for (int j = 0; j < nart; ++j) t.forbid(art_start + j);
    return true;
}

}  // namespace

LpResult maximize(const InequalitySystem& sys, const std::vector<Rat>& objective) {
    if (objective.size() != sys.dimension()) {
        throw std::invalid_argument("objective arity does not match variable count");
    }
    const int n = static_cast<int>(sys.dimension());
    const int m = static_cast<int>(sys.size());

    // Columns: x = u - w with u, w >= 0, then one slack per row, then one
    // artificial per sign-flipped row.
    int nart = 0;
    for (const auto& row : sys.rows()) {
        if (row.rhs < 0) ++nart;
    }
    const int slack_start = 2 * n;
    const int art_start = slack_start + m;
    Tableau t(m, art_start + nart);

    int art = 0;
    for (int i = 0; i < m; ++i) {
        const auto& row = sys.row(i);
        bool flip = row.rhs < 0;
        for (int k = 0; k < n; ++k) {
            Rat c = flip ? Rat(-row.coeffs[k]) : row.coeffs[k];
            t.at(i, k) = c;
            t.at(i, n + k) = -c;
        }
        t.at(i, slack_start + i) = flip ? Rat(-1) : Rat(1);
        t.rhs(i) = flip ? Rat(-row.rhs) : row.rhs;
        if (flip) {
            t.at(i, art_start + art) = 1;
            t.set_basis(i, art_start + art);
            ++art;
        } else {
            t.set_basis(i, slack_start + i);
        }
    }

    LpResult res;
    if (!phase_one(t, art_start, nart)) {
        res.status = LpStatus::Infeasible;
        return res;
    }

    std::vector<Rat> cost(art_start + nart, Rat(0));
    for (int k = 0; k < n; ++k) {
        cost[k] = -objective[k];  // maximize c.x == minimize -c.x
        cost[n + k] = objective[k];
    }
    t.set_objective(cost);
    int unbounded_col = -1;
    if (!t.run(&unbounded_col)) {
        res.status = LpStatus::Unbounded;
        // Recession direction: push the entering column, basic columns move
        // by minus their tableau entries.
        std::vector<Rat> dz(art_start + nart, Rat(0));
        dz[unbounded_col] = 1;
        for (int i = 0; i < t.row_count(); ++i) {
            dz[t.basis(i)] = -t.at(i, unbounded_col);
        }
        res.ray.resize(n);
        for (int k = 0; k < n; ++k) res.ray[k] = dz[k] - dz[n + k];
        return res;
    }

    res.status = LpStatus::Optimal;
    res.point.resize(n);
    for (int k = 0; k < n; ++k) res.point[k] = t.value_of(k) - t.value_of(n + k);
    res.value = dot(objective, res.point);
    return res;
}

bool lp_feasible(const InequalitySystem& sys) {
    std::vector<Rat> zero(sys.dimension(), Rat(0));
    return maximize(sys, zero).status != LpStatus::Infeasible;
}

LpResult support_value(const InequalitySystem& sys, const std::vector<Rat>& objective) {
    if (objective.size() != sys.dimension()) {
        throw std::invalid_argument("objective arity does not match variable count");
    }
    const int n = static_cast<int>(sys.dimension());
    const int m = static_cast<int>(sys.size());

    // Multiplier form: min b.y with y >= 0 and A^T y = objective. One row
    // per primal variable, one column per primal row, artificial basis.
    Tableau t(n, m + n);
    for (int k = 0; k < n; ++k) {
        bool flip = objective[k] < 0;
        for (int i = 0; i < m; ++i) {
            const Rat& c = sys.row(i).coeffs[k];
            t.at(k, i) = flip ? Rat(-c) : c;
        }
        t.rhs(k) = flip ? Rat(-objective[k]) : objective[k];
        t.at(k, m + k) = 1;
        t.set_basis(k, m + k);
    }

    LpResult res;
    if (!phase_one(t, m, n)) {
        res.status = LpStatus::Infeasible;  // no multiplier certificate: sup is unbounded
        return res;
    }

    std::vector<Rat> cost(m + n, Rat(0));
    for (int i = 0; i < m; ++i) cost[i] = sys.row(i).rhs;
    t.set_objective(cost);
    int unbounded_col = -1;
    if (!t.run(&unbounded_col)) {
        // min b.y unbounded below certifies an empty primal; callers check
        // feasibility first, so surface it distinctly.
        res.status = LpStatus::Unbounded;
        return res;
    }
    res.status = LpStatus::Optimal;
    res.point.resize(m);
    for (int i = 0; i < m; ++i) res.point[i] = t.value_of(i);
    res.value = t.objective_value();
    return res;
}

}  // namespace cycap
