#include "cycap/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cycap/errors.hpp"
#include "cycap/simplex.hpp"

namespace cycap {

namespace {

bool zero_coeffs(const LinRow& row) {
    return std::all_of(row.coeffs.begin(), row.coeffs.end(), [](const Rat& c) { return c == 0; });
}

// Normalizes, drops trivially-true zero rows, collapses scaled duplicates to
// the tightest rhs, preserving first-seen order.
InequalitySystem canonicalize(const InequalitySystem& sys) {
    std::vector<LinRow> rows;
    std::map<std::vector<Rat>, std::size_t> seen;  // canonical coeffs -> index into rows
    for (const auto& original : sys.rows()) {
        LinRow row = original;
        normalize_row(row);
        if (zero_coeffs(row)) continue;  // rhs >= 0 by the construction invariant
        auto it = seen.find(row.coeffs);
        if (it == seen.end()) {
            seen.emplace(row.coeffs, rows.size());
            rows.push_back(std::move(row));
        } else if (row.rhs < rows[it->second].rhs) {
            rows[it->second].rhs = std::move(row.rhs);
        }
    }
    InequalitySystem out(sys.variables());
    out.notes = sys.notes;
    for (auto& r : rows) out.add_row(std::move(r));
    return out;
}

// Inclusion-minimal infeasible subsystem by greedy row removal.
InequalitySystem minimal_infeasible_core(InequalitySystem sys) {
    for (std::size_t k = 0; k < sys.size();) {
        InequalitySystem candidate = sys.without_row(k);
        if (!lp_feasible(candidate)) {
            sys = std::move(candidate);
        } else {
            ++k;
        }
    }
    return sys;
}

}  // namespace

Reduction remove_redundant(const InequalitySystem& sys) {
    InequalitySystem base = canonicalize(sys);
    if (!lp_feasible(base)) {
        InequalitySystem core = minimal_infeasible_core(base);
        return Reduction{core, core};
    }

    std::vector<char> alive(base.size(), 1);
    auto build_others = [&](std::size_t skip) {
        InequalitySystem others(base.variables());
        for (std::size_t k = 0; k < base.size(); ++k) {
            if (alive[k] && k != skip) others.add_row(base.row(k));
        }
        return others;
    };

    for (std::size_t k = 0; k < base.size(); ++k) {
        InequalitySystem others = build_others(k);
        LpResult r = support_value(others, base.row(k).coeffs);
        if (r.status == LpStatus::Optimal && r.value <= base.row(k).rhs) {
            alive[k] = 0;
        }
        // Infeasible (no multiplier certificate): the maximum over the other
        // rows is unbounded, so the row genuinely cuts — keep it.
    }

    InequalitySystem reduced(base.variables());
    reduced.notes = base.notes;
    for (std::size_t k = 0; k < base.size(); ++k) {
        if (alive[k]) reduced.add_row(base.row(k));
    }
    return Reduction{std::move(reduced), std::nullopt};
}

Reduction fourier_motzkin_eliminate(const InequalitySystem& sys,
                                    const std::vector<std::string>& eliminate,
                                    const FmOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::string> pending;
    for (const auto& name : eliminate) {
        if (!sys.variable_index(name).has_value()) {
            throw std::invalid_argument("cannot eliminate unknown variable '" + name + "'");
        }
        if (std::find(pending.begin(), pending.end(), name) == pending.end()) {
            pending.push_back(name);
        }
    }

    Reduction cur = remove_redundant(sys);
    if (!cur.feasible()) return cur;

    std::vector<std::string> done;
    while (!pending.empty()) {
        if (options.budget.has_value() &&
            std::chrono::steady_clock::now() - start > *options.budget) {
            throw TimeBudgetError("Fourier-Motzkin time budget exceeded", done,
                                  cur.system.size());
        }

        // Cheapest variable first: fewest lower*upper pairings.
        const InequalitySystem& s = cur.system;
        std::size_t best_var = 0;
        std::size_t best_pos = 0;
        long best_score = -1;
        for (std::size_t p = 0; p < pending.size(); ++p) {
            std::size_t v = *s.variable_index(pending[p]);
            long lowers = 0;
            long uppers = 0;
            for (const auto& row : s.rows()) {
                if (row.coeffs[v] < 0) ++lowers;
                if (row.coeffs[v] > 0) ++uppers;
            }
            long score = lowers * uppers;
            if (best_score < 0 || score < best_score) {
                best_score = score;
                best_var = v;
                best_pos = p;
            }
        }

        std::vector<std::string> vars;
        for (std::size_t i = 0; i < s.dimension(); ++i) {
            if (i != best_var) vars.push_back(s.variables()[i]);
        }
        InequalitySystem next(std::move(vars));
        next.notes = s.notes;

        auto drop_var = [&](const LinRow& row) {
            LinRow r;
            r.rhs = row.rhs;
            for (std::size_t i = 0; i < row.coeffs.size(); ++i) {
                if (i != best_var) r.coeffs.push_back(row.coeffs[i]);
            }
            return r;
        };

        std::vector<std::size_t> lowers, uppers;
        std::map<std::vector<Rat>, Rat> dedupe;
        std::vector<std::vector<Rat>> order;
        auto insert = [&](LinRow row) {
            normalize_row(row);
            auto it = dedupe.find(row.coeffs);
            if (it == dedupe.end()) {
                order.push_back(row.coeffs);
                dedupe.emplace(std::move(row.coeffs), std::move(row.rhs));
            } else if (row.rhs < it->second) {
                it->second = std::move(row.rhs);
            }
        };

        for (std::size_t k = 0; k < s.size(); ++k) {
            const Rat& c = s.row(k).coeffs[best_var];
            if (c < 0) {
                lowers.push_back(k);
            } else if (c > 0) {
                uppers.push_back(k);
            } else {
                insert(drop_var(s.row(k)));
            }
        }
        for (std::size_t lo : lowers) {
            for (std::size_t up : uppers) {
                const LinRow& l = s.row(lo);
                const LinRow& u = s.row(up);
                Rat mu = -l.coeffs[best_var];  // > 0, scales the upper row
                Rat ml = u.coeffs[best_var];   // > 0, scales the lower row
                LinRow combined;
                combined.coeffs.reserve(s.dimension() - 1);
                for (std::size_t i = 0; i < s.dimension(); ++i) {
                    if (i == best_var) continue;
                    combined.coeffs.push_back(mu * u.coeffs[i] + ml * l.coeffs[i]);
                }
                combined.rhs = mu * u.rhs + ml * l.rhs;
                normalize_row(combined);
                if (zero_coeffs(combined)) {
                    if (combined.rhs < 0) {
                        // The lower bound exceeds the upper bound everywhere:
                        // this pair certifies infeasibility.
                        InequalitySystem core(s.variables());
                        core.add_row(l);
                        core.add_row(u);
                        return Reduction{core, core};
                    }
                    continue;
                }
                insert(std::move(combined));
            }
        }

        for (const auto& coeffs : order) {
            next.add_row(coeffs, dedupe.at(coeffs));
        }

        cur = remove_redundant(next);
        if (!cur.feasible()) return cur;
        done.push_back(pending[best_pos]);
        pending.erase(pending.begin() + best_pos);
    }
    return cur;
}

ContainsResult contains(const InequalitySystem& outer, const InequalitySystem& inner) {
    if (outer.variables() != inner.variables()) {
        throw std::invalid_argument("contains: variable lists differ");
    }
    ContainsResult res;
    if (!lp_feasible(inner)) {
        res.status = ContainsResult::Status::Contained;  // empty set
        return res;
    }
    for (std::size_t k = 0; k < outer.size(); ++k) {
        const LinRow& row = outer.row(k);
        LpResult sup = support_value(inner, row.coeffs);
        if (sup.status == LpStatus::Infeasible) {
            LpResult primal = maximize(inner, row.coeffs);
            res.status = ContainsResult::Status::InnerUnbounded;
            res.outer_row = k;
            res.ray = primal.ray;
            return res;
        }
        if (sup.status == LpStatus::Optimal && sup.value > row.rhs) {
            LpResult primal = maximize(inner, row.coeffs);
            res.status = ContainsResult::Status::NotContained;
            res.outer_row = k;
            res.witness = Witness{primal.point, k};
            return res;
        }
    }
    res.status = ContainsResult::Status::Contained;
    return res;
}

SetEqualResult set_equal(const InequalitySystem& a, const InequalitySystem& b) {
    SetEqualResult res;
    res.forward = contains(a, b);
    if (!res.forward.ok()) {
        res.equal = false;
        return res;
    }
    res.backward = contains(b, a);
    res.equal = res.backward.ok();
    return res;
}

namespace {

std::optional<std::vector<Rat>> solve_square(std::vector<std::vector<Rat>> a, std::vector<Rat> b) {
    const int n = static_cast<int>(a.size());
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r) {
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        }
        if (piv < 0) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rat f = a[r][col] / a[col][col];
            for (int c2 = col; c2 < n; ++c2) a[r][c2] -= f * a[col][c2];
            b[r] -= f * b[col];
        }
    }
    std::vector<Rat> x(n);
    for (int i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

std::string describe_ray(const InequalitySystem& sys, const std::vector<Rat>& ray) {
    std::string out;
    for (std::size_t i = 0; i < ray.size(); ++i) {
        if (i) out += ", ";
        out += sys.variables()[i] + "=" + to_string(ray[i]);
    }
    return out;
}

}  // namespace

VertexList enumerate_vertices(const InequalitySystem& sys, bool add_nonneg) {
    const int n = static_cast<int>(sys.dimension());
    if (n < 1 || n > 3) {
        throw ValidationError("vertex enumeration supports 1 to 3 dimensions, got " +
                              std::to_string(n));
    }
    InequalitySystem s(sys.variables());
    s.notes = sys.notes;
    for (const auto& row : sys.rows()) s.add_row(row);
    if (add_nonneg) {
        for (int i = 0; i < n; ++i) {
            std::vector<Rat> coeffs(n, Rat(0));
            coeffs[i] = -1;
            s.add_row(std::move(coeffs), Rat(0));
        }
    }

    VertexList out;
    if (!lp_feasible(s)) {
        out.feasible = false;
        return out;
    }
    for (int j = 0; j < n; ++j) {
        for (int sign : {1, -1}) {
            std::vector<Rat> objective(n, Rat(0));
            objective[j] = sign;
            LpResult r = maximize(s, objective);
            if (r.status == LpStatus::Unbounded) {
                throw UnboundedPolytopeError(
                    "polytope is unbounded along " + describe_ray(s, r.ray), describe_ray(s, r.ray));
            }
        }
    }

    const int m = static_cast<int>(s.size());
    std::set<std::vector<Rat>> found;
    auto try_subset = [&](const std::vector<int>& rows) {
        std::vector<std::vector<Rat>> a;
        std::vector<Rat> b;
        for (int r : rows) {
            a.push_back(s.row(r).coeffs);
            b.push_back(s.row(r).rhs);
        }
        auto x = solve_square(std::move(a), std::move(b));
        if (x && s.satisfies(*x)) found.insert(*x);
    };
    // all n-subsets of rows
    std::vector<int> idx(n);
    auto recurse = [&](auto&& self, int depth, int from) -> void {
        if (depth == n) {
            try_subset(idx);
            return;
        }
        for (int r = from; r < m; ++r) {
            idx[depth] = r;
            self(self, depth + 1, r + 1);
        }
    };
    recurse(recurse, 0, 0);

    out.points.assign(found.begin(), found.end());

    if (n == 2 && out.points.size() > 2) {
        Rat cx = 0, cy = 0;
        for (const auto& p : out.points) {
            cx += p[0];
            cy += p[1];
        }
        cx /= static_cast<int>(out.points.size());
        cy /= static_cast<int>(out.points.size());
        auto half = [&](const std::vector<Rat>& p) {
            Rat dx = p[0] - cx;
            Rat dy = p[1] - cy;
            return (dy > 0 || (dy == 0 && dx > 0)) ? 0 : 1;
        };
        std::sort(out.points.begin(), out.points.end(),
                  [&](const std::vector<Rat>& u, const std::vector<Rat>& v) {
                      int hu = half(u);
                      int hv = half(v);
                      if (hu != hv) return hu < hv;
                      Rat cross = (u[0] - cx) * (v[1] - cy) - (u[1] - cy) * (v[0] - cx);
                      if (cross != 0) return cross > 0;
                      return u < v;
                  });
    }
    return out;
}

}  // namespace cycap
