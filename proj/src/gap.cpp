#include "cycap/gap.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "cycap/errors.hpp"
#include "cycap/hk.hpp"
#include "cycap/ineq.hpp"
#include "cycap/outer.hpp"
#include "cycap/polytope.hpp"
#include "cycap/rational.hpp"

namespace cycap {

namespace {

double kind_bound(const ConstraintKind& k, int users) {
    switch (k.family) {
        case ConstraintFamily::Individual: return 2.0;
        case ConstraintFamily::AdjacentSum: return 2.0 * k.length;
        case ConstraintFamily::TotalSum: return 2.0 * users;
        case ConstraintFamily::TotalSumPlus: return 2.0 * (users + 1);
    }
    return 0.0;
}

const char* family_label(ConstraintFamily f) {
    switch (f) {
        case ConstraintFamily::Individual: return "individual";
        case ConstraintFamily::AdjacentSum: return "adjacent_sum";
        case ConstraintFamily::TotalSum: return "total_sum";
        case ConstraintFamily::TotalSumPlus: return "total_sum_plus";
    }
    return "?";
}

}  // namespace

GapReport gap_report(const ConstraintSet& achievable, const ConstraintSet& outer) {
    if (achievable.users != outer.users) {
        throw ValidationError("gap: constraint sets describe different user counts");
    }
    if (achievable.rows.size() != outer.rows.size()) {
        throw ValidationError("gap: constraint sets have different cardinality");
    }
    std::map<ConstraintKind, const LinearConstraint*> outer_by_kind;
    for (const auto& row : outer.rows) {
        if (!outer_by_kind.emplace(row.kind, &row).second) {
            throw ValidationError("gap: duplicate kind " + to_string(row.kind) + " in outer set");
        }
    }

    GapReport report;
    report.users = achievable.users;
    report.regime = achievable.regime;
    report.asserted = achievable.regime == Regime::Weak;
    report.all_pass = true;
    report.all_nonneg = true;
    bool first = true;
    for (const auto& ach : achievable.rows) {
        auto it = outer_by_kind.find(ach.kind);
        if (it == outer_by_kind.end()) {
            throw ValidationError("gap: no outer constraint of kind " + to_string(ach.kind));
        }
        const LinearConstraint& out = *it->second;
        GapPair pair;
        pair.kind = ach.kind;
        pair.achievable_rhs = ach.rhs;
        pair.outer_rhs = out.rhs;
        pair.delta = out.rhs - ach.rhs;
        pair.bound = kind_bound(ach.kind, achievable.users);
        pair.normalized = pair.delta / rate_terms(ach.kind, achievable.users);

        if (pair.delta <= pair.bound - kGapTolerance) {
            pair.pass = true;
        } else if (pair.delta >= pair.bound + kGapTolerance) {
            pair.pass = false;
        } else {
            // Too close to the strict bound for floating arithmetic: decide
            // on the dyadic rationals the polytopes use.
            pair.flagged = true;
            Rat exact_delta = dyadic(out.rhs) - dyadic(ach.rhs);
            pair.pass = exact_delta < Rat(static_cast<long>(pair.bound));
        }
        if (pair.delta >= kGapTolerance) {
            pair.nonneg = true;
        } else if (pair.delta <= -kGapTolerance) {
            pair.nonneg = false;
        } else {
            pair.flagged = true;
            Rat exact_delta = dyadic(out.rhs) - dyadic(ach.rhs);
            pair.nonneg = exact_delta >= 0;
        }

        report.all_pass = report.all_pass && pair.pass;
        report.all_nonneg = report.all_nonneg && pair.nonneg;
        report.max_normalized = first ? pair.normalized : std::max(report.max_normalized, pair.normalized);
        report.min_delta = first ? pair.delta : std::min(report.min_delta, pair.delta);
        first = false;
        report.pairs.push_back(std::move(pair));
    }
    return report;
}

std::string to_csv(const GapReport& report) {
    std::ostringstream out;
    out << "# K " << report.users << "\n";
    out << "# regime " << to_string(report.regime) << "\n";
    out << "# asserted " << (report.asserted ? 1 : 0) << "\n";
    out << "kind,index,length,achievable_rhs,outer_rhs,delta,bound,normalized,pass,nonneg,flagged\n";
    for (const auto& p : report.pairs) {
        out << family_label(p.kind.family) << ',' << p.kind.index << ',' << p.kind.length << ','
            << format_double(p.achievable_rhs) << ',' << format_double(p.outer_rhs) << ','
            << format_double(p.delta) << ',' << format_double(p.bound) << ','
            << format_double(p.normalized) << ',' << (p.pass ? 1 : 0) << ',' << (p.nonneg ? 1 : 0)
            << ',' << (p.flagged ? 1 : 0) << "\n";
    }
    return out.str();
}

std::string summary_text(const GapReport& report) {
    std::ostringstream out;
    out << "gap report: K=" << report.users << " regime=" << to_string(report.regime) << "\n";
    out << "pairs " << report.pairs.size() << ", max normalized gap "
        << format_double(report.max_normalized) << " bits/term, min delta "
        << format_double(report.min_delta) << " bits\n";
    if (report.asserted) {
        out << "two-bit family bounds: " << (report.all_pass ? "all pass" : "VIOLATED") << "\n";
        out << "outer >= achievable per row: " << (report.all_nonneg ? "holds" : "VIOLATED") << "\n";
    } else {
        out << "bounds not asserted outside the weak regime (report only)\n";
    }
    return out.str();
}

std::uint64_t Rng::next() {
    // splitmix64
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
    double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

int Rng::uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
}

ChannelRatios sample_channel(Rng& rng, int users, const SweepConfig& cfg) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        ChannelRatios r;
        r.users = users;
        r.snr.resize(users);
        r.inr.resize(users);
        for (int i = 0; i < users; ++i) {
            double snr_db = rng.uniform(cfg.snr_db_min, cfg.snr_db_max);
            double inr_db = 0.0;
            switch (cfg.target) {
                case Regime::Weak:
                    inr_db = rng.uniform(std::min(cfg.inr_db_min, snr_db), snr_db);
                    break;
                case Regime::Strong:
                case Regime::VeryStrong:
                    inr_db = rng.uniform(snr_db, cfg.snr_db_max + cfg.inr_db_headroom);
                    break;
                case Regime::Mixed:
                    inr_db = rng.uniform(cfg.inr_db_min, cfg.snr_db_max + cfg.inr_db_headroom);
                    break;
            }
            r.snr[i] = db_to_linear(snr_db);
            r.inr[i] = db_to_linear(inr_db);
        }
        Regime got = classify_regime(r);
        if (cfg.target == Regime::Mixed) return r;
        if (cfg.target == Regime::Weak && got == Regime::Weak) return r;
        if (cfg.target == Regime::Strong &&
            (got == Regime::Strong || got == Regime::VeryStrong)) {
            return r;
        }
        if (cfg.target == Regime::VeryStrong && got == Regime::VeryStrong) return r;
    }
    throw ValidationError("sampler failed to hit the requested regime");
}

SweepReport sweep(const SweepConfig& cfg) {
    if (cfg.samples <= 0 || cfg.k_min < 2 || cfg.k_max < cfg.k_min) {
        throw ValidationError("sweep: bad configuration");
    }
    Rng rng(cfg.seed);
    SweepReport report;
    report.config = cfg;
    report.min_delta = 0.0;
    bool any_pair = false;

    for (int s = 0; s < cfg.samples; ++s) {
        int users = cfg.k_min + (s % (cfg.k_max - cfg.k_min + 1));
        ChannelRatios ratios = sample_channel(rng, users, cfg);
        Regime regime = classify_regime(ratios);
        ++report.evaluated;

        if (cfg.target == Regime::Strong || cfg.target == Regime::VeryStrong) {
            if (cfg.reduction_check) {
                auto mac = system_from_constraints(mac_intersection(ratios));
                auto cap = system_from_constraints(strong_capacity(ratios));
                Reduction reduced = remove_redundant(mac);
                if (!reduced.feasible() || !set_equal(reduced.system, cap).equal) {
                    report.failures.push_back(
                        {s, "MAC intersection does not reduce to the strong-regime capacity", ratios});
                }
            }
            continue;
        }

        HkParams params = hk_parameters(ratios, etw_split(ratios));
        ConstraintSet ach = achievable_constraints(params, regime);
        ConstraintSet out = outer_constraints(outer_parameters(ratios), regime);
        GapReport gaps = gap_report(ach, out);

        std::map<ConstraintFamily, SweepRow> by_family;
        for (const auto& p : gaps.pairs) {
            auto [it, fresh] = by_family.try_emplace(p.kind.family);
            SweepRow& row = it->second;
            if (fresh) {
                row.sample = s;
                row.users = users;
                row.regime = regime;
                row.family = p.kind.family;
                row.max_delta = p.delta;
                row.max_normalized = p.normalized;
                row.min_margin = p.bound - p.delta;
                row.pass = true;
            } else {
                row.max_delta = std::max(row.max_delta, p.delta);
                row.max_normalized = std::max(row.max_normalized, p.normalized);
                row.min_margin = std::min(row.min_margin, p.bound - p.delta);
            }
            row.pairs += 1;
            row.pass = row.pass && p.pass;
            if (!any_pair) {
                report.max_normalized = p.normalized;
                report.min_delta = p.delta;
                any_pair = true;
            } else {
                report.max_normalized = std::max(report.max_normalized, p.normalized);
                report.min_delta = std::min(report.min_delta, p.delta);
            }
        }
        for (auto& [family, row] : by_family) report.rows.push_back(row);

        if (regime == Regime::Weak) {
            if (!gaps.all_pass) {
                report.failures.push_back({s, "two-bit family bound violated", ratios});
            }
            if (!gaps.all_nonneg) {
                report.failures.push_back({s, "outer rhs fell below achievable rhs", ratios});
            }
            if (cfg.containment && users <= cfg.containment_max_k) {
                auto inner = system_from_constraints(ach);
                auto outer_sys = system_from_constraints(out);
                if (!contains(outer_sys, inner).ok()) {
                    report.failures.push_back({s, "achievable region escapes the outer bound", ratios});
                }
            }
        }
    }
    return report;
}

std::string to_csv(const SweepReport& report) {
    std::ostringstream out;
    out << "# seed " << report.config.seed << "\n";
    out << "# samples " << report.config.samples << "\n";
    out << "# k_range " << report.config.k_min << ".." << report.config.k_max << "\n";
    out << "# target " << to_string(report.config.target) << "\n";
    out << "sample,K,regime,family,pairs,max_delta,max_normalized,min_margin,pass\n";
    for (const auto& r : report.rows) {
        out << r.sample << ',' << r.users << ',' << to_string(r.regime) << ','
            << family_label(r.family) << ',' << r.pairs << ',' << format_double(r.max_delta)
            << ',' << format_double(r.max_normalized) << ',' << format_double(r.min_margin) << ','
            << (r.pass ? 1 : 0) << "\n";
    }
    return out.str();
}

std::string summary_text(const SweepReport& report) {
    std::ostringstream out;
    out << "sweep: " << report.evaluated << " channels, K " << report.config.k_min << ".."
        << report.config.k_max << ", seed " << report.config.seed << ", target "
        << to_string(report.config.target) << "\n";
    out << "max normalized gap " << format_double(report.max_normalized) << " bits/term\n";
    out << "min delta " << format_double(report.min_delta) << " bits\n";
    out << "violations " << report.failures.size() << "\n";
    for (const auto& f : report.failures) {
        out << "  sample " << f.sample << ": " << f.reason << "\n";
    }
    return out.str();
}

std::string replay_json(const SweepReport& report) {
    std::ostringstream out;
    for (const auto& f : report.failures) {
        out << "{\"sample\":" << f.sample << ",\"reason\":\"" << f.reason << "\",\"K\":"
            << f.ratios.users << ",\"snr\":[";
        for (int i = 0; i < f.ratios.users; ++i) {
            if (i) out << ',';
            out << format_double(f.ratios.snr[i]);
        }
        out << "],\"inr\":[";
        for (int i = 0; i < f.ratios.users; ++i) {
            if (i) out << ',';
            out << format_double(f.ratios.inr[i]);
        }
        out << "]}\n";
    }
    return out.str();
}

}  // namespace cycap
