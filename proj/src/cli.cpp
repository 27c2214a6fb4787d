#include "cycap/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cycap/channel.hpp"
#include "cycap/errors.hpp"
#include "cycap/gap.hpp"
#include "cycap/hk.hpp"
#include "cycap/ineq.hpp"
#include "cycap/manifest.hpp"
#include "cycap/outer.hpp"
#include "cycap/polytope.hpp"
#include "cycap/simplex.hpp"

namespace fs = std::filesystem;

namespace cycap {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path.string());
    out << content;
}

struct SpecOptions {
    std::string spec;
    bool db = false;
    std::string out = ".";
};

void add_spec_options(CLI::App* cmd, SpecOptions& o) {
    cmd->add_option("--spec", o.spec, "channel spec file (JSON)")->required();
    cmd->add_flag("--db", o.db, "interpret spec values as dB");
    cmd->add_option("--out", o.out, "output directory");
}

struct LoadedSpec {
    ChannelRatios ratios;
    Regime regime = Regime::Weak;
    std::string digest;
};

LoadedSpec load_spec(const SpecOptions& o) {
    std::string bytes = read_file(o.spec);
    LoadedSpec s;
    s.ratios = parse_channel_spec(bytes, o.db);
    s.regime = classify_regime(s.ratios);
    s.digest = fnv1a64_hex(bytes);
    return s;
}

void emit_manifest(const SpecOptions& o, const LoadedSpec& s, const std::string& command,
                   std::vector<std::string> outputs, std::vector<std::string> notes = {},
                   std::uint64_t seed = 0) {
    RunManifest m;
    m.command = command;
    m.spec_path = o.spec;
    m.spec_digest = s.digest;
    m.seed = seed;
    m.regime = to_string(s.regime);
    outputs.push_back("manifest.json");
    m.outputs = std::move(outputs);
    m.notes = std::move(notes);
    write_file(fs::path(o.out) / "manifest.json", to_json(m));
}

std::string vertices_text(const InequalitySystem& sys, const VertexList& verts) {
    std::ostringstream out;
    out << "# cycap vertex list\n";
    if (!verts.feasible) out << "# infeasible system: no vertices\n";
    for (std::size_t i = 0; i < sys.variables().size(); ++i) {
        if (i) out << ' ';
        out << sys.variables()[i];
    }
    out << "\n";
    for (const auto& p : verts.points) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i) out << ' ';
            out << to_string(p[i]);
        }
        out << "\n";
    }
    return out.str();
}

int write_constraint_outputs(const SpecOptions& o, const LoadedSpec& s, const std::string& command,
                             const ConstraintSet& cs, bool with_vertices) {
    std::vector<std::string> outputs = {command + ".csv", command + ".txt"};
    write_file(fs::path(o.out) / (command + ".csv"), to_csv(cs));
    write_file(fs::path(o.out) / (command + ".txt"), to_text(cs));
    if (with_vertices && cs.users <= 3) {
        InequalitySystem sys = system_from_constraints(cs);
        VertexList verts = enumerate_vertices(sys, false);
        write_file(fs::path(o.out) / "vertices.txt", vertices_text(sys, verts));
        outputs.push_back("vertices.txt");
    }
    emit_manifest(o, s, command, std::move(outputs), cs.notes);
    return kExitOk;
}

PowerSplit split_by_name(const ChannelRatios& ratios, const std::string& name) {
    if (name == "etw") return etw_split(ratios);
    if (name == "none") return all_private_split(ratios);
    throw ValidationError("unknown split '" + name + "' (expected etw or none)");
}

int cmd_region(const SpecOptions& o, const std::string& split) {
    LoadedSpec s = load_spec(o);
    HkParams params = hk_parameters(s.ratios, split_by_name(s.ratios, split));
    ConstraintSet cs = achievable_constraints(params, s.regime);
    return write_constraint_outputs(o, s, "region", cs, true);
}

int cmd_outer(const SpecOptions& o) {
    LoadedSpec s = load_spec(o);
    ConstraintSet cs = outer_constraints(outer_parameters(s.ratios), s.regime);
    return write_constraint_outputs(o, s, "outer", cs, false);
}

int cmd_strong(const SpecOptions& o) {
    LoadedSpec s = load_spec(o);
    ConstraintSet cs = strong_capacity(s.ratios);  // throws RegimeError when not strong
    return write_constraint_outputs(o, s, "strong", cs, false);
}

int cmd_mac(const SpecOptions& o) {
    LoadedSpec s = load_spec(o);
    ConstraintSet cs = mac_intersection(s.ratios);
    return write_constraint_outputs(o, s, "mac", cs, false);
}

int cmd_gap(const SpecOptions& o, bool force) {
    LoadedSpec s = load_spec(o);
    if (s.regime != Regime::Weak && !force) {
        throw RegimeError(std::string("gap bounds are a theorem only in the weak regime; ") +
                              "this channel is " + to_string(s.regime) +
                              " (pass --force for a report-only run)",
                          first_weak_index(s.ratios));
    }
    HkParams params = hk_parameters(s.ratios, etw_split(s.ratios));
    ConstraintSet ach = achievable_constraints(params, s.regime);
    ConstraintSet out = outer_constraints(outer_parameters(s.ratios), s.regime);
    GapReport report = gap_report(ach, out);
    write_file(fs::path(o.out) / "gap.csv", to_csv(report));
    write_file(fs::path(o.out) / "gap_summary.txt", summary_text(report));
    std::vector<std::string> notes;
    if (!report.asserted) notes.push_back("regime not weak: bounds reported, not asserted");
    emit_manifest(o, s, "gap", {"gap.csv", "gap_summary.txt"}, notes);
    if (report.asserted && (!report.all_pass || !report.all_nonneg)) {
        std::cerr << "gap: weak-regime bound violated\n";
        return kExitTheorem;
    }
    return kExitOk;
}

int cmd_sweep(const SweepConfig& cfg, const std::string& out_dir) {
    SweepReport report = sweep(cfg);
    write_file(fs::path(out_dir) / "sweep.csv", to_csv(report));
    write_file(fs::path(out_dir) / "sweep_summary.txt", summary_text(report));
    std::vector<std::string> outputs = {"sweep.csv", "sweep_summary.txt", "manifest.json"};
    if (!report.clean()) {
        write_file(fs::path(out_dir) / "replay.jsonl", replay_json(report));
        outputs.insert(outputs.end() - 1, "replay.jsonl");
    }
    std::ostringstream cfg_line;
    cfg_line << "sweep k=" << cfg.k_min << ".." << cfg.k_max << " samples=" << cfg.samples
             << " seed=" << cfg.seed << " snr_db=[" << cfg.snr_db_min << "," << cfg.snr_db_max
             << "] target=" << to_string(cfg.target) << " containment=" << cfg.containment
             << " reduction=" << cfg.reduction_check;
    RunManifest m;
    m.command = "sweep";
    m.spec_path = "-";
    m.spec_digest = fnv1a64_hex(cfg_line.str());
    m.seed = cfg.seed;
    m.regime = to_string(cfg.target);
    m.outputs = std::move(outputs);
    if (!report.clean()) m.notes.push_back("violations recorded in replay.jsonl");
    write_file(fs::path(out_dir) / "manifest.json", to_json(m));
    if (!report.clean()) {
        std::cerr << "sweep: " << report.failures.size() << " violation(s); see replay.jsonl\n";
        return kExitTheorem;
    }
    return kExitOk;
}

std::string witness_text(const InequalitySystem& sys, const ContainsResult& c) {
    std::ostringstream out;
    if (c.status == ContainsResult::Status::NotContained && c.witness) {
        out << "witness point:";
        for (std::size_t i = 0; i < c.witness->point.size(); ++i) {
            out << ' ' << sys.variables()[i] << '=' << to_string(c.witness->point[i]);
        }
        out << "\nviolated row index: " << c.outer_row << "\n";
    } else if (c.status == ContainsResult::Status::InnerUnbounded) {
        out << "inner system unbounded along row " << c.outer_row << "\n";
    }
    return out.str();
}

int cmd_fm_check(const SpecOptions& o, const std::string& split, int max_k, bool force_k,
                 double budget_s, bool corrupt) {
    LoadedSpec s = load_spec(o);
    if (s.ratios.users > max_k && !force_k) {
        throw ValidationError("fm-check is guarded to K <= " + std::to_string(max_k) +
                              " (Fourier-Motzkin blow-up); pass --force-k to override");
    }
    if (s.ratios.users > max_k) {
        std::cerr << "fm-check: K=" << s.ratios.users
                  << " above the guard; this may take a very long time\n";
    }
    HkParams params = hk_parameters(s.ratios, split_by_name(s.ratios, split));
    HkParamsExact exact = to_exact(params);
    InequalitySystem pre = pre_elimination_system(exact);
    InequalitySystem closed = closed_form_system(exact);
    if (corrupt) {
        // Negative control: shift one closed-form rhs so set_equal must fail.
        InequalitySystem bad(closed.variables());
        bad.notes = closed.notes;
        for (std::size_t k = 0; k < closed.size(); ++k) {
            LinRow row = closed.row(k);
            if (k == 0) row.rhs -= 1;
            bad.add_row(std::move(row));
        }
        closed = std::move(bad);
    }
    std::vector<std::string> eliminate;
    for (int i = 0; i < s.ratios.users; ++i) {
        eliminate.push_back("S_" + std::to_string(i + 1));
        eliminate.push_back("T_" + std::to_string(i + 1));
    }

    std::ostringstream verdict;
    verdict << "# fm-check: projection of the rate-split system vs the closed form\n";
    verdict << "K " << s.ratios.users << "\n";
    verdict << "split " << split << "\n";
    int code = kExitOk;
    std::vector<std::string> outputs = {"fm_check.txt", "closed_form.txt"};
    write_file(fs::path(o.out) / "closed_form.txt", to_text(closed));
    try {
        FmOptions opts;
        opts.budget = std::chrono::milliseconds(static_cast<long>(budget_s * 1000.0));
        Reduction projected = fourier_motzkin_eliminate(pre, eliminate, opts);
        if (!projected.feasible()) {
            verdict << "verdict NOT-EQUAL\n";
            verdict << "projection infeasible: the rate-split system has no solution\n";
            code = kExitTheorem;
        } else {
            write_file(fs::path(o.out) / "projected.txt", to_text(projected.system));
            outputs.push_back("projected.txt");
            SetEqualResult eq = set_equal(projected.system, closed);
            if (eq.equal) {
                verdict << "verdict EQUAL\n";
                verdict << "projected rows " << projected.system.size() << "\n";
            } else {
                verdict << "verdict NOT-EQUAL\n";
                const ContainsResult& fail = eq.forward.ok() ? eq.backward : eq.forward;
                verdict << (eq.forward.ok() ? "closed form escapes projection\n"
                                            : "projection escapes closed form\n");
                verdict << witness_text(projected.system, fail);
                code = kExitTheorem;
            }
        }
    } catch (const TimeBudgetError& e) {
        verdict << "verdict PARTIAL\n";
        verdict << "time budget exceeded after eliminating " << e.eliminated().size()
                << " variable(s); " << e.rows_at_stop() << " rows at stop\n";
    }
    write_file(fs::path(o.out) / "fm_check.txt", verdict.str());
    emit_manifest(o, s, "fm-check", std::move(outputs));
    return code;
}

int cmd_vertices(const SpecOptions& o, const std::string& which, const std::string& split,
                 const std::vector<std::string>& fixes) {
    LoadedSpec s = load_spec(o);
    ConstraintSet cs;
    if (which == "achievable") {
        cs = achievable_constraints(hk_parameters(s.ratios, split_by_name(s.ratios, split)),
                                    s.regime);
    } else if (which == "outer") {
        cs = outer_constraints(outer_parameters(s.ratios), s.regime);
    } else if (which == "strong") {
        cs = strong_capacity(s.ratios);
    } else if (which == "mac") {
        cs = mac_intersection(s.ratios);
    } else {
        throw ValidationError("unknown region '" + which +
                              "' (expected achievable, outer, strong, or mac)");
    }
    InequalitySystem sys = system_from_constraints(cs);
    for (const auto& fix : fixes) {
        auto eq = fix.find('=');
        if (eq == std::string::npos) {
            throw ValidationError("--fix expects NAME=VALUE, got '" + fix + "'");
        }
        std::string name = fix.substr(0, eq);
        double value = 0;
        try {
            value = std::stod(fix.substr(eq + 1));
        } catch (const std::exception&) {
            throw ValidationError("--fix: bad value in '" + fix + "'");
        }
        auto idx = sys.variable_index(name);
        if (!idx) throw ValidationError("--fix: unknown rate '" + name + "'");
        auto cut = sys.substituted(*idx, dyadic(value));
        if (!cut) {
            write_file(fs::path(o.out) / "vertices.txt",
                       "# cycap vertex list\n# infeasible slice: no vertices\n");
            emit_manifest(o, s, "vertices", {"vertices.txt"}, {"slice is empty"});
            return kExitOk;
        }
        sys = *std::move(cut);
    }
    if (sys.dimension() > 3) {
        throw ValidationError("vertex enumeration needs dimension <= 3; fix " +
                              std::to_string(sys.dimension() - 2) +
                              " rates with --fix R_i=VALUE to slice");
    }
    VertexList verts = enumerate_vertices(sys, false);
    write_file(fs::path(o.out) / "vertices.txt", vertices_text(sys, verts));
    emit_manifest(o, s, "vertices", {"vertices.txt"});
    return kExitOk;
}

}  // namespace

int run_cli(std::vector<std::string> args) {
    CLI::App app{"capacity region toolkit for the K-user cyclic Gaussian interference channel"};
    app.require_subcommand(1);

    SpecOptions region_opt;
    std::string region_split = "etw";
    auto* region = app.add_subcommand("region", "emit the achievable rate region");
    add_spec_options(region, region_opt);
    region->add_option("--split", region_split, "power split: etw or none");

    SpecOptions outer_opt;
    auto* outer = app.add_subcommand("outer", "emit the capacity outer bound");
    add_spec_options(outer, outer_opt);

    SpecOptions strong_opt;
    auto* strong = app.add_subcommand("strong", "emit the strong-regime capacity region");
    add_spec_options(strong, strong_opt);

    SpecOptions mac_opt;
    auto* mac = app.add_subcommand("mac", "emit the multiple-access intersection region");
    add_spec_options(mac, mac_opt);

    SpecOptions gap_opt;
    bool gap_force = false;
    auto* gap = app.add_subcommand("gap", "per-constraint gaps between region and outer bound");
    add_spec_options(gap, gap_opt);
    gap->add_flag("--force", gap_force, "report even outside the weak regime");

    SweepConfig sweep_cfg;
    std::string sweep_regime = "weak";
    std::string sweep_out = ".";
    auto* sweep_cmd = app.add_subcommand("sweep", "seeded randomized verification sweep");
    sweep_cmd->add_option("--k-min", sweep_cfg.k_min, "smallest user count");
    sweep_cmd->add_option("--k-max", sweep_cfg.k_max, "largest user count");
    sweep_cmd->add_option("--samples", sweep_cfg.samples, "number of channels");
    sweep_cmd->add_option("--seed", sweep_cfg.seed, "RNG seed");
    sweep_cmd->add_option("--snr-db-min", sweep_cfg.snr_db_min, "SNR range low (dB)");
    sweep_cmd->add_option("--snr-db-max", sweep_cfg.snr_db_max, "SNR range high (dB)");
    sweep_cmd->add_option("--inr-db-min", sweep_cfg.inr_db_min, "INR range low (dB)");
    sweep_cmd->add_option("--inr-db-headroom", sweep_cfg.inr_db_headroom,
                          "INR headroom above SNR range (dB, strong sampling)");
    sweep_cmd->add_option("--regime", sweep_regime, "weak, strong, or any");
    sweep_cmd->add_flag("--containment", sweep_cfg.containment,
                        "also check exact polytope containment (weak)");
    sweep_cmd->add_option("--containment-max-k", sweep_cfg.containment_max_k,
                          "containment check cap on K");
    sweep_cmd->add_option("--out", sweep_out, "output directory");

    SpecOptions fm_opt;
    std::string fm_split = "etw";
    int fm_max_k = 4;
    bool fm_force_k = false;
    double fm_budget_s = 1800.0;
    bool fm_corrupt = false;
    auto* fm = app.add_subcommand("fm-check",
                                  "re-derive the region by Fourier-Motzkin projection and compare");
    add_spec_options(fm, fm_opt);
    fm->add_option("--split", fm_split, "power split: etw or none");
    fm->add_option("--max-k", fm_max_k, "guard on K before requiring --force-k");
    fm->add_flag("--force-k", fm_force_k, "run past the K guard");
    fm->add_option("--budget-s", fm_budget_s, "time budget in seconds");
    fm->add_flag("--corrupt", fm_corrupt)->group("");  // negative-control test hook

    SpecOptions vert_opt;
    std::string vert_which = "achievable";
    std::string vert_split = "etw";
    std::vector<std::string> vert_fixes;
    auto* vert = app.add_subcommand("vertices", "enumerate region vertices (dimension <= 3)");
    add_spec_options(vert, vert_opt);
    vert->add_option("--which", vert_which, "achievable, outer, strong, or mac");
    vert->add_option("--split", vert_split, "power split for the achievable region");
    vert->add_option("--fix", vert_fixes, "fix a rate, e.g. --fix R_3=1.5 (repeatable)");

    try {
        std::reverse(args.begin(), args.end());  // CLI11 parses reversed vectors
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (app.got_subcommand(region)) return cmd_region(region_opt, region_split);
        if (app.got_subcommand(outer)) return cmd_outer(outer_opt);
        if (app.got_subcommand(strong)) return cmd_strong(strong_opt);
        if (app.got_subcommand(mac)) return cmd_mac(mac_opt);
        if (app.got_subcommand(gap)) return cmd_gap(gap_opt, gap_force);
        if (app.got_subcommand(sweep_cmd)) {
            sweep_cfg.target = sweep_regime == "any" ? Regime::Mixed
                                                     : regime_from_string(sweep_regime);
            sweep_cfg.reduction_check = sweep_cfg.target == Regime::Strong ||
                                        sweep_cfg.target == Regime::VeryStrong;
            return cmd_sweep(sweep_cfg, sweep_out);
        }
        if (app.got_subcommand(fm)) {
            return cmd_fm_check(fm_opt, fm_split, fm_max_k, fm_force_k, fm_budget_s, fm_corrupt);
        }
        if (app.got_subcommand(vert)) {
            return cmd_vertices(vert_opt, vert_which, vert_split, vert_fixes);
        }
    } catch (const RegimeError& e) {
        std::cerr << "regime error: " << e.what() << "\n";
        return kExitRegime;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const UnboundedPolytopeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return kExitValidation;
}

int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(std::move(args));
}

}  // namespace cycap
