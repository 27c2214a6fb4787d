#include "cycap/ineq.hpp"

#include <algorithm>
#include <sstream>

#include "cycap/errors.hpp"

namespace cycap {

void normalize_row(LinRow& row) {
    mpz_class den_lcm = 1;
    for (const auto& c : row.coeffs) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    mpz_class num_gcd = 0;
    for (const auto& c : row.coeffs) {
        mpz_class scaled = c.get_num() * (den_lcm / c.get_den());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
    }
    if (num_gcd == 0) return;  // zero row
    Rat scale(den_lcm, num_gcd);
    scale.canonicalize();
    for (auto& c : row.coeffs) c *= scale;
    row.rhs *= scale;
}

InequalitySystem::InequalitySystem(std::vector<std::string> variables)
    : variables_(std::move(variables)) {}

void InequalitySystem::add_row(LinRow row) {
    if (row.coeffs.size() != variables_.size()) {
        throw std::invalid_argument("row arity does not match variable count");
    }
    bool all_zero = std::all_of(row.coeffs.begin(), row.coeffs.end(),
                                [](const Rat& c) { return c == 0; });
    if (all_zero && row.rhs < 0) {
        throw std::invalid_argument("row reads 0 <= negative; infeasibility must be surfaced, not stored");
    }
    rows_.push_back(std::move(row));
}

void InequalitySystem::add_row(std::vector<Rat> coeffs, Rat rhs) {
    add_row(LinRow{std::move(coeffs), std::move(rhs)});
}

std::optional<std::size_t> InequalitySystem::variable_index(std::string_view name) const {
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        if (variables_[i] == name) return i;
    }
    return std::nullopt;
}

InequalitySystem InequalitySystem::without_row(std::size_t i) const {
    InequalitySystem out(variables_);
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        if (k != i) out.rows_.push_back(rows_[k]);
    }
    return out;
}

std::optional<InequalitySystem> InequalitySystem::substituted(std::size_t var,
                                                              const Rat& value) const {
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        if (i != var) vars.push_back(variables_[i]);
    }
    InequalitySystem out(std::move(vars));
    for (const auto& row : rows_) {
        LinRow r;
        r.rhs = row.rhs - row.coeffs[var] * value;
        for (std::size_t i = 0; i < row.coeffs.size(); ++i) {
            if (i != var) r.coeffs.push_back(row.coeffs[i]);
        }
        bool all_zero = std::all_of(r.coeffs.begin(), r.coeffs.end(),
                                    [](const Rat& c) { return c == 0; });
        if (all_zero) {
            if (r.rhs < 0) return std::nullopt;  // provably infeasible
            continue;
        }
        out.rows_.push_back(std::move(r));
    }
    return out;
}

bool InequalitySystem::satisfies(const std::vector<Rat>& point, std::size_t* violated) const {
    if (point.size() != variables_.size()) {
        throw std::invalid_argument("point arity does not match variable count");
    }
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        if (dot(rows_[k].coeffs, point) > rows_[k].rhs) {
            if (violated) *violated = k;
            return false;
        }
    }
    return true;
}

InequalitySystem system_from_constraints(const ConstraintSet& cs, bool add_nonneg) {
    std::vector<std::string> vars;
    for (int i = 0; i < cs.users; ++i) vars.push_back("R_" + std::to_string(i + 1));
    InequalitySystem sys(std::move(vars));
    for (const auto& row : cs.rows) {
        std::vector<Rat> coeffs(row.coeffs.begin(), row.coeffs.end());
        sys.add_row(std::move(coeffs), dyadic(row.rhs));
    }
    if (add_nonneg) {
        for (int i = 0; i < cs.users; ++i) {
            std::vector<Rat> coeffs(cs.users, Rat(0));
            coeffs[i] = -1;
            sys.add_row(std::move(coeffs), Rat(0));
        }
    }
    sys.notes.push_back("dyadic_resolution 2^-" + std::to_string(kDyadicBits));
    return sys;
}

std::string to_text(const InequalitySystem& sys) {
    std::ostringstream out;
    for (const auto& n : sys.notes) out << "# " << n << "\n";
    for (std::size_t i = 0; i < sys.variables().size(); ++i) {
        if (i) out << ' ';
        out << sys.variables()[i];
    }
    out << "\n";
    for (const auto& row : sys.rows()) {
        for (const auto& c : row.coeffs) out << to_string(c) << ' ';
        out << "<= " << to_string(row.rhs) << "\n";
    }
    return out.str();
}

InequalitySystem system_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> notes;
    std::optional<InequalitySystem> sys;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line.starts_with("#")) {
            std::string note = line.substr(1);
            if (!note.empty() && note.front() == ' ') note.erase(note.begin());
            notes.push_back(note);
            continue;
        }
        std::istringstream ls(line);
        if (!sys) {
            std::vector<std::string> vars;
            std::string v;
            while (ls >> v) vars.push_back(v);
            if (vars.empty()) throw ValidationError("system text: empty variable header");
            sys.emplace(std::move(vars));
            sys->notes = notes;
            continue;
        }
        std::vector<Rat> coeffs;
        Rat rhs;
        std::string tok;
        bool relation_seen = false;
        while (ls >> tok) {
            if (tok == "<=") {
                if (!(ls >> tok)) {
                    throw ValidationError("system text: missing rhs on line " + std::to_string(line_no));
                }
                rhs = rat_from_string(tok);
                relation_seen = true;
                break;
            }
            coeffs.push_back(rat_from_string(tok));
        }
        std::string trailing;
        if (!relation_seen || coeffs.size() != sys->dimension() || (ls >> trailing)) {
            throw ValidationError("system text: malformed row on line " + std::to_string(line_no));
        }
        try {
            sys->add_row(std::move(coeffs), std::move(rhs));
        } catch (const std::invalid_argument& e) {
            throw ValidationError("system text: line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!sys) throw ValidationError("system text: no variable header");
    return *std::move(sys);
}

}  // namespace cycap
