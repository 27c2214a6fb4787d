#include "cycap/constraint.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "cycap/errors.hpp"

namespace cycap {

namespace {

const char* family_name(ConstraintFamily f) {
    switch (f) {
        case ConstraintFamily::Individual: return "individual";
        case ConstraintFamily::AdjacentSum: return "adjacent_sum";
        case ConstraintFamily::TotalSum: return "total_sum";
        case ConstraintFamily::TotalSumPlus: return "total_sum_plus";
    }
    return "?";
}

ConstraintFamily family_from_name(const std::string& s) {
    if (s == "individual") return ConstraintFamily::Individual;
    if (s == "adjacent_sum") return ConstraintFamily::AdjacentSum;
    if (s == "total_sum") return ConstraintFamily::TotalSum;
    if (s == "total_sum_plus") return ConstraintFamily::TotalSumPlus;
    throw ValidationError("unknown constraint family: '" + s + "'");
}

}  // namespace

std::string to_string(const ConstraintKind& k) {
    std::ostringstream out;
    out << family_name(k.family);
    switch (k.family) {
        case ConstraintFamily::Individual:
        case ConstraintFamily::TotalSumPlus:
            out << "(" << k.index << ")";
            break;
        case ConstraintFamily::AdjacentSum:
            out << "(" << k.index << "," << k.length << ")";
            break;
        case ConstraintFamily::TotalSum:
            break;
    }
    return out.str();
}

std::vector<int> kind_coeffs(const ConstraintKind& k, int users) {
    std::vector<int> c(users, 0);
    switch (k.family) {
        case ConstraintFamily::Individual:
            c[k.index - 1] = 1;
            break;
        case ConstraintFamily::AdjacentSum:
            for (int off = 0; off < k.length; ++off) {
                c[(k.index - 1 + off) % users] = 1;
            }
            break;
        case ConstraintFamily::TotalSum:
            std::fill(c.begin(), c.end(), 1);
            break;
        case ConstraintFamily::TotalSumPlus:
            std::fill(c.begin(), c.end(), 1);
            c[k.index - 1] += 1;
            break;
    }
    return c;
}

int rate_terms(const ConstraintKind& k, int users) {
    switch (k.family) {
        case ConstraintFamily::Individual: return 1;
        case ConstraintFamily::AdjacentSum: return k.length;
        case ConstraintFamily::TotalSum: return users;
        case ConstraintFamily::TotalSumPlus: return users + 1;
    }
    return 0;
}

LinearConstraint make_min_constraint(ConstraintKind kind, int users, std::vector<Branch> branches) {
    LinearConstraint c;
    c.kind = kind;
    c.coeffs = kind_coeffs(kind, users);
    c.branches = std::move(branches);
    c.branch = 0;
    for (std::size_t b = 1; b < c.branches.size(); ++b) {
        if (c.branches[b].value < c.branches[c.branch].value) {
            c.branch = static_cast<int>(b);
        }
    }
    c.rhs = c.branches[c.branch].value;
    return c;
}

bool same_record(const LinearConstraint& a, const LinearConstraint& b) {
    return a.kind == b.kind && a.coeffs == b.coeffs && a.rhs == b.rhs &&
           a.branch_label() == b.branch_label();
}

std::string format_double(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) {
        throw ValidationError("cannot format value");
    }
    return std::string(buf, end);
}

namespace {

double parse_double(const std::string& s) {
    double x = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || p != s.data() + s.size()) {
        throw ValidationError("malformed number: '" + s + "'");
    }
    return x;
}

int parse_int(const std::string& s) {
    int x = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || p != s.data() + s.size()) {
        throw ValidationError("malformed integer: '" + s + "'");
    }
    return x;
}

std::string join_coeffs(const std::vector<int>& coeffs) {
    std::ostringstream out;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (i) out << ' ';
        out << coeffs[i];
    }
    return out.str();
}

std::vector<int> split_coeffs(const std::string& s) {
    std::istringstream in(s);
    std::vector<int> out;
    std::string tok;
    while (in >> tok) out.push_back(parse_int(tok));
    return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

LinearConstraint record_to_constraint(const std::string& family, int index, int length,
                                      std::vector<int> coeffs, double rhs,
                                      const std::string& branch, int users) {
    LinearConstraint c;
    c.kind = ConstraintKind{family_from_name(family), index, length};
    if (static_cast<int>(coeffs.size()) != users) {
        throw ValidationError("constraint row arity mismatch");
    }
    if (coeffs != kind_coeffs(c.kind, users)) {
        throw ValidationError("coefficients do not match kind " + to_string(c.kind));
    }
    c.coeffs = std::move(coeffs);
    c.rhs = rhs;
    c.branch = 0;
    c.branches = {Branch{branch, rhs}};
    return c;
}

}  // namespace

std::string to_csv(const ConstraintSet& cs) {
    std::ostringstream out;
    out << "# K " << cs.users << "\n";
    out << "# regime " << to_string(cs.regime) << "\n";
    for (const auto& n : cs.notes) out << "# note " << n << "\n";
    out << "kind,index,length,coeffs,rhs_bits,branch\n";
    for (const auto& row : cs.rows) {
        out << family_name(row.kind.family) << ',' << row.kind.index << ',' << row.kind.length
            << ',' << join_coeffs(row.coeffs) << ',' << format_double(row.rhs) << ','
            << row.branch_label() << "\n";
    }
    return out.str();
}

ConstraintSet constraint_set_from_csv(const std::string& text) {
    ConstraintSet cs;
    cs.users = 0;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.starts_with("# K ")) {
            cs.users = parse_int(line.substr(4));
            continue;
        }
        if (line.starts_with("# regime ")) {
            cs.regime = regime_from_string(line.substr(9));
            continue;
        }
        if (line.starts_with("# note ")) {
            cs.notes.push_back(line.substr(7));
            continue;
        }
        if (line.starts_with("#")) continue;
        if (!header_seen) {
            if (line != "kind,index,length,coeffs,rhs_bits,branch") {
                throw ValidationError("unexpected CSV header: '" + line + "'");
            }
            header_seen = true;
            continue;
        }
        auto fields = split(line, ',');
        if (fields.size() != 6) {
            throw ValidationError("expected 6 CSV fields: '" + line + "'");
        }
        if (cs.users == 0) {
            throw ValidationError("constraint CSV is missing the '# K' line");
        }
        cs.rows.push_back(record_to_constraint(fields[0], parse_int(fields[1]),
                                               parse_int(fields[2]), split_coeffs(fields[3]),
                                               parse_double(fields[4]), fields[5], cs.users));
    }
    if (!header_seen) throw ValidationError("constraint CSV has no header line");
    return cs;
}

std::string to_text(const ConstraintSet& cs) {
    std::ostringstream out;
    out << "# cycap constraint set\n";
    out << "K " << cs.users << "\n";
    out << "regime " << to_string(cs.regime) << "\n";
    for (const auto& n : cs.notes) out << "note " << n << "\n";
    for (const auto& row : cs.rows) {
        out << "row " << family_name(row.kind.family);
        switch (row.kind.family) {
            case ConstraintFamily::Individual:
            case ConstraintFamily::TotalSumPlus:
                out << " i=" << row.kind.index;
                break;
            case ConstraintFamily::AdjacentSum:
                out << " m=" << row.kind.index << " l=" << row.kind.length;
                break;
            case ConstraintFamily::TotalSum:
                break;
        }
        out << " coeffs " << join_coeffs(row.coeffs) << " rhs " << format_double(row.rhs)
            << " branch " << row.branch_label() << "\n";
    }
    return out.str();
}

ConstraintSet constraint_set_from_text(const std::string& text) {
    ConstraintSet cs;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.starts_with("#")) continue;
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (word == "K") {
            ls >> cs.users;
        } else if (word == "regime") {
            std::string r;
            ls >> r;
            cs.regime = regime_from_string(r);
        } else if (word == "note") {
            std::string rest;
            std::getline(ls, rest);
            if (!rest.empty() && rest.front() == ' ') rest.erase(rest.begin());
            cs.notes.push_back(rest);
        } else if (word == "row") {
            if (cs.users < 2) throw ValidationError("constraint text: 'K' must come before rows");
            std::string family;
            ls >> family;
            int index = 0;
            int length = 0;
            std::vector<int> coeffs;
            double rhs = 0;
            std::string branch;
            std::string tok;
            while (ls >> tok) {
                if (tok.starts_with("i=")) {
                    index = parse_int(tok.substr(2));
                } else if (tok.starts_with("m=")) {
                    index = parse_int(tok.substr(2));
                } else if (tok.starts_with("l=")) {
                    length = parse_int(tok.substr(2));
                } else if (tok == "coeffs") {
                    for (int i = 0; i < cs.users; ++i) {
                        std::string c;
                        if (!(ls >> c)) throw ValidationError("constraint text: truncated coeffs");
                        coeffs.push_back(parse_int(c));
                    }
                } else if (tok == "rhs") {
                    std::string v;
                    ls >> v;
                    rhs = parse_double(v);
                } else if (tok == "branch") {
                    ls >> branch;
                } else {
                    throw ValidationError("constraint text: unexpected token '" + tok + "'");
                }
            }
            cs.rows.push_back(
                record_to_constraint(family, index, length, std::move(coeffs), rhs, branch, cs.users));
        } else {
            throw ValidationError("constraint text: unexpected line '" + line + "'");
        }
    }
    if (cs.users < 2) throw ValidationError("constraint text: missing 'K' line");
    return cs;
}

}  // namespace cycap
