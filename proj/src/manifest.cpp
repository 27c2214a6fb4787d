#include "cycap/manifest.hpp"

#include <iomanip>
#include <sstream>

namespace cycap {

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex << std::setfill('0') << std::setw(16) << h;
    return out.str();
}

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string to_json(const RunManifest& m) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"command\": " << quote(m.command) << ",\n";
    out << "  \"tool_version\": " << quote(m.tool_version) << ",\n";
    out << "  \"spec_path\": " << quote(m.spec_path) << ",\n";
    out << "  \"spec_digest\": " << quote(m.spec_digest) << ",\n";
    out << "  \"seed\": " << m.seed << ",\n";
    out << "  \"regime\": " << quote(m.regime) << ",\n";
    out << "  \"outputs\": [";
    for (std::size_t i = 0; i < m.outputs.size(); ++i) {
        if (i) out << ", ";
        out << quote(m.outputs[i]);
    }
    out << "],\n";
    out << "  \"notes\": [";
    for (std::size_t i = 0; i < m.notes.size(); ++i) {
        if (i) out << ", ";
        out << quote(m.notes[i]);
    }
    out << "]\n";
    out << "}\n";
    return out.str();
}

}  // namespace cycap
