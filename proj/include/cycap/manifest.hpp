#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cycap {

inline constexpr const char* kToolVersion = "cycap 0.1.0";

// FNV-1a, 64 bit, hex string. Stable input digest for manifests.
std::string fnv1a64_hex(const std::string& bytes);

// Every command writes one of these next to its outputs; no timestamps, so
// identical inputs give identical manifests.
struct RunManifest {
    std::string command;
    std::string spec_path;
    std::string spec_digest;
    std::string tool_version = kToolVersion;
    std::uint64_t seed = 0;
    std::string regime;
    std::vector<std::string> outputs;
    std::vector<std::string> notes;
};

std::string to_json(const RunManifest& m);

}  // namespace cycap
