#include "cycap/channel.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cycap/errors.hpp"

namespace cycap {

const char* to_string(Regime r) {
    switch (r) {
        case Regime::Weak: return "weak";
        case Regime::Strong: return "strong";
        case Regime::VeryStrong: return "very_strong";
        case Regime::Mixed: return "mixed";
    }
    return "?";
}

Regime regime_from_string(std::string_view s) {
    if (s == "weak") return Regime::Weak;
    if (s == "strong") return Regime::Strong;
    if (s == "very_strong") return Regime::VeryStrong;
    if (s == "mixed") return Regime::Mixed;
    throw ValidationError("unknown regime: '" + std::string(s) + "'");
}

namespace {

void check_vector(const std::vector<double>& v, int users, const char* name, bool allow_zero = true) {
    if (static_cast<int>(v.size()) != users) {
        throw ValidationError(std::string(name) + ": expected " + std::to_string(users) +
                              " entries, got " + std::to_string(v.size()));
    }
    for (double x : v) {
        if (!std::isfinite(x) || x < 0.0 || (!allow_zero && x == 0.0)) {
            throw ValidationError(std::string(name) + ": entries must be finite and nonnegative");
        }
    }
}

}  // namespace

void ChannelInstance::validate() const {
    if (users < 2) {
        throw ValidationError("channel needs at least 2 users, got K=" + std::to_string(users));
    }
    check_vector(direct_gain, users, "direct_gain");
    check_vector(cross_gain, users, "cross_gain");
    check_vector(power, users, "power");
    if (!std::isfinite(noise) || noise <= 0.0) {
        throw ValidationError("noise must be finite and positive");
    }
}

void ChannelRatios::validate() const {
    if (users < 2) {
        throw ValidationError("channel needs at least 2 users, got K=" + std::to_string(users));
    }
    check_vector(snr, users, "snr");
    check_vector(inr, users, "inr");
}

ChannelRatios derive_ratios(const ChannelInstance& ch) {
    ch.validate();
    ChannelRatios r;
    r.users = ch.users;
    r.snr.resize(ch.users);
    r.inr.resize(ch.users);
    for (int i = 0; i < ch.users; ++i) {
        r.snr[i] = ch.direct_gain[i] * ch.power[i] / ch.noise;
        r.inr[i] = ch.cross_gain[i] * ch.power[i] / ch.noise;
    }
    return r;
}

bool very_strong(const ChannelRatios& r) {
    for (int i = 0; i < r.users; ++i) {
        if (r.inr[i] < (1.0 + r.snr[r.prev(i)]) * r.snr[i]) return false;
    }
    return true;
}

int first_weak_index(const ChannelRatios& r) {
    for (int i = 0; i < r.users; ++i) {
        if (r.inr[i] < r.snr[i]) return i + 1;
    }
    return 0;
}

Regime classify_regime(const ChannelRatios& r) {
    r.validate();
    bool all_strong = true;
    bool all_weak = true;
    for (int i = 0; i < r.users; ++i) {
        if (r.inr[i] < r.snr[i]) all_strong = false;
        if (r.inr[i] > r.snr[i]) all_weak = false;
    }
    if (all_strong && very_strong(r)) return Regime::VeryStrong;
    if (all_strong) return Regime::Strong;  // INR == SNR boundary lands here
    if (all_weak) return Regime::Weak;
    return Regime::Mixed;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

namespace {

std::vector<double> read_array(const nlohmann::json& j, const std::string& key, int users,
                               bool values_in_db) {
    if (!j.contains(key)) {
        throw ValidationError("channel spec: missing '" + key + "'");
    }
    const auto& arr = j.at(key);
    if (!arr.is_array()) {
        throw ValidationError("channel spec: '" + key + "' must be an array");
    }
    std::vector<double> out;
    for (const auto& v : arr) {
        if (!v.is_number()) {
            throw ValidationError("channel spec: '" + key + "' must contain numbers");
        }
        double x = v.get<double>();
        out.push_back(values_in_db ? db_to_linear(x) : x);
    }
    if (static_cast<int>(out.size()) != users) {
        throw ValidationError("channel spec: '" + key + "' must have K=" + std::to_string(users) +
                              " entries");
    }
    return out;
}

}  // namespace

ChannelRatios parse_channel_spec(const std::string& text, bool values_in_db) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("channel spec: ") + e.what());
    }
    if (!j.is_object() || !j.contains("K") || !j.at("K").is_number_integer()) {
        throw ValidationError("channel spec: integer field 'K' is required");
    }
    int users = j.at("K").get<int>();
    if (users < 2) {
        throw ValidationError("channel spec: K must be >= 2, got " + std::to_string(users));
    }

    if (j.contains("snr") || j.contains("inr")) {
        ChannelRatios r;
        r.users = users;
        r.snr = read_array(j, "snr", users, values_in_db);
        r.inr = read_array(j, "inr", users, values_in_db);
        r.validate();
        return r;
    }

    if (!j.contains("gains")) {
        throw ValidationError("channel spec: provide either {snr, inr} or {gains, powers, noise}");
    }
    const auto& gains = j.at("gains");
    ChannelInstance ch;
    ch.users = users;
    ch.direct_gain = read_array(gains, "direct", users, values_in_db);
    ch.cross_gain = read_array(gains, "cross", users, values_in_db);
    ch.power = read_array(j, "powers", users, values_in_db);
    if (!j.contains("noise") || !j.at("noise").is_number()) {
        throw ValidationError("channel spec: numeric field 'noise' is required with gains");
    }
    double noise = j.at("noise").get<double>();
    ch.noise = values_in_db ? db_to_linear(noise) : noise;
    return derive_ratios(ch);
}

ChannelRatios load_channel_spec(const std::string& path, bool values_in_db) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open channel spec: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_channel_spec(buf.str(), values_in_db);
}

}  // namespace cycap
