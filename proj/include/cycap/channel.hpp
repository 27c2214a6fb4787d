#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cycap {

// Interference regime of a K-user cyclic Gaussian channel. VeryStrong is a
// sub-case of Strong and wins as the more specific label; channels on the
// INR == SNR boundary report Strong.
enum class Regime { Weak, Strong, VeryStrong, Mixed };

const char* to_string(Regime r);
Regime regime_from_string(std::string_view s);

// Physical channel description: per-user gains, transmit powers, and the
// common noise floor. Transmitter i reaches its own receiver i with
// |h_{i,i}|^2 and interferes with receiver i-1 (cyclically) with
// |h_{i,i-1}|^2. Signals themselves are never simulated.
struct ChannelInstance {
    int users = 0;                    // K >= 2
    std::vector<double> direct_gain;  // |h_{i,i}|^2
    std::vector<double> cross_gain;   // |h_{i,i-1}|^2
    std::vector<double> power;        // P_i, linear
    double noise = 1.0;               // sigma^2, linear

    void validate() const;  // throws ValidationError
};

// SNR/INR description. INR_i is the interference caused by transmitter i at
// receiver i-1, so receiver i sees its own SNR_i plus INR_{i+1} from its
// cyclic neighbour. User indices are mod K throughout.
struct ChannelRatios {
    int users = 0;
    std::vector<double> snr;
    std::vector<double> inr;

    void validate() const;  // throws ValidationError

    int next(int i) const { return (i + 1) % users; }
    int prev(int i) const { return (i + users - 1) % users; }
};

ChannelRatios derive_ratios(const ChannelInstance& ch);

Regime classify_regime(const ChannelRatios& r);

// INR_i >= (1 + SNR_{i-1}) SNR_i for every i.
bool very_strong(const ChannelRatios& r);

// First 1-based user index violating INR_i >= SNR_i, or 0 if none.
int first_weak_index(const ChannelRatios& r);

double db_to_linear(double db);

// Channel spec files are JSON with either {"K", "snr", "inr"} or
// {"K", "gains": {"direct", "cross"}, "powers", "noise"}. Values are linear
// unless values_in_db is set, in which case every numeric entry is 10^(x/10).
ChannelRatios parse_channel_spec(const std::string& text, bool values_in_db = false);
ChannelRatios load_channel_spec(const std::string& path, bool values_in_db = false);

}  // namespace cycap
