#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cycap/channel.hpp"
#include "cycap/constraint.hpp"

namespace cycap {

// Strict-bound comparisons allow this much floating noise before a pair is
// re-decided in exact arithmetic.
inline constexpr double kGapTolerance = 1e-9;

// One matched achievable/outer constraint pair.
struct GapPair {
    ConstraintKind kind;
    double achievable_rhs = 0.0;  // bits
    double outer_rhs = 0.0;       // bits
    double delta = 0.0;           // outer - achievable
    double bound = 0.0;           // 2, 2l, 2K, 2(K+1) by kind
    double normalized = 0.0;      // delta / rate terms
    bool pass = false;            // delta < bound (tolerance + exact recheck)
    bool nonneg = false;          // delta >= 0 (the per-row sharpness check)
    bool flagged = false;         // decided by exact recomputation near the bound
};

struct GapReport {
    int users = 0;
    Regime regime = Regime::Weak;
    bool asserted = false;  // bounds are a theorem only for weak channels
    std::vector<GapPair> pairs;
    double max_normalized = 0.0;
    double min_delta = 0.0;
    bool all_pass = false;
    bool all_nonneg = false;
};

// Pairs constraints strictly by kind (throws ValidationError on any
// mismatch) and evaluates the per-kind two-bit-family gaps.
GapReport gap_report(const ConstraintSet& achievable, const ConstraintSet& outer);

std::string to_csv(const GapReport& report);
std::string summary_text(const GapReport& report);

// Deterministic 64-bit generator (splitmix64); the sweep's sample streams
// must be reproducible bit-for-bit across runs and platforms.
struct Rng {
    std::uint64_t state = 0;

    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    double uniform(double lo, double hi);  // [lo, hi)
    int uniform_int(int lo, int hi);       // [lo, hi]
};

struct SweepConfig {
    int k_min = 2;
    int k_max = 6;
    int samples = 1000;
    std::uint64_t seed = 7;
    double snr_db_min = 0.0;
    double snr_db_max = 40.0;
    double inr_db_min = 0.0;      // weak sampling: INR_i dB ~ U[inr_db_min, SNR_i dB]
    double inr_db_headroom = 20;  // strong sampling: INR_i dB ~ U[SNR_i dB, snr_db_max + headroom]
    Regime target = Regime::Weak; // Weak | Strong filter; Mixed means unfiltered
    bool containment = false;     // also check achievable subset-of outer exactly
    int containment_max_k = 6;
    bool reduction_check = false; // strong channels: MAC intersection reduces to capacity
};

// Ratios drawn for one channel under the config's regime filter.
ChannelRatios sample_channel(Rng& rng, int users, const SweepConfig& cfg);

struct SweepRow {
    int sample = 0;
    int users = 0;
    Regime regime = Regime::Weak;
    ConstraintFamily family = ConstraintFamily::Individual;
    int pairs = 0;
    double max_delta = 0.0;
    double max_normalized = 0.0;
    double min_margin = 0.0;  // min over pairs of bound - delta
    bool pass = false;
};

struct SweepFailure {
    int sample = 0;
    std::string reason;
    ChannelRatios ratios;  // echoed for replay
};

struct SweepReport {
    SweepConfig config;
    std::vector<SweepRow> rows;
    std::vector<SweepFailure> failures;
    double max_normalized = 0.0;
    double min_delta = 0.0;
    int evaluated = 0;

    bool clean() const { return failures.empty(); }
};

// Seeded randomized verification harness. Weak-regime samples run the gap
// bounds as hard assertions (and optionally exact containment); any
// violation lands in failures with the channel echoed for replay.
SweepReport sweep(const SweepConfig& cfg);

std::string to_csv(const SweepReport& report);
std::string summary_text(const SweepReport& report);
std::string replay_json(const SweepReport& report);

}  // namespace cycap
