#include "cycap/rational.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>

#include "cycap/errors.hpp"

namespace cycap {

Rat dyadic(double bits_value) {
    if (!std::isfinite(bits_value)) {
        throw ValidationError("cannot convert non-finite value to rational");
    }
    double scaled = std::ldexp(bits_value, kDyadicBits);
    // Rate values are at most a few hundred bits; 2^62 headroom is ample.
    if (std::abs(scaled) >= 0x1p62) {
        throw ValidationError("value out of range for dyadic conversion");
    }
    auto numerator = static_cast<std::int64_t>(std::llround(scaled));
    Rat q(numerator, std::int64_t{1} << kDyadicBits);
    q.canonicalize();
    return q;
}

std::string to_string(const Rat& q) {
    std::ostringstream out;
    out << q;
    return out.str();
}

Rat rat_from_string(const std::string& text) {
    Rat q;
    if (q.set_str(text, 10) != 0) {
        throw ValidationError("malformed rational: '" + text + "'");
    }
    if (q.get_den() == 0) {
        throw ValidationError("zero denominator in rational: '" + text + "'");
    }
    q.canonicalize();
    return q;
}

Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    Rat acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

}  // namespace cycap
