#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace cycap {

// Exact rational scalar. All polytope arithmetic runs on this type; floating
// rate values enter exactly once, through dyadic().
using Rat = mpq_class;

// Dyadic grid used when converting floating bit values into exact rationals.
inline constexpr int kDyadicBits = 40;

// Nearest point of the 2^-40 grid, as an exact rational.
Rat dyadic(double bits_value);

// Canonical "p" / "p/q" rendering (matches the system interchange format).
std::string to_string(const Rat& q);

// Parses "p" or "p/q"; throws ValidationError on malformed input.
Rat rat_from_string(const std::string& text);

// Exact dot product.
Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b);

}  // namespace cycap
