#pragma once

#include <boost/rational.hpp>
#include <string>

namespace lbx {

// Exact rational arithmetic throughout; edge weights and node sums must never
// be rounded. Desk-scale magnitudes (denominators bounded by small palette
// sizes) keep long long far from overflow.
using Rat = boost::rational<long long>;

// "p/q" in lowest terms; integers are rendered bare ("0", "1").
std::string rat_to_string(const Rat& r);

// Accepts "p", "p/q", optional leading '-'. Throws Error("ParseError").
Rat rat_from_string(const std::string& s);

} // namespace lbx
