#ifndef HEATDR_REAL_HPP
#define HEATDR_REAL_HPP

#include <string>

#include <boost/multiprecision/float128.hpp>

namespace heatdr {

// Working scalar: IEEE binary128, 113-bit significand.
using Real = boost::multiprecision::float128;

inline constexpr int kWorkingPrecisionBits = 113;

Real pi_real();

// Shortest round-trip-ish decimal rendering with `digits` significant digits.
std::string format_real(const Real& x, int digits = 17);

// Parses a decimal string at full working precision.
Real parse_real(const std::string& text);

}  // namespace heatdr

#endif
