#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ffd {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "a/b" or "a"; throws InvalidArgument on malformed input or b = 0.
Rational parse_rational(std::string_view s);
/// Always "num/den" with den > 0, e.g. "1296/1".
std::string rational_string(const Rational& r);
BigInt ipow(const BigInt& b, unsigned e);
Rational ipow(const Rational& b, unsigned e);
/// floor(a / b) for b > 0.
BigInt floor_div(const BigInt& a, const BigInt& b);

} // namespace ffd
