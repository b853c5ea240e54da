#include "ffdecomp/exact.hpp"

#include "ffdecomp/errors.hpp"

namespace ffd {

namespace {

BigInt parse_integer(std::string_view s)
{
    if (s.empty())
        throw InvalidArgument("empty integer");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
        throw InvalidArgument("malformed integer '" + std::string(s) + "'");
    for (std::size_t j = i; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9')
            throw InvalidArgument("malformed integer '" + std::string(s) + "'");
    BigInt v(std::string(s.substr(i)));
    return s[0] == '-' ? BigInt(-v) : v;
}

} // namespace

Rational parse_rational(std::string_view s)
{
    auto slash = s.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(s));
    BigInt num = parse_integer(s.substr(0, slash));
    BigInt den = parse_integer(s.substr(slash + 1));
    if (den == 0)
        throw InvalidArgument("zero denominator in '" + std::string(s) + "'");
    return Rational(num, den);
}

std::string rational_string(const Rational& r)
{
    return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

BigInt ipow(const BigInt& b, unsigned e)
{
    return boost::multiprecision::pow(b, e);
}

Rational ipow(const Rational& b, unsigned e)
{
    Rational r = 1, x = b;
    while (e) {
        if (e & 1)
            r *= x;
        x *= x;
        e >>= 1;
    }
    return r;
}

BigInt floor_div(const BigInt& a, const BigInt& b)
{
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

} // namespace ffd
