// Exact rational scalars and their string encoding ("p/q").
#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace relcat {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline Integer parse_integer(std::string_view s)
{
    if (s.empty())
        throw ParseError("empty integer literal");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
        throw ParseError("bad integer literal '" + std::string(s) + "'");
    for (std::size_t k = i; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9')
            throw ParseError("bad integer literal '" + std::string(s) + "'");
    return Integer(std::string(s[0] == '+' ? s.substr(1) : s));
}

}  // namespace detail

/// Parses "p/q", "p", or a finite decimal such as "-1.25" into a canonical rational.
inline Rational parse_rational(std::string_view s)
{
    while (!s.empty() && s.front() == ' ')
        s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ')
        s.remove_suffix(1);
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Integer num = detail::parse_integer(s.substr(0, slash));
        Integer den = detail::parse_integer(s.substr(slash + 1));
        if (den == 0)
            throw ParseError("zero denominator in '" + std::string(s) + "'");
        return Rational(num) / Rational(den);
    }
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string digits(s.substr(0, dot));
        std::string frac(s.substr(dot + 1));
        if (digits.empty() || digits == "-" || digits == "+")
            digits += "0";
        Integer scale = 1;
        for (std::size_t k = 0; k < frac.size(); ++k)
            scale *= 10;
        bool negative = !digits.empty() && digits[0] == '-';
        Integer whole = detail::parse_integer(digits);
        Integer part = frac.empty() ? Integer(0) : detail::parse_integer(frac);
        Rational r = Rational(whole) + Rational(part) / Rational(scale) * (negative ? -1 : 1);
        return r;
    }
    return Rational(detail::parse_integer(s));
}

inline std::string to_string(const Rational& q)
{
    return q.str();
}

inline double to_double(const Rational& q)
{
    return q.convert_to<double>();
}

/// Nearest rational with denominator at most `max_den` (continued fractions).
inline Rational rationalize(double x, std::int64_t max_den = 1000000)
{
    bool negative = x < 0;
    double y = negative ? -x : x;
    Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double rem = y;
    for (int iter = 0; iter < 64; ++iter) {
        double a = std::floor(rem);
        Integer ai(static_cast<long long>(a));
        Integer p2 = ai * p1 + p0;
        Integer q2 = ai * q1 + q0;
        if (q2 > max_den)
            break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double frac = rem - a;
        if (frac < 1e-15)
            break;
        rem = 1.0 / frac;
    }
    if (q1 == 0)
        return Rational(0);
    Rational r = Rational(p1) / Rational(q1);
    return negative ? Rational(-r) : r;
}

}  // namespace relcat
