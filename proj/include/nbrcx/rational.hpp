#ifndef NBRCX_RATIONAL_HPP
#define NBRCX_RATIONAL_HPP

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace nbrcx {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(long long num, long long den = 1) { return Rational(BigInt(num), BigInt(den)); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/** "p/q", or "p" when the denominator is 1. */
inline std::string to_string(const Rational& r)
{
    const BigInt& num = boost::multiprecision::numerator(r);
    const BigInt& den = boost::multiprecision::denominator(r);
    return den == 1 ? num.str() : num.str() + "/" + den.str();
}

}  // namespace nbrcx

#endif
