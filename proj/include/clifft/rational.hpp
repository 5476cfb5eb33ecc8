#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace clifft {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline std::string to_string(const Rational& q) { return q.str(); }

inline Rational make_rational(long long num, long long den = 1) {
    return Rational(Integer(num), Integer(den));
}

// (-1)^n for any integer n
inline int sign_power(long long n) { return (n % 2 == 0) ? 1 : -1; }

}  // namespace clifft
