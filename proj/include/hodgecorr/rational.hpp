#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace hodgecorr {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline std::string to_fraction_string(const Rational& q) {
    return q.str();
}

inline Rational rational_from_string(const std::string& s) {
    return Rational(s);
}

} // namespace hodgecorr
