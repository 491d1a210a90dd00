#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <ostream>
#include <string>

namespace hd {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& q) {
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

inline bool is_integer(const Rational& q) { return q.denominator() == 1; }

}  // namespace hd
