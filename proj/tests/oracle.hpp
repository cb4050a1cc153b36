#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "dodeca/exact.hpp"

namespace oracle {

using Real = boost::multiprecision::cpp_bin_float_50;

// 50-digit floating value of (a + b sqrt 3) / 2^e, independent of the ring code.
inline Real real(const dodeca::RingValue& v) {
    using boost::multiprecision::ldexp;
    using boost::multiprecision::sqrt;
    return ldexp(Real(v.a()) + Real(v.b()) * sqrt(Real(3)), -static_cast<int>(v.e()));
}

} // namespace oracle
