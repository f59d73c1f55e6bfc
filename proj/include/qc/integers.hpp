#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace qc {

/// Arbitrary-precision signed integer.
///
/// Squared norms along the example orbits grow like 4^n, which leaves the
/// 64-bit range already at n = 32, and grid scans go beyond that.
using Int = boost::multiprecision::cpp_int;

/// 2^n as an exact integer, n >= 0.
inline Int pow2(std::int64_t n) {
    if (n < 0) {
        throw std::invalid_argument("pow2: negative exponent");
    }
    Int r(1);
    r <<= static_cast<unsigned>(n);
    return r;
}

inline std::string int_str(const Int& v) { return v.str(); }

} // namespace qc
