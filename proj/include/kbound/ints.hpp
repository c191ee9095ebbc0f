#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace kbound {

// All arithmetic in this project is exact.  Int grows without bound, Rat is a
// normalized fraction of two Ints.  Nothing in the math core may touch
// floating point.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int pow_int(Int base, unsigned long e) {
    Int r = 1;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// Largest s with s*s <= v.  v must be nonnegative.
inline Int isqrt(const Int& v) {
    if (v < 0) throw std::domain_error("isqrt: negative argument");
    return boost::multiprecision::sqrt(v);
}

// floor(a/b) with sign handling (cpp_int division truncates toward zero).
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int floor_rat(const Rat& r) {
    return floor_div(boost::multiprecision::numerator(r),
                     boost::multiprecision::denominator(r));
}

inline Int ceil_rat(const Rat& r) {
    return -floor_rat(-r);
}

// Nearest integer, halves rounded up.  Used by the size-reduction step of
// lattice reduction; any tie rule keeps |mu| <= 1/2, this one is fixed for
// determinism.
inline Int round_rat(const Rat& r) {
    return floor_rat(r + Rat(1, 2));
}

inline bool fits_long(const Int& v) {
    return v >= std::numeric_limits<long long>::min() &&
           v <= std::numeric_limits<long long>::max();
}

inline long long to_long(const Int& v) {
    if (!fits_long(v)) throw std::overflow_error("to_long: value out of range");
    return v.convert_to<long long>();
}

} // namespace kbound
