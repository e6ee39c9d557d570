#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "grkex/rng.hpp"

namespace grkex {

// Arbitrary-precision nonnegative exponent; decimal strings of a thousand
// digits and more must round-trip.
using Exponent = boost::multiprecision::cpp_int;

inline Exponent exp_parse(std::string_view dec) {
    if (dec.empty()) throw std::invalid_argument("empty exponent");
    for (char ch : dec)
        if (ch < '0' || ch > '9')
            throw std::invalid_argument("exponent must be a nonnegative decimal integer");
    return Exponent(std::string(dec));
}

inline std::string exp_to_string(const Exponent& e) { return e.str(); }

inline Exponent pow10(unsigned d) {
    Exponent r = 1;
    for (unsigned i = 0; i < d; i++) r *= 10;
    return r;
}

inline unsigned bit_length(const Exponent& e) {
    if (e == 0) return 0;
    return boost::multiprecision::msb(e) + 1;
}

// Uniform in [lo, hi], bias-free: draw bit_width(hi-lo+1) bits, reject
// overshoots, shift by lo.
inline Exponent uniform_exponent(Rng& rng, const Exponent& lo, const Exponent& hi) {
    if (lo > hi) throw std::invalid_argument("empty exponent range");
    const Exponent width = hi - lo + 1;
    const unsigned bits = bit_length(width - 1);
    if (bits == 0) return lo;
    for (;;) {
        Exponent r = 0;
        unsigned remaining = bits;
        while (remaining >= 64) {
            r <<= 64;
            r += rng.next();
            remaining -= 64;
        }
        if (remaining > 0) {
            r <<= remaining;
            r += rng.next() >> (64 - remaining);
        }
        if (r < width) return lo + r;
    }
}

}  // namespace grkex
