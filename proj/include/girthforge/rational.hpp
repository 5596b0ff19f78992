#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <string>

namespace gf {

using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

inline Rat make_rat(long long num, long long den) { return Rat(num, den); }

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

inline std::string rat_str(const Rat& r) { return r.str(); }

// binom(n, k) as exact integer; 0 when out of range
inline Int binomial(long long n, long long k) {
    if (k < 0 || k > n || n < 0) return Int(0);
    Int r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= Int(n - k + i);
        r /= Int(i);
    }
    return r;
}

}  // namespace gf
