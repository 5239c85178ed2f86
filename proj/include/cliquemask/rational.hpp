// rational.hpp — exact integer/rational arithmetic used by the oracle-grade
// computations (enumeration-based likelihood bounds, threshold-polynomial
// coefficients). Backed by boost.multiprecision, header-only.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

namespace cliquemask {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt big_binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

inline BigInt big_factorial(int n) {
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline double to_double(const BigRat& r) {
    return r.convert_to<double>();
}

inline double to_double(const BigInt& v) {
    return v.convert_to<double>();
}

} // namespace cliquemask
