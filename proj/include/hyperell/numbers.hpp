#ifndef HYPERELL_NUMBERS_HPP
#define HYPERELL_NUMBERS_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <vector>

namespace hyperell {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt big_pow(const BigInt& base, std::uint64_t e) {
    BigInt r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline std::vector<std::uint64_t> divisors_of(std::uint64_t n) {
    std::vector<std::uint64_t> lo, hi;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            lo.push_back(d);
            if (d != n / d) hi.push_back(n / d);
        }
    }
    for (auto it = hi.rbegin(); it != hi.rend(); ++it) lo.push_back(*it);
    return lo;
}

/// Integer Mobius function.
inline int mobius_int(std::uint64_t n) {
    int factors = 0;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            ++factors;
        }
    }
    if (n > 1) ++factors;
    return (factors % 2 == 0) ? 1 : -1;
}

/// alpha(d) = prod_{p | d} (1 - p) over the prime divisors of d.
inline long long alpha_factor(std::uint64_t d) {
    long long r = 1;
    for (std::uint64_t p = 2; p * p <= d; ++p) {
        if (d % p == 0) {
            r *= 1 - static_cast<long long>(p);
            while (d % p == 0) d /= p;
        }
    }
    if (d > 1) r *= 1 - static_cast<long long>(d);
    return r;
}

} // namespace hyperell

#endif
