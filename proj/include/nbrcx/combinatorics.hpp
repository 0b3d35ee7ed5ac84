#ifndef NBRCX_COMBINATORICS_HPP
#define NBRCX_COMBINATORICS_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>

namespace nbrcx {

/** C(n, k) as an exact 64-bit integer; throws std::overflow_error past 2^64. */
inline std::uint64_t choose_exact(std::uint64_t n, std::uint64_t k)
{
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > std::numeric_limits<std::uint64_t>::max())
            throw std::overflow_error("binomial coefficient exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(r);
}

/** C(n, k) in floating point; exact below 2^53. */
inline double choose_real(std::uint64_t n, std::uint64_t k)
{
    if (k > n) return 0.0;
    if (k > n - k) k = n - k;
    long double r = 1.0L;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    return static_cast<double>(r);
}

/** Falling factorial n (n-1) ... (n-k+1). */
inline double falling_factorial(std::uint64_t n, std::uint64_t k)
{
    if (k > n) return 0.0;
    long double r = 1.0L;
    for (std::uint64_t i = 0; i < k; ++i) r *= static_cast<long double>(n - i);
    return static_cast<double>(r);
}

}  // namespace nbrcx

#endif
