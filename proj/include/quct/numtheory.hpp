#pragma once

/**
 * @file numtheory.hpp
 * @brief Small integer helpers: primality, factorization, prime-power tests.
 *
 * Everything here works by trial division. Ring orders are desk-scale
 * (bounded by the size cap), so nothing fancier is warranted.
 */

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace quct {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

/// Prime factorization of n >= 2 as (prime, exponent) pairs, primes ascending.
inline std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t d = 2; d * d <= n; d == 2 ? d = 3 : d += 2) {
        if (n % d == 0) {
            unsigned e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            out.emplace_back(d, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

/// Writes q = p^e with p prime, or nullopt if q is not a prime power.
inline std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t q) {
    if (q < 2) return std::nullopt;
    auto fac = factorize(q);
    if (fac.size() != 1) return std::nullopt;
    return fac.front();
}

/// p^e with overflow check; returns 0 on overflow.
inline std::uint64_t checked_pow(std::uint64_t p, unsigned e) {
    std::uint64_t r = 1;
    while (e-- > 0) {
        if (r > UINT64_MAX / p) return 0;
        r *= p;
    }
    return r;
}

}  // namespace quct
