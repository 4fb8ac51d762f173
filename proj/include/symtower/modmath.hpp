#pragma once

// Exact integer helpers used throughout the engine. Everything is desk-scale:
// 64-bit inputs, trial-division factoring, brute-force discrete logs.

#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "symtower/errors.hpp"

namespace symtower::modmath {

/// a mod m with result in [0, m), valid for negative a.
inline std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

inline std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t mod) {
    if (mod == 1) return 0;
    std::int64_t result = 1;
    base = floor_mod(base, mod);
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, mod);
        base = mul_mod(base, base, mod);
        exp >>= 1;
    }
    return result;
}

/// Inverse of a mod m via extended gcd; requires gcd(a, m) = 1.
inline std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
    std::int64_t r0 = m, r1 = floor_mod(a, m);
    std::int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        s0 -= q * s1;
        std::swap(s0, s1);
    }
    if (r0 != 1) raise(ErrorKind::GcdFailure, "element not invertible modulo " + std::to_string(m));
    return floor_mod(s0, m);
}

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Prime factorization as (prime, multiplicity) pairs, ascending.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    std::vector<std::pair<std::int64_t, int>> factors;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            int mult = 0;
            while (n % d == 0) {
                n /= d;
                ++mult;
            }
            factors.emplace_back(d, mult);
        }
    }
    if (n > 1) factors.emplace_back(n, 1);
    return factors;
}

/// (p, k) with q = p^k, or nullopt if q is not a prime power.
inline std::optional<std::pair<std::int64_t, int>> prime_power(std::int64_t q) {
    if (q < 2) return std::nullopt;
    auto factors = factorize(q);
    if (factors.size() != 1) return std::nullopt;
    return factors.front();
}

/// Order of a in (Z/mod)^x; requires gcd(a, mod) = 1.
inline std::int64_t multiplicative_order(std::int64_t a, std::int64_t mod) {
    a = floor_mod(a, mod);
    if (std::gcd(a, mod) != 1)
        raise(ErrorKind::GcdFailure, "order undefined: arguments not coprime");
    std::int64_t acc = a % mod;
    std::int64_t order = 1;
    while (acc != 1 % mod) {
        acc = mul_mod(acc, a, mod);
        ++order;
    }
    return order;
}

/// 1 + q + ... + q^{d-1} mod m, evaluated term by term.
inline std::int64_t geometric_sum_mod(std::int64_t q, std::int64_t d, std::int64_t m) {
    std::int64_t sum = 0, power = 1 % m;
    for (std::int64_t i = 0; i < d; ++i) {
        sum = floor_mod(sum + power, m);
        power = mul_mod(power, floor_mod(q, m), m);
    }
    return sum;
}

/// Smallest primitive root mod a prime p. This pins the generator convention
/// reported in every serialized output.
inline std::int64_t smallest_primitive_root(std::int64_t p) {
    if (!is_prime(p)) raise(ErrorKind::InvalidBase, "primitive root requested for non-prime " + std::to_string(p));
    if (p == 2) return 1;
    auto factors = factorize(p - 1);
    for (std::int64_t g = 2; g < p; ++g) {
        bool primitive = true;
        for (const auto& [ell, mult] : factors) {
            (void)mult;
            if (pow_mod(g, (p - 1) / ell, p) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) return g;
    }
    raise(ErrorKind::InvalidBase, "no primitive root found");  // unreachable for prime p
}

}  // namespace symtower::modmath
