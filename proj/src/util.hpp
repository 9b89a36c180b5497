#pragma once

#include <cstdint>

#include "sumsetkit/core.hpp"

namespace sumsetkit::detail {

inline Value sat_add(Value a, Value b) {
    Value r;
    return __builtin_add_overflow(a, b, &r) ? ~Value(0) : r;
}

inline Value sat_mul(Value a, Value b) {
    Value r;
    return __builtin_mul_overflow(a, b, &r) ? ~Value(0) : r;
}

inline Value isqrt(Value n) {
    if (n == 0) return 0;
    Value r = static_cast<Value>(__builtin_sqrtl(static_cast<long double>(n)));
    while (r > 0 && (unsigned __int128)r * r > n) --r;
    while ((unsigned __int128)(r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline Value ceil_sqrt(Value n) {
    const Value r = isqrt(n);
    return r * r == n ? r : r + 1;
}

/// floor(u / sqrt(n)): largest r with r^2 * n <= u^2.
inline Value floor_div_sqrt(Value u, Value n) {
    if (n == 0) return u;
    Value r = static_cast<Value>(static_cast<long double>(u) /
                                 __builtin_sqrtl(static_cast<long double>(n)));
    auto fits = [&](Value c) {
        const unsigned __int128 lhs = (unsigned __int128)c * c * n;
        return lhs <= (unsigned __int128)u * u;
    };
    while (r > 0 && !fits(r)) --r;
    while (fits(r + 1)) ++r;
    return r;
}

/// floor(u^(2/3)): largest r with r^3 <= u^2.
inline Value floor_pow_two_thirds(Value u) {
    Value r = static_cast<Value>(__builtin_powl(static_cast<long double>(u), 2.0L / 3.0L));
    auto fits = [&](Value c) {
        return (unsigned __int128)c * c * c <= (unsigned __int128)u * u;
    };
    while (r > 0 && !fits(r)) --r;
    while (fits(r + 1)) ++r;
    return r;
}

/// ceil(m / sqrt(n)): smallest l with l^2 * n >= m^2.
inline Value ceil_div_sqrt(Value m, Value n) {
    if (n == 0 || m == 0) return m;
    Value r = floor_div_sqrt(m, n);
    const bool exact = (unsigned __int128)r * r * n == (unsigned __int128)m * m;
    return exact ? r : r + 1;
}

} // namespace sumsetkit::detail
