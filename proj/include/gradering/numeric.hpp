#pragma once

#include <cstdint>

namespace gradering {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

bool is_prime(u64 n);

/// Inverse of a modulo prime p; requires a % p != 0.
u64 inv_mod(u64 a, u64 p);

/// min(base^exp, cap), computed without overflow.
u64 pow_capped(u64 base, u64 exp, u64 cap);

/// Canonical representative of v in [0, m).
u64 reduce_mod(i64 v, u64 m);

/// Enumeration budget: GRADERING_BUDGET from the environment, else 10^6.
u64 default_budget();

} // namespace gradering
