#include "gradering/numeric.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace gradering {

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u64 inv_mod(u64 a, u64 p) {
  a %= p;
  if (a == 0) throw std::invalid_argument("inv_mod: zero has no inverse");
  i64 t = 0, new_t = 1;
  i64 r = static_cast<i64>(p), new_r = static_cast<i64>(a);
  while (new_r != 0) {
    i64 q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += static_cast<i64>(p);
  return static_cast<u64>(t);
}

u64 pow_capped(u64 base, u64 exp, u64 cap) {
  u64 result = 1;
  for (u64 i = 0; i < exp; ++i) {
    if (base != 0 && result > cap / base) return cap;
    result *= base;
    if (result >= cap) return cap;
  }
  return result;
}

u64 reduce_mod(i64 v, u64 m) {
  i64 mm = static_cast<i64>(m);
  i64 r = v % mm;
  if (r < 0) r += mm;
  return static_cast<u64>(r);
}

u64 default_budget() {
  static const u64 cached = [] {
    if (const char* env = std::getenv("GRADERING_BUDGET")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end && *end == '\0' && v > 0) return static_cast<u64>(v);
    }
    return static_cast<u64>(1'000'000);
  }();
  return cached;
}

} // namespace gradering
