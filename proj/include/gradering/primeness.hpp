#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gradering/grading.hpp"
#include "gradering/ring.hpp"

namespace gradering {

/// Pair witnessing failure: a, b nonzero with a r b = 0 for every r.
struct AnnihilatingPair {
  std::vector<u64> a;
  std::vector<u64> b;
};

struct PrimenessVerdict {
  bool prime = false;
  std::optional<AnnihilatingPair> witness;
  u64 pairs_checked = 0;
  std::string detail;
  explicit operator bool() const { return prime; }
};

/// Graded primeness: no nonzero homogeneous a, b with a R b = 0. The middle
/// factor ranges over basis vectors only -- a r b is linear in r, so basis
/// middles are exact. Outer elements are enumerated in homogeneous-stream
/// order and a witness is the first pair in that order. Budget bounds the
/// number of nonzero homogeneous pairs. Certified grading required.
PrimenessVerdict is_gr_prime(const Ring& r, const Grading& g,
                             u64 budget = default_budget());

/// Ordinary primeness by full enumeration; budget bounds m^dim. Outer
/// elements scan in counter order (first coordinate fastest), witness is the
/// first pair found.
PrimenessVerdict is_prime(const Ring& r, u64 budget = default_budget());

struct PrimenessReport {
  PrimenessVerdict graded;
  PrimenessVerdict full;
};

/// Runs both checks and cross-validates them: a prime ring must be gr-prime
/// (homogeneous pairs are a subset of all pairs), so the combination
/// prime && !gr_prime is an internal error.
PrimenessReport primeness(const Ring& r, const Grading& g,
                          u64 budget = default_budget());

} // namespace gradering
