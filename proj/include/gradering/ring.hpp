#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gradering/errors.hpp"
#include "gradering/numeric.hpp"

namespace gradering {

/// Generic pass/fail outcome with a human-readable detail line and an
/// operation-specific witness (indices into whatever the check scanned).
struct Verdict {
  bool pass = true;
  std::string detail;
  std::vector<i64> witness;

  explicit operator bool() const { return pass; }
};

/// Plain-data presentation of a ring: Z_m coefficients on a named basis with
/// sparse structure constants c[i][j][k] (e_i * e_j = sum_k c[i][j][k] e_k).
struct RingSpec {
  struct Triple {
    u32 i = 0, j = 0, k = 0;
    u64 c = 0;
  };

  u64 modulus = 0;
  std::vector<std::string> basis_names;
  std::vector<Triple> structure_constants;
  std::optional<std::vector<u64>> unity; // coordinates, if the ring is unital
};

class Element;

/// Immutable finite ring presented by structure constants. Cheap to copy;
/// identity of the underlying presentation is used to reject mixed-ring
/// arithmetic.
class Ring {
public:
  /// Checks well-formedness (dimensions, ranges, duplicate triples) and
  /// builds the ring. Does NOT check associativity; see validate_ring.
  static Ring make(const RingSpec& spec);

  std::size_t dim() const;
  u64 modulus() const;
  const std::vector<std::string>& basis_names() const;
  const std::string& basis_name(std::size_t i) const;

  u64 sc(std::size_t i, std::size_t j, std::size_t k) const;
  /// Nonzero terms of e_i * e_j as (basis index, coefficient) pairs.
  std::span<const std::pair<u32, u64>> product_terms(std::size_t i,
                                                     std::size_t j) const;

  Element zero() const;
  Element basis_element(std::size_t i) const;
  /// Builds an element from integer coordinates, reducing mod m.
  Element element(const std::vector<i64>& coords) const;
  Element element_u(std::vector<u64> coords) const; // already reduced
  std::optional<Element> unity() const;

  RingSpec spec() const; // sparse, sorted; round-trips through make

  bool same(const Ring& other) const { return data_ == other.data_; }
  const void* id() const { return data_.get(); }

private:
  struct Data;
  explicit Ring(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
  friend class Element;
};

/// Ring element: coordinate vector over the ring's basis, always reduced.
class Element {
public:
  Element(Ring ring, std::vector<u64> coords);

  const Ring& ring() const { return ring_; }
  const std::vector<u64>& coords() const { return coords_; }
  u64 coord(std::size_t i) const { return coords_[i]; }
  bool is_zero() const;

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator-() const;
  Element operator*(const Element& o) const; // ring multiplication
  Element scaled(i64 s) const;               // integer scalar action
  bool operator==(const Element& o) const;

  /// Renders as a combination of basis names, e.g. "2*E12 + X^3".
  std::string str() const;

private:
  Ring ring_;
  std::vector<u64> coords_;
};

/// Brute-force associativity over all basis triples; witness (i, j, k).
Verdict validate_ring(const Ring& r);

Element commutator(const Element& x, const Element& y); // xy - yx
Element jordan(const Element& x, const Element& y);     // xy + yx

/// Commutativity over all basis pairs; witness (i, j).
Verdict is_commutative(const Ring& r);

/// Canonical spanning set of the center {z : zx = xz for all x}.
/// Prime modulus required (linear solver path).
std::vector<Element> center(const Ring& r);

/// Canonical spanning set of {z : zs = sz for all s in the given set}.
std::vector<Element> centralizer(std::span<const Element> set, const Ring& r);

/// Throws PreconditionError unless both elements live in the same ring.
void require_same_ring(const Element& a, const Element& b);
/// Same check at the ring level, tagged with the operation name.
void require_same_ring(const Ring& a, const Ring& b, const char* op);
/// Throws UnsupportedModulusError unless the modulus is prime.
void require_prime_modulus(const Ring& r, const char* op);

} // namespace gradering
