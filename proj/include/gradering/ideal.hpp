#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gradering/grading.hpp"
#include "gradering/linalg.hpp"
#include "gradering/ring.hpp"

namespace gradering {

enum class Side { left, right, two_sided };

std::string side_name(Side s);
/// Parses "left" / "right" / "two-sided" (also "two_sided"); throws SpecError.
Side side_from_name(const std::string& name, const std::string& field_path);

/// An ideal of a declared side, held as a reduced row-echelon spanning set so
/// that equality and membership are canonical. Immutable after generation.
class IdealHandle {
public:
  const Ring& ring() const { return ring_; }
  Side side() const { return side_; }

  /// Echelon basis of the span, in pivot order.
  const std::vector<Element>& spanning_set() const { return spanning_set_; }
  std::size_t rank() const { return spanning_set_.size(); }
  bool is_zero() const { return spanning_set_.empty(); }
  bool is_full() const { return rank() == ring_.dim(); }

  bool contains(const Element& x) const;
  bool same(const IdealHandle& other) const;

  /// Gradedness record, if the owner ran is_graded_ideal and attached it.
  const std::optional<Verdict>& graded_certificate() const {
    return graded_certificate_;
  }
  void attach_graded_certificate(Verdict v) {
    graded_certificate_ = std::move(v);
  }

  /// Number of elements in the span, capped. Used for enumeration budgets.
  u64 element_count(u64 cap) const;
  /// Every element of the span, in counter order over the echelon basis
  /// (first spanning vector's coefficient varies fastest). Zero comes first.
  std::vector<Element> elements(u64 budget) const;

private:
  IdealHandle(Ring r, Side s, linalg::Rref rows);
  Ring ring_;
  Side side_;
  linalg::Rref rows_;
  std::vector<Element> spanning_set_;
  std::optional<Verdict> graded_certificate_;

  friend IdealHandle ideal_generate(std::span<const Element> gens, Side side,
                                    const Ring& r);
  friend IdealHandle full_ring_ideal(const Ring& r);
};

/// Least ideal of the declared side containing gens, by closure iteration:
/// multiply the spanning set by every basis vector on the declared side(s),
/// re-reduce, repeat to fixpoint. Prime modulus required.
IdealHandle ideal_generate(std::span<const Element> gens, Side side,
                           const Ring& r);

/// The whole ring as a two-sided ideal.
IdealHandle full_ring_ideal(const Ring& r);

/// Pass iff every homogeneous component of every spanning element lies back
/// in the span. Witness (spanning index, basis index of offending part).
Verdict is_graded_ideal(const IdealHandle& I, const Grading& g);

/// Linear-span membership via elimination.
bool membership(const Element& x, const IdealHandle& I);

} // namespace gradering
