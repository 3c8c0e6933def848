#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "gradering/ring.hpp"

namespace gradering {

/// Element of a finitely generated abelian group Z^r + Z_{m_1} + ... ;
/// free coordinates first, then torsion coordinates (each reduced mod m_i).
struct Degree {
  std::vector<i64> coords;

  auto operator<=>(const Degree&) const = default;
  std::string str() const;
};

/// Shape of the grading group: free rank plus a list of torsion orders >= 2.
struct DegreeGroup {
  u32 free_rank = 0;
  std::vector<u64> torsion;

  std::size_t arity() const { return free_rank + torsion.size(); }
  Degree zero() const;
  Degree reduce(Degree d) const;
  Degree add(const Degree& a, const Degree& b) const;
  Degree neg(const Degree& a) const;
  bool same(const DegreeGroup& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
  /// Direct sum; coordinates of this group first.
  DegreeGroup product(const DegreeGroup& o) const;
};

/// Basis-aligned grading: every basis vector carries a degree, so component
/// R_g is the span of the basis vectors of degree g. Built unvalidated;
/// certify() stamps it against a specific ring after the closure check.
class Grading {
public:
  Grading(DegreeGroup group, std::vector<Degree> degree_of_basis);

  const DegreeGroup& group() const { return group_; }
  const Degree& degree_of(std::size_t basis_index) const {
    return degrees_[basis_index];
  }
  std::size_t dim() const { return degrees_.size(); }

  struct Component {
    Degree degree;
    std::vector<u32> basis; // ascending basis indices
  };
  /// Components sorted by degree.
  const std::vector<Component>& components() const { return components_; }
  const Component* component(const Degree& g) const;

  bool certified_for(const Ring& r) const { return cert_ == r.id(); }

private:
  DegreeGroup group_;
  std::vector<Degree> degrees_;
  std::vector<Component> components_;
  const void* cert_ = nullptr;

  friend Grading certify(const Ring&, const Grading&);
};

/// Trivial grading: every basis vector in the identity component.
Grading trivial_grading(const Ring& r);

/// Closure check: every nonzero coefficient of e_i e_j must sit at degree
/// deg(i) + deg(j). Witness (i, j, offending basis index k).
Verdict validate_grading(const Ring& r, const Grading& g);

/// Returns a certified copy; throws PreconditionError if validation fails.
Grading certify(const Ring& r, const Grading& g);
/// Throws PreconditionError unless g is certified for r.
void require_certified(const Ring& r, const Grading& g, const char* op);

/// Homogeneous parts of x, keyed by degree; zero parts omitted.
std::map<Degree, Element> decompose(const Element& x, const Grading& g);

/// Three-way homogeneity answer; zero is distinguished from both others.
struct Homogeneity {
  enum class Kind { zero, homogeneous, mixed };
  Kind kind = Kind::zero;
  std::optional<Degree> degree; // set iff kind == homogeneous

  bool in_single_component() const { return kind != Kind::mixed; }
};
Homogeneity is_homogeneous(const Element& x, const Grading& g);

/// Number of homogeneous elements: sum_g m^{dim R_g} - (#components - 1),
/// counting zero once. Returns cap when the true count reaches it.
u64 homogeneous_count(const Ring& r, const Grading& g, u64 cap);

/// Restartable deterministic stream over all homogeneous elements: zero
/// first, then the nonzero elements of each component in degree order.
/// Refuses on construction if the total exceeds the budget.
class HomogeneousStream {
public:
  HomogeneousStream(const Ring& r, const Grading& g,
                    u64 budget = default_budget());

  std::optional<Element> next();
  void reset();
  u64 total_count() const { return total_; }

private:
  Ring ring_;
  const Grading* grading_;
  u64 total_ = 0;
  bool zero_done_ = false;
  std::size_t comp_ = 0;
  std::vector<u64> counter_;

  bool advance_counter();
};
std::vector<Element> all_homogeneous(const Ring& r, const Grading& g,
                                     u64 budget = default_budget());

/// Direct product with the direct-sum grading group; factor degrees embed
/// as (g, 0) and (0, h). Both factor gradings must validate.
struct ProductRing {
  Ring ring;
  Grading grading;
  Ring left;
  Ring right;
  std::size_t left_dim = 0;
};
ProductRing product_ring(const Ring& a, const Grading& ga, const Ring& b,
                         const Grading& gb);

} // namespace gradering
