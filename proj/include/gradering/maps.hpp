#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gradering/grading.hpp"
#include "gradering/linalg.hpp"
#include "gradering/ring.hpp"

namespace gradering {

/// Additive self-map of a ring, stored as its images on the basis:
/// column j holds the coordinates of the image of basis vector j.
/// Additive endomorphisms of (Z_m)^dim are exactly the Z_m-matrix maps,
/// so this representation is lossless.
class AdditiveMap {
public:
  AdditiveMap(Ring r, std::vector<std::vector<u64>> columns);
  static AdditiveMap zero(const Ring& r);
  static AdditiveMap identity(const Ring& r);
  static AdditiveMap scalar(const Ring& r, i64 s); // x -> s*x

  const Ring& ring() const { return ring_; }
  std::size_t dim() const { return columns_.size(); }
  const std::vector<std::vector<u64>>& columns() const { return columns_; }
  Element image_of_basis(std::size_t j) const;
  Element apply(const Element& x) const;

  AdditiveMap compose(const AdditiveMap& inner) const; // this after inner
  AdditiveMap operator+(const AdditiveMap& o) const;
  AdditiveMap operator-(const AdditiveMap& o) const;
  AdditiveMap operator-() const;
  AdditiveMap scaled(i64 s) const;
  bool operator==(const AdditiveMap& o) const;
  bool is_zero() const;

  /// Flat copy of the matrix, column after column. Used as a dedup key and
  /// as the unknown-vector layout of the associated-derivation solver.
  std::vector<u64> flat() const;
  static AdditiveMap from_flat(const Ring& r, const std::vector<u64>& data);

  std::string str() const; // one line per nonzero image

private:
  Ring ring_;
  std::vector<std::vector<u64>> columns_;
};

AdditiveMap inner_derivation(const Element& r);                      // [r, .]
AdditiveMap lie_bracket(const AdditiveMap& a, const AdditiveMap& b); // ab - ba
AdditiveMap sum_map(const AdditiveMap& a, const AdditiveMap& b);
AdditiveMap scalar_multiple(const Element& r, const AdditiveMap& f); // r*f(.)

/// Leibniz check over all basis pairs; exact for all pairs because the
/// Leibniz defect D(xy) - D(x)y - xD(y) is biadditive. Witness (i, j).
Verdict is_derivation(const AdditiveMap& d);

/// Per-component homogeneity: for every component, the nonzero basis images
/// must be homogeneous of one common degree (zero images are allowed, since
/// 0 lies in every component). Additivity makes this equivalent to
/// "D(r) is homogeneous for every homogeneous r". Witness: basis column.
Verdict is_homogeneous_map(const AdditiveMap& d, const Grading& g);

/// Both legs of the homogeneous-derivation definition, kept separate so a
/// caller can see which one failed.
struct DerivationVerdict {
  Verdict leibniz;
  Verdict homogeneity;
  bool pass = false;
  explicit operator bool() const { return pass; }
  std::string detail() const;
};
DerivationVerdict is_homogeneous_derivation(const AdditiveMap& d,
                                            const Grading& g);

/// Does F(xy) = F(x)y + x d(y) hold? Checked on basis pairs (exact by
/// biadditivity). This is the bare functional identity; it does not ask
/// whether d is a derivation. Witness (i, j).
Verdict is_generalized_pair(const AdditiveMap& F, const AdditiveMap& d);

/// Affine space of maps d solving a linear system: particular + span of
/// directions. Directions form a canonical echelon basis.
struct MapSpace {
  AdditiveMap particular;
  std::vector<AdditiveMap> directions;

  std::size_t dimension() const { return directions.size(); }
  /// Number of points, capped.
  u64 size(u64 cap) const;
  bool contains(const AdditiveMap& d) const;
};

/// Solves F(e_i e_j) = F(e_i)e_j + e_i d(e_j) for d. With with_leibniz the
/// Leibniz equations on d (also linear) are intersected in, so the space
/// holds exactly the associated *derivations* of F. Empty optional when the
/// system is inconsistent (F is not generalized). Prime modulus required.
std::optional<MapSpace> associated_derivation_space(const AdditiveMap& F,
                                                    bool with_leibniz = true);

/// One solution of the bare functional system (free unknowns set to zero),
/// or nothing if F is not generalized even by a non-derivation companion.
std::optional<AdditiveMap> find_associated_derivation(const AdditiveMap& F);

enum class Tri { yes, no, undecided };
std::string tri_name(Tri t);

/// Where a map sits in the inclusion diagram
///   homogeneous derivation  =>  generalized homogeneous derivation
///        derivation         =>  generalized derivation
/// plus the witness data behind the generalized flags.
struct Classification {
  Verdict derivation;
  Verdict homogeneous_map;
  bool homogeneous_derivation = false;

  bool generalized_derivation = false;
  std::optional<AdditiveMap> associated; // canonical associated derivation
  std::size_t assoc_space_dim = 0;       // derivation solution-space dimension

  Tri generalized_homogeneous = Tri::no;
  std::optional<AdditiveMap> homogeneous_witness; // homogeneous associated d

  std::string summary() const;
};

/// Full classification. The generalized-homogeneous leg needs an associated
/// derivation that is itself homogeneous, so the whole solution space is
/// searched: enumerated outright when it has at most `budget` points, else
/// split by per-component target degree (each case is a linear system). If
/// even the case split exceeds the budget the flag is `undecided` -- never
/// a guess. Certified grading and prime modulus required.
Classification classify_map(const AdditiveMap& F, const Grading& g,
                            u64 budget = default_budget());

/// Block-diagonal map on a product ring acting as on_left/on_right on the
/// factors.
AdditiveMap pair_map(const AdditiveMap& on_left, const AdditiveMap& on_right,
                     const ProductRing& pr);

/// Inverse of pair_map: recovers the factor maps, or nothing when the map
/// has a nonzero cross-block.
std::optional<std::pair<AdditiveMap, AdditiveMap>>
split_map(const AdditiveMap& D, const ProductRing& pr);

} // namespace gradering
