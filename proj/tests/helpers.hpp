#pragma once

// Shared fixtures and independent oracles for the test suites.
//
// The oracles re-derive everything element by element, straight from the
// structure constants and the degree table. They must not call the code
// paths they exist to check, so expect loops where the library has linear
// algebra.

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gradering/corpus.hpp"
#include "gradering/grading.hpp"
#include "gradering/maps.hpp"
#include "gradering/ring.hpp"

namespace gradering::testing {

inline std::string data_path(const std::string& file) {
  return std::string(GRADERING_DATA_DIR) + "/" + file;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot open ", path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline RealizedInstance catalog(const std::string& id,
                                const CatalogParams& params = {}) {
  return realize(build_catalog_example(id, params), id);
}

inline Grading certified(const RealizedInstance& inst) {
  REQUIRE_MESSAGE(inst.grading.has_value(), inst.name,
                  ": grading did not certify: ",
                  inst.grading_validation.detail);
  return *inst.grading;
}

/// Every element in counter order (coordinate 0 fastest). Refuses above cap
/// so a size bump in a fixture fails loudly instead of hanging the suite.
inline std::vector<Element> all_elements(const Ring& r, u64 cap = 1 << 16) {
  const u64 total = pow_capped(r.modulus(), r.dim(), cap + 1);
  REQUIRE_MESSAGE(total <= cap, "ring too large to enumerate: ", total);
  std::vector<Element> out;
  out.reserve(total);
  std::vector<u64> c(r.dim(), 0);
  for (u64 n = 0; n < total; ++n) {
    out.push_back(r.element_u(c));
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (++c[i] < r.modulus()) break;
      c[i] = 0;
    }
  }
  return out;
}

/// Homogeneity straight off the degree table: nonzero support in one degree.
inline bool support_homogeneous(const Element& x, const Grading& g) {
  std::optional<Degree> seen;
  for (std::size_t i = 0; i < x.coords().size(); ++i) {
    if (x.coord(i) == 0) continue;
    if (seen && *seen != g.degree_of(i)) return false;
    seen = g.degree_of(i);
  }
  return true;
}

/// Degree of a nonzero support-homogeneous element.
inline Degree support_degree(const Element& x, const Grading& g) {
  for (std::size_t i = 0; i < x.coords().size(); ++i)
    if (x.coord(i) != 0) return g.degree_of(i);
  REQUIRE_MESSAGE(false, "support_degree of zero");
  return g.group().zero();
}

inline Element random_element(const Ring& r, std::mt19937& rng) {
  std::uniform_int_distribution<u64> coeff(0, r.modulus() - 1);
  std::vector<u64> c(r.dim());
  for (auto& v : c) v = coeff(rng);
  return r.element_u(std::move(c));
}

inline AdditiveMap random_map(const Ring& r, std::mt19937& rng) {
  std::uniform_int_distribution<u64> coeff(0, r.modulus() - 1);
  std::vector<std::vector<u64>> cols(r.dim(), std::vector<u64>(r.dim()));
  for (auto& col : cols)
    for (auto& v : col) v = coeff(rng);
  return AdditiveMap(r, std::move(cols));
}

/// First all-pairs Leibniz violation of d, element level.
inline std::optional<std::pair<Element, Element>>
leibniz_violation(const AdditiveMap& d, u64 cap = 1 << 16) {
  const auto elems = all_elements(d.ring(), cap);
  for (const auto& x : elems)
    for (const auto& y : elems)
      if (!(d.apply(x * y) == d.apply(x) * y + x * d.apply(y)))
        return std::make_pair(x, y);
  return std::nullopt;
}

/// Map homogeneity over every homogeneous element: no mixed image, and one
/// degree shift shared by every nonzero image.
inline bool oracle_homogeneous_map(const AdditiveMap& f, const Grading& g,
                                   u64 cap = 1 << 16) {
  std::optional<Degree> shift;
  for (const auto& x : all_elements(f.ring(), cap)) {
    if (x.is_zero() || !support_homogeneous(x, g)) continue;
    const Element fx = f.apply(x);
    if (fx.is_zero()) continue;
    if (!support_homogeneous(fx, g)) return false;
    const Degree s =
        g.group().add(support_degree(fx, g), g.group().neg(support_degree(x, g)));
    if (shift && *shift != s) return false;
    shift = s;
  }
  return true;
}

/// Gr-primeness with the middle factor over EVERY element, not just the
/// basis. Returns the first annihilating pair in enumeration order.
inline std::optional<std::pair<Element, Element>>
full_middle_annihilating_pair(const Ring& r, const Grading& g,
                              u64 cap = 1 << 16) {
  const auto elems = all_elements(r, cap);
  std::vector<Element> hom;
  for (const auto& x : elems)
    if (!x.is_zero() && support_homogeneous(x, g)) hom.push_back(x);
  for (const auto& a : hom)
    for (const auto& b : hom) {
      bool annihilates = true;
      for (const auto& m : elems)
        if (!(a * m * b).is_zero()) {
          annihilates = false;
          break;
        }
      if (annihilates) return std::make_pair(a, b);
    }
  return std::nullopt;
}

/// Centrality by definition: commutes with every basis vector.
inline bool oracle_central(const Element& x) {
  for (std::size_t i = 0; i < x.ring().dim(); ++i) {
    const Element b = x.ring().basis_element(i);
    if (!(x * b == b * x)) return false;
  }
  return true;
}

/// Tiny hand-rolled specs used across suites.
inline Ring null_ring(u64 m, std::size_t dim) {
  RingSpec spec;
  spec.modulus = m;
  for (std::size_t i = 0; i < dim; ++i)
    spec.basis_names.push_back("n" + std::to_string(i));
  return Ring::make(spec);
}

/// Group algebra Z_m[C_k] graded by C_k; basis g^0 .. g^{k-1}.
inline std::pair<Ring, Grading> cyclic_group_algebra(u64 m, u64 k) {
  RingSpec spec;
  spec.modulus = m;
  std::vector<Degree> degrees;
  for (u64 i = 0; i < k; ++i) {
    spec.basis_names.push_back("g" + std::to_string(i));
    degrees.push_back(Degree{{static_cast<i64>(i)}});
  }
  for (u64 i = 0; i < k; ++i)
    for (u64 j = 0; j < k; ++j)
      spec.structure_constants.push_back({static_cast<u32>(i),
                                          static_cast<u32>(j),
                                          static_cast<u32>((i + j) % k), 1});
  spec.unity = std::vector<u64>(k, 0);
  (*spec.unity)[0] = 1;
  Ring r = Ring::make(spec);
  Grading g = certify(r, Grading(DegreeGroup{0, {k}}, degrees));
  return {r, std::move(g)};
}

}  // namespace gradering::testing
