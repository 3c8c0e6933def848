#include "gradering/maps.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "gradering/errors.hpp"

namespace gradering {

namespace {

std::vector<u64> zero_coords(std::size_t n) { return std::vector<u64>(n, 0); }

} // namespace

AdditiveMap::AdditiveMap(Ring r, std::vector<std::vector<u64>> columns)
    : ring_(std::move(r)), columns_(std::move(columns)) {
  if (columns_.size() != ring_.dim())
    throw PreconditionError("additive map needs one image per basis vector");
  for (auto& col : columns_) {
    if (col.size() != ring_.dim())
      throw PreconditionError("additive map image has wrong coordinate count");
    for (auto& c : col)
      c %= ring_.modulus();
  }
}

AdditiveMap AdditiveMap::zero(const Ring& r) {
  return AdditiveMap(
      r, std::vector<std::vector<u64>>(r.dim(), zero_coords(r.dim())));
}

AdditiveMap AdditiveMap::identity(const Ring& r) { return scalar(r, 1); }

AdditiveMap AdditiveMap::scalar(const Ring& r, i64 s) {
  const u64 v = reduce_mod(s, r.modulus());
  std::vector<std::vector<u64>> cols(r.dim(), zero_coords(r.dim()));
  for (std::size_t j = 0; j < r.dim(); ++j)
    cols[j][j] = v;
  return AdditiveMap(r, std::move(cols));
}

Element AdditiveMap::image_of_basis(std::size_t j) const {
  return ring_.element_u(columns_.at(j));
}

Element AdditiveMap::apply(const Element& x) const {
  require_same_ring(ring_, x.ring(), "apply");
  Element acc = ring_.zero();
  for (std::size_t j = 0; j < dim(); ++j)
    if (x.coords()[j] != 0)
      acc = acc + image_of_basis(j).scaled(static_cast<i64>(x.coords()[j]));
  return acc;
}

AdditiveMap AdditiveMap::compose(const AdditiveMap& inner) const {
  require_same_ring(ring_, inner.ring_, "compose");
  std::vector<std::vector<u64>> cols;
  cols.reserve(dim());
  for (std::size_t j = 0; j < dim(); ++j)
    cols.push_back(apply(inner.image_of_basis(j)).coords());
  return AdditiveMap(ring_, std::move(cols));
}

AdditiveMap AdditiveMap::operator+(const AdditiveMap& o) const {
  require_same_ring(ring_, o.ring_, "map sum");
  std::vector<std::vector<u64>> cols = columns_;
  for (std::size_t j = 0; j < dim(); ++j)
    for (std::size_t i = 0; i < dim(); ++i)
      cols[j][i] = (cols[j][i] + o.columns_[j][i]) % ring_.modulus();
  return AdditiveMap(ring_, std::move(cols));
}

AdditiveMap AdditiveMap::operator-(const AdditiveMap& o) const {
  return *this + (-o);
}

AdditiveMap AdditiveMap::operator-() const { return scaled(-1); }

AdditiveMap AdditiveMap::scaled(i64 s) const {
  const u64 v = reduce_mod(s, ring_.modulus());
  std::vector<std::vector<u64>> cols = columns_;
  for (auto& col : cols)
    for (auto& c : col)
      c = c * v % ring_.modulus();
  return AdditiveMap(ring_, std::move(cols));
}

bool AdditiveMap::operator==(const AdditiveMap& o) const {
  return ring_.same(o.ring_) && columns_ == o.columns_;
}

bool AdditiveMap::is_zero() const {
  for (const auto& col : columns_)
    for (u64 c : col)
      if (c != 0)
        return false;
  return true;
}

std::vector<u64> AdditiveMap::flat() const {
  std::vector<u64> out;
  out.reserve(dim() * dim());
  for (const auto& col : columns_)
    out.insert(out.end(), col.begin(), col.end());
  return out;
}

AdditiveMap AdditiveMap::from_flat(const Ring& r, const std::vector<u64>& data) {
  if (data.size() != r.dim() * r.dim())
    throw PreconditionError("flat map data has wrong length");
  std::vector<std::vector<u64>> cols(r.dim(), zero_coords(r.dim()));
  for (std::size_t j = 0; j < r.dim(); ++j)
    for (std::size_t i = 0; i < r.dim(); ++i)
      cols[j][i] = data[j * r.dim() + i];
  return AdditiveMap(r, std::move(cols));
}

std::string AdditiveMap::str() const {
  std::ostringstream os;
  bool any = false;
  for (std::size_t j = 0; j < dim(); ++j) {
    Element img = image_of_basis(j);
    if (img.coords() == zero_coords(dim()))
      continue;
    if (any)
      os << "; ";
    os << ring_.basis_name(static_cast<u32>(j)) << " -> " << img.str();
    any = true;
  }
  return any ? os.str() : std::string("0");
}

AdditiveMap inner_derivation(const Element& r) {
  const Ring& ring = r.ring();
  std::vector<std::vector<u64>> cols;
  cols.reserve(ring.dim());
  for (u32 j = 0; j < ring.dim(); ++j)
    cols.push_back(commutator(r, ring.basis_element(j)).coords());
  return AdditiveMap(ring, std::move(cols));
}

AdditiveMap lie_bracket(const AdditiveMap& a, const AdditiveMap& b) {
  return a.compose(b) - b.compose(a);
}

AdditiveMap sum_map(const AdditiveMap& a, const AdditiveMap& b) {
  return a + b;
}

AdditiveMap scalar_multiple(const Element& r, const AdditiveMap& f) {
  require_same_ring(r.ring(), f.ring(), "scalar_multiple");
  std::vector<std::vector<u64>> cols;
  cols.reserve(f.dim());
  for (std::size_t j = 0; j < f.dim(); ++j)
    cols.push_back((r * f.image_of_basis(j)).coords());
  return AdditiveMap(f.ring(), std::move(cols));
}

Verdict is_derivation(const AdditiveMap& d) {
  const Ring& r = d.ring();
  for (u32 a = 0; a < r.dim(); ++a) {
    for (u32 b = 0; b < r.dim(); ++b) {
      const Element ea = r.basis_element(a);
      const Element eb = r.basis_element(b);
      const Element lhs = d.apply(ea * eb);
      const Element rhs = d.image_of_basis(a) * eb + ea * d.image_of_basis(b);
      if (!(lhs == rhs)) {
        Verdict v;
        v.pass = false;
        v.witness = {static_cast<i64>(a), static_cast<i64>(b)};
        v.detail = "Leibniz fails on (" + r.basis_name(a) + ", " +
                   r.basis_name(b) + "): D(xy) = " + lhs.str() +
                   " but D(x)y + xD(y) = " + rhs.str();
        return v;
      }
    }
  }
  Verdict v;
  v.pass = true;
  v.detail = "Leibniz holds on all basis pairs";
  return v;
}

Verdict is_homogeneous_map(const AdditiveMap& d, const Grading& g) {
  require_certified(d.ring(), g, "is_homogeneous_map");
  for (const auto& comp : g.components()) {
    std::optional<Degree> target;
    for (u32 j : comp.basis) {
      const Element img = d.image_of_basis(j);
      const Homogeneity h = is_homogeneous(img, g);
      if (h.kind == Homogeneity::Kind::zero)
        continue;
      if (h.kind == Homogeneity::Kind::mixed) {
        Verdict v;
        v.pass = false;
        v.witness = {static_cast<i64>(j)};
        v.detail = "image of " + d.ring().basis_name(j) + " is " + img.str() +
                   ", which is not homogeneous";
        return v;
      }
      if (target && !(*target == *h.degree)) {
        Verdict v;
        v.pass = false;
        v.witness = {static_cast<i64>(j)};
        v.detail = "component of degree " + comp.degree.str() +
                   " maps into two degrees: " + target->str() + " and " +
                   h.degree->str() + " (at " + d.ring().basis_name(j) + ")";
        return v;
      }
      target = h.degree;
    }
  }
  Verdict v;
  v.pass = true;
  v.detail = "each component maps into a single component";
  return v;
}

std::string DerivationVerdict::detail() const {
  if (pass)
    return "homogeneous derivation";
  std::string out;
  if (!leibniz)
    out += leibniz.detail;
  if (!homogeneity) {
    if (!out.empty())
      out += "; ";
    out += homogeneity.detail;
  }
  return out;
}

DerivationVerdict is_homogeneous_derivation(const AdditiveMap& d,
                                            const Grading& g) {
  DerivationVerdict out;
  out.leibniz = is_derivation(d);
  out.homogeneity = is_homogeneous_map(d, g);
  out.pass = out.leibniz.pass && out.homogeneity.pass;
  return out;
}

Verdict is_generalized_pair(const AdditiveMap& F, const AdditiveMap& d) {
  require_same_ring(F.ring(), d.ring(), "is_generalized_pair");
  const Ring& r = F.ring();
  for (u32 a = 0; a < r.dim(); ++a) {
    for (u32 b = 0; b < r.dim(); ++b) {
      const Element ea = r.basis_element(a);
      const Element eb = r.basis_element(b);
      const Element lhs = F.apply(ea * eb);
      const Element rhs = F.image_of_basis(a) * eb + ea * d.image_of_basis(b);
      if (!(lhs == rhs)) {
        Verdict v;
        v.pass = false;
        v.witness = {static_cast<i64>(a), static_cast<i64>(b)};
        v.detail = "F(xy) = F(x)y + x d(y) fails on (" + r.basis_name(a) +
                   ", " + r.basis_name(b) + ")";
        return v;
      }
    }
  }
  Verdict v;
  v.pass = true;
  v.detail = "F(xy) = F(x)y + x d(y) on all basis pairs";
  return v;
}

u64 MapSpace::size(u64 cap) const {
  return pow_capped(particular.ring().modulus(),
                    static_cast<u64>(directions.size()), cap);
}

bool MapSpace::contains(const AdditiveMap& d) const {
  if (!d.ring().same(particular.ring()))
    return false;
  const u64 p = particular.ring().modulus();
  linalg::Rref span(p, d.dim() * d.dim());
  for (const auto& dir : directions)
    span.add(dir.flat());
  return span.contains((d - particular).flat());
}

namespace {

/// Unknown layout for the solver: u = j*dim + i holds coordinate i of the
/// image of basis j, matching AdditiveMap::flat().
struct DerivationSystem {
  std::vector<linalg::Row> lhs;
  std::vector<u64> rhs;

  void add_functional(const AdditiveMap& F) {
    const Ring& r = F.ring();
    const std::size_t n = r.dim();
    const u64 m = r.modulus();
    for (u32 a = 0; a < n; ++a) {
      for (u32 b = 0; b < n; ++b) {
        // F(e_a e_b) - F(e_a) e_b, one equation per coordinate.
        Element target = F.apply(r.basis_element(a) * r.basis_element(b)) -
                         F.image_of_basis(a) * r.basis_element(b);
        std::vector<linalg::Row> rows(n, linalg::Row(n * n, 0));
        for (u32 i = 0; i < n; ++i)
          for (auto [c, coeff] : r.product_terms(a, i))
            rows[c][b * n + i] = (rows[c][b * n + i] + coeff) % m;
        for (u32 c = 0; c < n; ++c) {
          lhs.push_back(std::move(rows[c]));
          rhs.push_back(target.coords()[c]);
        }
      }
    }
  }

  void add_leibniz(const Ring& r) {
    const std::size_t n = r.dim();
    const u64 m = r.modulus();
    for (u32 a = 0; a < n; ++a) {
      for (u32 b = 0; b < n; ++b) {
        std::vector<linalg::Row> rows(n, linalg::Row(n * n, 0));
        // d(e_a e_b)
        for (auto [k, coeff] : r.product_terms(a, b))
          for (u32 c = 0; c < n; ++c)
            rows[c][k * n + c] = (rows[c][k * n + c] + coeff) % m;
        // - d(e_a) e_b
        for (u32 i = 0; i < n; ++i)
          for (auto [c, coeff] : r.product_terms(i, b))
            rows[c][a * n + i] = (rows[c][a * n + i] + m - coeff) % m;
        // - e_a d(e_b)
        for (u32 i = 0; i < n; ++i)
          for (auto [c, coeff] : r.product_terms(a, i))
            rows[c][b * n + i] = (rows[c][b * n + i] + m - coeff) % m;
        for (u32 c = 0; c < n; ++c) {
          lhs.push_back(std::move(rows[c]));
          rhs.push_back(0);
        }
      }
    }
  }
};

} // namespace

std::optional<MapSpace> associated_derivation_space(const AdditiveMap& F,
                                                    bool with_leibniz) {
  const Ring& r = F.ring();
  require_prime_modulus(r, "associated_derivation_space");
  DerivationSystem sys;
  sys.add_functional(F);
  if (with_leibniz)
    sys.add_leibniz(r);
  auto sol = linalg::solve(r.modulus(), sys.lhs, sys.rhs);
  if (!sol)
    return std::nullopt;
  MapSpace space{AdditiveMap::from_flat(r, sol->particular), {}};
  space.directions.reserve(sol->null_basis.size());
  for (const auto& row : sol->null_basis)
    space.directions.push_back(AdditiveMap::from_flat(r, row));
  return space;
}

std::optional<AdditiveMap> find_associated_derivation(const AdditiveMap& F) {
  auto space = associated_derivation_space(F, /*with_leibniz=*/false);
  if (!space)
    return std::nullopt;
  return space->particular;
}

std::string tri_name(Tri t) {
  switch (t) {
  case Tri::yes:
    return "yes";
  case Tri::no:
    return "no";
  default:
    return "undecided";
  }
}

namespace {

/// Search an affine space of maps for a homogeneous member by walking every
/// point. Coefficient odometer: first direction fastest, all-zero first, so
/// the particular solution is tried first.
std::optional<AdditiveMap> enumerate_for_homogeneous(const MapSpace& space,
                                                     const Grading& g) {
  const u64 p = space.particular.ring().modulus();
  std::vector<u64> coeff(space.directions.size(), 0);
  while (true) {
    AdditiveMap candidate = space.particular;
    for (std::size_t t = 0; t < coeff.size(); ++t)
      if (coeff[t] != 0)
        candidate =
            candidate + space.directions[t].scaled(static_cast<i64>(coeff[t]));
    if (is_homogeneous_map(candidate, g))
      return candidate;
    std::size_t pos = 0;
    while (pos < coeff.size() && ++coeff[pos] == p)
      coeff[pos++] = 0;
    if (pos == coeff.size())
      return std::nullopt;
  }
}

/// Case split over per-component target degrees: a homogeneous map sends
/// each component into one component, so fixing a target for every source
/// component turns homogeneity into forced-zero coordinates -- a linear
/// condition on the affine space. The split covers all homogeneous maps, so
/// it is exact; only its size is budget-limited.
std::optional<AdditiveMap> case_split_for_homogeneous(const MapSpace& space,
                                                      const Grading& g,
                                                      u64 budget,
                                                      bool& exceeded) {
  const Ring& r = space.particular.ring();
  const u64 p = r.modulus();
  const std::size_t n = r.dim();
  const auto& comps = g.components();
  const u64 cases =
      pow_capped(static_cast<u64>(comps.size()),
                 static_cast<u64>(comps.size()), budget + 1);
  if (cases > budget) {
    exceeded = true;
    return std::nullopt;
  }
  exceeded = false;
  const std::vector<u64> part = space.particular.flat();
  std::vector<std::size_t> pick(comps.size(), 0); // target index per component
  while (true) {
    std::vector<linalg::Row> lhs;
    std::vector<u64> rhs;
    bool infeasible = false;
    for (std::size_t ci = 0; ci < comps.size() && !infeasible; ++ci) {
      const Degree& target = comps[pick[ci]].degree;
      for (u32 j : comps[ci].basis) {
        for (u32 i = 0; i < n; ++i) {
          if (g.degree_of(i) == target)
            continue;
          const std::size_t u = static_cast<std::size_t>(j) * n + i;
          linalg::Row row(space.directions.size(), 0);
          bool nonzero = false;
          for (std::size_t t = 0; t < space.directions.size(); ++t) {
            row[t] = space.directions[t].flat()[u];
            nonzero = nonzero || row[t] != 0;
          }
          const u64 want = (p - part[u]) % p;
          if (!nonzero) {
            if (want != 0) {
              infeasible = true;
              break;
            }
            continue;
          }
          lhs.push_back(std::move(row));
          rhs.push_back(want);
        }
        if (infeasible)
          break;
      }
    }
    if (!infeasible) {
      std::optional<linalg::Solution> sol;
      if (lhs.empty())
        sol = linalg::Solution{linalg::Row(space.directions.size(), 0), {}};
      else
        sol = linalg::solve(p, lhs, rhs);
      if (sol) {
        AdditiveMap candidate = space.particular;
        for (std::size_t t = 0; t < space.directions.size(); ++t)
          if (sol->particular[t] != 0)
            candidate = candidate + space.directions[t].scaled(
                                        static_cast<i64>(sol->particular[t]));
        assert(is_homogeneous_map(candidate, g).pass);
        return candidate;
      }
    }
    std::size_t pos = 0;
    while (pos < pick.size() && ++pick[pos] == comps.size())
      pick[pos++] = 0;
    if (pos == pick.size())
      return std::nullopt;
  }
}

} // namespace

std::string Classification::summary() const {
  std::string out;
  auto flag = [&](const std::string& name, bool v) {
    out += name + ": " + (v ? "yes" : "no") + "\n";
  };
  flag("derivation", derivation.pass);
  flag("homogeneous map", homogeneous_map.pass);
  flag("homogeneous derivation", homogeneous_derivation);
  flag("generalized derivation", generalized_derivation);
  out += "generalized homogeneous: " + tri_name(generalized_homogeneous) + "\n";
  if (generalized_derivation)
    out += "associated derivation space dimension: " +
           std::to_string(assoc_space_dim) + "\n";
  return out;
}

Classification classify_map(const AdditiveMap& F, const Grading& g,
                            u64 budget) {
  require_certified(F.ring(), g, "classify_map");
  require_prime_modulus(F.ring(), "classify_map");
  Classification c;
  c.derivation = is_derivation(F);
  c.homogeneous_map = is_homogeneous_map(F, g);
  c.homogeneous_derivation = c.derivation.pass && c.homogeneous_map.pass;

  auto space = associated_derivation_space(F, /*with_leibniz=*/true);
  if (!space) {
    c.generalized_derivation = false;
    c.generalized_homogeneous = Tri::no;
    return c;
  }
  c.generalized_derivation = true;
  c.associated = space->particular;
  c.assoc_space_dim = space->dimension();

  if (!c.homogeneous_map.pass) {
    // The definition also requires F itself to preserve homogeneity; no
    // choice of associated derivation can repair that.
    c.generalized_homogeneous = Tri::no;
    return c;
  }
  if (space->size(budget + 1) <= budget) {
    if (auto w = enumerate_for_homogeneous(*space, g)) {
      c.generalized_homogeneous = Tri::yes;
      c.homogeneous_witness = std::move(w);
    } else {
      c.generalized_homogeneous = Tri::no;
    }
    return c;
  }
  bool exceeded = false;
  if (auto w = case_split_for_homogeneous(*space, g, budget, exceeded)) {
    c.generalized_homogeneous = Tri::yes;
    c.homogeneous_witness = std::move(w);
  } else {
    c.generalized_homogeneous = exceeded ? Tri::undecided : Tri::no;
  }
  return c;
}

AdditiveMap pair_map(const AdditiveMap& on_left, const AdditiveMap& on_right,
                     const ProductRing& pr) {
  require_same_ring(on_left.ring(), pr.left, "pair_map (left factor)");
  require_same_ring(on_right.ring(), pr.right, "pair_map (right factor)");
  const std::size_t n = pr.ring.dim();
  const std::size_t nl = pr.left_dim;
  std::vector<std::vector<u64>> cols(n, std::vector<u64>(n, 0));
  for (std::size_t j = 0; j < nl; ++j)
    for (std::size_t i = 0; i < nl; ++i)
      cols[j][i] = on_left.columns()[j][i];
  for (std::size_t j = nl; j < n; ++j)
    for (std::size_t i = nl; i < n; ++i)
      cols[j][i] = on_right.columns()[j - nl][i - nl];
  return AdditiveMap(pr.ring, std::move(cols));
}

std::optional<std::pair<AdditiveMap, AdditiveMap>>
split_map(const AdditiveMap& D, const ProductRing& pr) {
  require_same_ring(D.ring(), pr.ring, "split_map");
  const std::size_t n = pr.ring.dim();
  const std::size_t nl = pr.left_dim;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if ((j < nl) != (i < nl) && D.columns()[j][i] != 0)
        return std::nullopt;
  std::vector<std::vector<u64>> left(nl, std::vector<u64>(nl, 0));
  for (std::size_t j = 0; j < nl; ++j)
    for (std::size_t i = 0; i < nl; ++i)
      left[j][i] = D.columns()[j][i];
  std::vector<std::vector<u64>> right(n - nl, std::vector<u64>(n - nl, 0));
  for (std::size_t j = nl; j < n; ++j)
    for (std::size_t i = nl; i < n; ++i)
      right[j - nl][i - nl] = D.columns()[j][i];
  return std::make_pair(AdditiveMap(pr.left, std::move(left)),
                        AdditiveMap(pr.right, std::move(right)));
}

} // namespace gradering
