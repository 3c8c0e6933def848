#include "gradering/grading.hpp"

#include <algorithm>
#include <cassert>

namespace gradering {

std::string Degree::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(coords[i]);
  }
  return out + ")";
}

Degree DegreeGroup::zero() const {
  return Degree{std::vector<i64>(arity(), 0)};
}

Degree DegreeGroup::reduce(Degree d) const {
  if (d.coords.size() != arity())
    throw PreconditionError("degree arity does not match group");
  for (std::size_t t = 0; t < torsion.size(); ++t) {
    i64& c = d.coords[free_rank + t];
    c = static_cast<i64>(reduce_mod(c, torsion[t]));
  }
  return d;
}

Degree DegreeGroup::add(const Degree& a, const Degree& b) const {
  Degree out;
  out.coords.resize(arity());
  for (std::size_t i = 0; i < arity(); ++i)
    out.coords[i] = a.coords[i] + b.coords[i];
  return reduce(std::move(out));
}

Degree DegreeGroup::neg(const Degree& a) const {
  Degree out;
  out.coords.resize(arity());
  for (std::size_t i = 0; i < arity(); ++i) out.coords[i] = -a.coords[i];
  return reduce(std::move(out));
}

DegreeGroup DegreeGroup::product(const DegreeGroup& o) const {
  DegreeGroup g;
  g.free_rank = free_rank + o.free_rank;
  g.torsion = torsion;
  g.torsion.insert(g.torsion.end(), o.torsion.begin(), o.torsion.end());
  return g;
}

Grading::Grading(DegreeGroup group, std::vector<Degree> degree_of_basis)
    : group_(std::move(group)), degrees_(std::move(degree_of_basis)) {
  for (auto& m : group_.torsion)
    if (m < 2)
      throw SpecError("grading.torsion", "torsion orders must be at least 2");
  for (auto& d : degrees_) d = group_.reduce(std::move(d));

  std::map<Degree, std::vector<u32>> by_degree;
  for (std::size_t i = 0; i < degrees_.size(); ++i)
    by_degree[degrees_[i]].push_back(static_cast<u32>(i));
  for (auto& [deg, basis] : by_degree)
    components_.push_back({deg, std::move(basis)});
}

const Grading::Component* Grading::component(const Degree& g) const {
  auto it = std::lower_bound(
      components_.begin(), components_.end(), g,
      [](const Component& c, const Degree& d) { return c.degree < d; });
  if (it == components_.end() || !(it->degree == g)) return nullptr;
  return &*it;
}

Grading trivial_grading(const Ring& r) {
  DegreeGroup g; // trivial group: rank 0, no torsion
  Grading grading(g, std::vector<Degree>(r.dim(), g.zero()));
  return certify(r, grading);
}

namespace {

void require_dim_match(const Ring& r, const Grading& g, const char* op) {
  if (g.dim() != r.dim())
    throw PreconditionError(std::string(op) +
                            ": grading dimension does not match ring");
}

} // namespace

Verdict validate_grading(const Ring& r, const Grading& g) {
  require_dim_match(r, g, "validate_grading");
  const std::size_t d = r.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Degree target = g.group().add(g.degree_of(i), g.degree_of(j));
      for (auto [k, c] : r.product_terms(i, j)) {
        (void)c;
        if (!(g.degree_of(k) == target)) {
          Verdict v;
          v.pass = false;
          v.witness = {static_cast<i64>(i), static_cast<i64>(j),
                       static_cast<i64>(k)};
          v.detail = "product " + r.basis_name(i) + " * " + r.basis_name(j) +
                     " hits " + r.basis_name(k) + " of degree " +
                     g.degree_of(k).str() + ", expected degree " +
                     target.str();
          return v;
        }
      }
    }
  Verdict v;
  v.detail = "all products respect the grading";
  return v;
}

Grading certify(const Ring& r, const Grading& g) {
  Verdict v = validate_grading(r, g);
  if (!v.pass)
    throw PreconditionError("certify: " + v.detail);
  Grading out = g;
  out.cert_ = r.id();
  return out;
}

void require_certified(const Ring& r, const Grading& g, const char* op) {
  if (!g.certified_for(r))
    throw PreconditionError(std::string(op) +
                            ": grading is not certified for this ring");
}

std::map<Degree, Element> decompose(const Element& x, const Grading& g) {
  require_dim_match(x.ring(), g, "decompose");
  std::map<Degree, Element> parts;
  for (std::size_t i = 0; i < x.coords().size(); ++i) {
    if (x.coord(i) == 0) continue;
    auto [it, fresh] = parts.try_emplace(g.degree_of(i), x.ring().zero());
    std::vector<u64> coords = it->second.coords();
    coords[i] = x.coord(i);
    it->second = x.ring().element_u(std::move(coords));
    (void)fresh;
  }
  return parts;
}

Homogeneity is_homogeneous(const Element& x, const Grading& g) {
  require_dim_match(x.ring(), g, "is_homogeneous");
  Homogeneity h;
  for (std::size_t i = 0; i < x.coords().size(); ++i) {
    if (x.coord(i) == 0) continue;
    if (h.kind == Homogeneity::Kind::zero) {
      h.kind = Homogeneity::Kind::homogeneous;
      h.degree = g.degree_of(i);
    } else if (!(g.degree_of(i) == *h.degree)) {
      h.kind = Homogeneity::Kind::mixed;
      h.degree.reset();
      return h;
    }
  }
  return h;
}

u64 homogeneous_count(const Ring& r, const Grading& g, u64 cap) {
  u64 total = 1; // zero, counted once
  for (const auto& comp : g.components()) {
    u64 size = pow_capped(r.modulus(), comp.basis.size(), cap);
    u64 nonzero = size - 1;
    if (total > cap - nonzero) return cap;
    total += nonzero;
    if (total >= cap) return cap;
  }
  return total;
}

HomogeneousStream::HomogeneousStream(const Ring& r, const Grading& g,
                                     u64 budget)
    : ring_(r), grading_(&g) {
  require_dim_match(r, g, "enumerate_homogeneous");
  total_ = homogeneous_count(r, g, budget + 1);
  if (total_ > budget)
    throw BudgetExceededError(
        "homogeneous enumeration needs " + std::to_string(total_) +
        "+ elements, budget is " + std::to_string(budget));
}

void HomogeneousStream::reset() {
  zero_done_ = false;
  comp_ = 0;
  counter_.clear();
}

bool HomogeneousStream::advance_counter() {
  const u64 m = ring_.modulus();
  for (std::size_t pos = 0; pos < counter_.size(); ++pos) {
    if (++counter_[pos] < m) return true;
    counter_[pos] = 0;
  }
  return false;
}

std::optional<Element> HomogeneousStream::next() {
  if (!zero_done_) {
    zero_done_ = true;
    return ring_.zero();
  }
  const auto& comps = grading_->components();
  while (comp_ < comps.size()) {
    if (counter_.empty()) {
      counter_.assign(comps[comp_].basis.size(), 0);
      // skip the all-zero assignment; zero was already yielded
    }
    if (!advance_counter()) {
      counter_.clear();
      ++comp_;
      continue;
    }
    std::vector<u64> coords(ring_.dim(), 0);
    const auto& basis = comps[comp_].basis;
    for (std::size_t pos = 0; pos < basis.size(); ++pos)
      coords[basis[pos]] = counter_[pos];
    return ring_.element_u(std::move(coords));
  }
  return std::nullopt;
}

std::vector<Element> all_homogeneous(const Ring& r, const Grading& g,
                                     u64 budget) {
  HomogeneousStream stream(r, g, budget);
  std::vector<Element> out;
  out.reserve(stream.total_count());
  while (auto e = stream.next()) out.push_back(*e);
  return out;
}

ProductRing product_ring(const Ring& a, const Grading& ga, const Ring& b,
                         const Grading& gb) {
  if (a.modulus() != b.modulus())
    throw PreconditionError("product_ring: factors have different moduli");
  if (!validate_grading(a, ga).pass || !validate_grading(b, gb).pass)
    throw PreconditionError("product_ring: a factor grading is invalid");

  const std::size_t da = a.dim(), db = b.dim();
  RingSpec spec;
  spec.modulus = a.modulus();
  for (std::size_t i = 0; i < da; ++i)
    spec.basis_names.push_back(a.basis_name(i) + ".l");
  for (std::size_t i = 0; i < db; ++i)
    spec.basis_names.push_back(b.basis_name(i) + ".r");
  for (u32 i = 0; i < da; ++i)
    for (u32 j = 0; j < da; ++j)
      for (auto [k, c] : a.product_terms(i, j))
        spec.structure_constants.push_back({i, j, k, c});
  const u32 off = static_cast<u32>(da);
  for (u32 i = 0; i < db; ++i)
    for (u32 j = 0; j < db; ++j)
      for (auto [k, c] : b.product_terms(i, j))
        spec.structure_constants.push_back(
            {i + off, j + off, static_cast<u32>(k + off), c});
  if (a.unity() && b.unity()) {
    std::vector<u64> one;
    for (u64 c : a.unity()->coords()) one.push_back(c);
    for (u64 c : b.unity()->coords()) one.push_back(c);
    spec.unity = std::move(one);
  }

  DegreeGroup group = ga.group().product(gb.group());
  std::vector<Degree> degrees;
  degrees.reserve(da + db);
  const std::size_t fa = ga.group().free_rank, fb = gb.group().free_rank;
  const std::size_t ta = ga.group().torsion.size(),
                    tb = gb.group().torsion.size();
  auto embed = [&](const Degree& d, bool left) {
    Degree out = group.zero();
    if (left) {
      for (std::size_t f = 0; f < fa; ++f) out.coords[f] = d.coords[f];
      for (std::size_t t = 0; t < ta; ++t)
        out.coords[fa + fb + t] = d.coords[fa + t];
    } else {
      for (std::size_t f = 0; f < fb; ++f) out.coords[fa + f] = d.coords[f];
      for (std::size_t t = 0; t < tb; ++t)
        out.coords[fa + fb + ta + t] = d.coords[fb + t];
    }
    return out;
  };
  for (std::size_t i = 0; i < da; ++i)
    degrees.push_back(embed(ga.degree_of(i), true));
  for (std::size_t i = 0; i < db; ++i)
    degrees.push_back(embed(gb.degree_of(i), false));

  ProductRing out{Ring::make(spec), Grading(group, std::move(degrees)), a, b,
                  da};
  out.grading = certify(out.ring, out.grading);
  return out;
}

} // namespace gradering
