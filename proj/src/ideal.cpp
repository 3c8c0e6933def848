#include "gradering/ideal.hpp"

#include <cassert>

namespace gradering {

std::string side_name(Side s) {
  switch (s) {
  case Side::left: return "left";
  case Side::right: return "right";
  case Side::two_sided: return "two-sided";
  }
  return "?";
}

Side side_from_name(const std::string& name, const std::string& field_path) {
  if (name == "left") return Side::left;
  if (name == "right") return Side::right;
  if (name == "two-sided" || name == "two_sided") return Side::two_sided;
  throw SpecError(field_path, "unknown ideal side '" + name +
                                  "' (expected left, right or two-sided)");
}

IdealHandle::IdealHandle(Ring r, Side s, linalg::Rref rows)
    : ring_(std::move(r)), side_(s), rows_(std::move(rows)) {
  for (const auto& row : rows_.basis())
    spanning_set_.push_back(ring_.element_u(row));
}

bool IdealHandle::contains(const Element& x) const {
  if (!x.ring().same(ring_))
    throw PreconditionError("membership: element from a different ring");
  return rows_.contains(x.coords());
}

bool IdealHandle::same(const IdealHandle& other) const {
  return ring_.same(other.ring_) && rows_.same_span(other.rows_);
}

u64 IdealHandle::element_count(u64 cap) const {
  return pow_capped(ring_.modulus(), rank(), cap);
}

std::vector<Element> IdealHandle::elements(u64 budget) const {
  const u64 count = element_count(budget + 1);
  if (count > budget)
    throw BudgetExceededError("ideal enumeration needs " +
                              std::to_string(count) + "+ elements, budget is " +
                              std::to_string(budget));
  std::vector<Element> out;
  out.reserve(count);
  const u64 m = ring_.modulus();
  std::vector<u64> counter(rank(), 0);
  while (true) {
    Element e = ring_.zero();
    for (std::size_t t = 0; t < counter.size(); ++t)
      if (counter[t]) e = e + spanning_set_[t].scaled(static_cast<i64>(counter[t]));
    out.push_back(std::move(e));
    std::size_t pos = 0;
    for (; pos < counter.size(); ++pos) {
      if (++counter[pos] < m) break;
      counter[pos] = 0;
    }
    if (pos == counter.size()) break;
  }
  return out;
}

IdealHandle ideal_generate(std::span<const Element> gens, Side side,
                           const Ring& r) {
  require_prime_modulus(r, "ideal_generate");
  linalg::Rref rows(r.modulus(), r.dim());
  for (const Element& g : gens) {
    if (!g.ring().same(r))
      throw PreconditionError("ideal_generate: generator from a different ring");
    rows.add(g.coords());
  }

  // Closure: each productive round grows the rank, so dim rounds suffice.
  for (std::size_t round = 0; round <= r.dim(); ++round) {
    bool grew = false;
    std::vector<linalg::Row> snapshot = rows.basis();
    for (const auto& row : snapshot) {
      Element x = r.element_u(row);
      for (std::size_t i = 0; i < r.dim(); ++i) {
        Element e = r.basis_element(i);
        if (side != Side::right) grew |= rows.add((e * x).coords());
        if (side != Side::left) grew |= rows.add((x * e).coords());
      }
    }
    if (!grew) return IdealHandle(r, side, std::move(rows));
  }
  assert(false && "ideal closure failed to reach a fixpoint within dim rounds");
  return IdealHandle(r, side, std::move(rows));
}

IdealHandle full_ring_ideal(const Ring& r) {
  linalg::Rref rows(r.modulus(), r.dim());
  for (std::size_t i = 0; i < r.dim(); ++i)
    rows.add(r.basis_element(i).coords());
  return IdealHandle(r, Side::two_sided, std::move(rows));
}

Verdict is_graded_ideal(const IdealHandle& I, const Grading& g) {
  require_certified(I.ring(), g, "is_graded_ideal");
  for (std::size_t t = 0; t < I.spanning_set().size(); ++t) {
    for (const auto& [deg, part] : decompose(I.spanning_set()[t], g)) {
      if (I.contains(part)) continue;
      Verdict v;
      v.pass = false;
      std::size_t lead = 0;
      while (part.coord(lead) == 0) ++lead;
      v.witness = {static_cast<i64>(t), static_cast<i64>(lead)};
      v.detail = "component of degree " + deg.str() + " of spanning element " +
                 I.spanning_set()[t].str() + " is outside the span";
      return v;
    }
  }
  Verdict v;
  v.detail = "every homogeneous component of the span stays in the span";
  return v;
}

bool membership(const Element& x, const IdealHandle& I) {
  require_prime_modulus(I.ring(), "membership");
  return I.contains(x);
}

} // namespace gradering
