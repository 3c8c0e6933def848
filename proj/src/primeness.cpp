#include "gradering/primeness.hpp"

#include <utility>

#include "gradering/errors.hpp"

namespace gradering {

namespace {

bool annihilates(const Ring& r, const Element& a, const Element& b) {
  for (u32 k = 0; k < r.dim(); ++k)
    if (!((a * r.basis_element(k)) * b).is_zero())
      return false;
  return true;
}

PrimenessVerdict scan_pairs(const Ring& r, const std::vector<Element>& pool,
                            std::string domain) {
  PrimenessVerdict out;
  for (const Element& a : pool) {
    for (const Element& b : pool) {
      ++out.pairs_checked;
      if (annihilates(r, a, b)) {
        out.prime = false;
        out.witness = AnnihilatingPair{a.coords(), b.coords()};
        out.detail = "a = " + a.str() + " and b = " + b.str() +
                     " are nonzero " + domain + " with a r b = 0 for all r";
        return out;
      }
    }
  }
  out.prime = true;
  out.detail = "no annihilating pair among " +
               std::to_string(out.pairs_checked) + " pairs of " + domain;
  return out;
}

} // namespace

PrimenessVerdict is_gr_prime(const Ring& r, const Grading& g, u64 budget) {
  require_certified(r, g, "is_gr_prime");
  const u64 total = homogeneous_count(r, g, budget + 2);
  const u64 nonzero = total - 1;
  if (nonzero > budget || nonzero * nonzero > budget)
    throw BudgetExceededError("gr-primeness needs " + std::to_string(nonzero) +
                              "^2 homogeneous pairs, budget is " +
                              std::to_string(budget));
  std::vector<Element> pool;
  pool.reserve(nonzero);
  HomogeneousStream stream(r, g, total + 1);
  while (auto e = stream.next())
    if (!e->is_zero())
      pool.push_back(std::move(*e));
  return scan_pairs(r, pool, "homogeneous elements");
}

PrimenessVerdict is_prime(const Ring& r, u64 budget) {
  const u64 count = pow_capped(r.modulus(), r.dim(), budget + 1);
  if (count > budget)
    throw BudgetExceededError("primeness scan needs " + std::to_string(count) +
                              "+ elements, budget is " + std::to_string(budget));
  std::vector<Element> pool;
  pool.reserve(count - 1);
  std::vector<u64> coords(r.dim(), 0);
  while (true) {
    std::size_t pos = 0;
    while (pos < coords.size() && ++coords[pos] == r.modulus())
      coords[pos++] = 0;
    if (pos == coords.size())
      break;
    pool.push_back(r.element_u(coords));
  }
  return scan_pairs(r, pool, "elements");
}

PrimenessReport primeness(const Ring& r, const Grading& g, u64 budget) {
  PrimenessReport rep{is_gr_prime(r, g, budget), is_prime(r, budget)};
  if (rep.full.prime && !rep.graded.prime)
    throw Error("internal inconsistency: ring reported prime but not gr-prime");
  return rep;
}

} // namespace gradering
