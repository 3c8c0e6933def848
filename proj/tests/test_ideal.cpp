#include "doctest.h"

#include <random>
#include <set>
#include <vector>

#include "gradering/errors.hpp"
#include "gradering/ideal.hpp"

#include "helpers.hpp"

using namespace gradering;
namespace gt = gradering::testing;

namespace {

// Least ideal as a literal element set: close under addition and the
// declared one-sided multiplications until nothing new appears. Exponential,
// so keep the rings tiny.
std::set<std::vector<u64>> brute_ideal(std::span<const Element> gens,
                                       Side side, const Ring& r) {
  std::set<std::vector<u64>> S;
  S.insert(r.zero().coords());
  for (const auto& g : gens) S.insert(g.coords());
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<std::vector<u64>> snapshot(S.begin(), S.end());
    for (const auto& xc : snapshot) {
      const Element x = r.element_u(xc);
      for (const auto& yc : snapshot)
        grew |= S.insert((x + r.element_u(yc)).coords()).second;
      for (std::size_t b = 0; b < r.dim(); ++b) {
        const Element e = r.basis_element(b);
        if (side != Side::right) grew |= S.insert((e * x).coords()).second;
        if (side != Side::left) grew |= S.insert((x * e).coords()).second;
      }
    }
  }
  return S;
}

std::set<std::vector<u64>> element_set(const IdealHandle& I, u64 budget) {
  std::set<std::vector<u64>> out;
  for (const auto& e : I.elements(budget)) out.insert(e.coords());
  return out;
}

} // namespace

TEST_SUITE("ideal") {

TEST_CASE("generation matches the set-closure oracle") {
  std::mt19937 rng(20260814);
  std::vector<std::pair<Ring, const char*>> rings;
  rings.emplace_back(gt::catalog("zp5-c2").ring, "zp5-c2");
  rings.emplace_back(gt::cyclic_group_algebra(3, 2).first, "z3c2");
  rings.emplace_back(gt::catalog("m2z5-sum").ring, "m2z5");
  for (const auto& [r, name] : rings) {
    for (Side side : {Side::left, Side::right, Side::two_sided}) {
      for (int t = 0; t < 6; ++t) {
        std::vector<Element> gens{gt::random_element(r, rng)};
        if (t % 2) gens.push_back(gt::random_element(r, rng));
        const IdealHandle I = ideal_generate(gens, side, r);
        const auto brute = brute_ideal(gens, side, r);
        CHECK_MESSAGE(element_set(I, 1 << 14) == brute, name, " side ",
                      side_name(side), " trial ", t);
        for (const auto& g : gens) CHECK(I.contains(g));
      }
    }
  }
}

TEST_CASE("one-sided ideals of E11 in the matrix ring") {
  const auto inst = gt::catalog("m2z5-sum");
  const Ring& r = inst.ring;
  std::size_t e11 = r.dim(), e12 = r.dim(), e21 = r.dim();
  for (std::size_t i = 0; i < r.dim(); ++i) {
    if (r.basis_name(i) == "E11") e11 = i;
    if (r.basis_name(i) == "E12") e12 = i;
    if (r.basis_name(i) == "E21") e21 = i;
  }
  REQUIRE(e11 < r.dim());
  const Element gen = r.basis_element(e11);

  const IdealHandle left = ideal_generate({&gen, 1}, Side::left, r);
  CHECK(left.rank() == 2); // first column
  CHECK(left.contains(r.basis_element(e21)));
  CHECK_FALSE(left.contains(r.basis_element(e12)));

  const IdealHandle right = ideal_generate({&gen, 1}, Side::right, r);
  CHECK(right.rank() == 2); // first row
  CHECK(right.contains(r.basis_element(e12)));
  CHECK_FALSE(right.contains(r.basis_element(e21)));

  // the ring is simple, so every nonzero two-sided ideal is everything
  const IdealHandle both = ideal_generate({&gen, 1}, Side::two_sided, r);
  CHECK(both.is_full());
  CHECK(both.rank() == r.dim());
}

TEST_CASE("gradedness certificate and its witness") {
  const auto inst = gt::catalog("zp5-c2");
  const Ring& r = inst.ring;
  const Grading g = gt::certified(inst);

  // homogeneous generator: graded
  const Element e0 = r.basis_element(0);
  const IdealHandle graded = ideal_generate({&e0, 1}, Side::two_sided, r);
  CHECK(is_graded_ideal(graded, g).pass);

  // mixed generator 1 + g spans a line that is not graded
  const Element mixed = r.basis_element(0) + r.basis_element(1);
  const IdealHandle line = ideal_generate({&mixed, 1}, Side::two_sided, r);
  REQUIRE(line.rank() == 1);
  const Verdict v = is_graded_ideal(line, g);
  REQUIRE_FALSE(v.pass);
  REQUIRE(v.witness.size() == 2);
  const auto s = static_cast<std::size_t>(v.witness[0]);
  const auto k = static_cast<std::size_t>(v.witness[1]);
  REQUIRE(s < line.rank());
  // the homogeneous part of spanning vector s that contains basis k
  // genuinely escapes the span
  const auto parts = decompose(line.spanning_set()[s], g);
  const auto part = parts.find(g.degree_of(k));
  REQUIRE(part != parts.end());
  CHECK_FALSE(line.contains(part->second));

  // certificates travel with the handle once attached
  IdealHandle tagged = line;
  CHECK_FALSE(tagged.graded_certificate().has_value());
  tagged.attach_graded_certificate(v);
  REQUIRE(tagged.graded_certificate().has_value());
  CHECK_FALSE(tagged.graded_certificate()->pass);
}

TEST_CASE("element enumeration is exact and additive") {
  const auto inst = gt::catalog("m2z5-sum");
  const Ring& r = inst.ring;
  const Element gen = r.basis_element(0);
  const IdealHandle I = ideal_generate({&gen, 1}, Side::left, r);
  REQUIRE(I.rank() == 2);
  CHECK(I.element_count(1000) == 25);
  CHECK(I.element_count(10) == 10); // capped
  const auto elems = I.elements(1000);
  REQUIRE(elems.size() == 25);
  CHECK(elems.front().is_zero());
  std::set<std::vector<u64>> unique;
  for (const auto& e : elems) {
    CHECK(I.contains(e));
    unique.insert(e.coords());
  }
  CHECK(unique.size() == 25);
  std::mt19937 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
  for (int t = 0; t < 50; ++t)
    CHECK(unique.count((elems[pick(rng)] + elems[pick(rng)]).coords()) == 1);
  CHECK_FALSE(I.is_zero());
  CHECK_FALSE(I.is_full());
}

TEST_CASE("equality is span equality, not generator equality") {
  const auto inst = gt::catalog("m2z5-sum");
  const Ring& r = inst.ring;
  const Element a = r.basis_element(0);
  const Element b = r.basis_element(2);
  const std::vector<Element> g1{a, b};
  const std::vector<Element> g2{b, a};
  const std::vector<Element> g3{a + b, b.scaled(2)};
  const IdealHandle i1 = ideal_generate(g1, Side::left, r);
  const IdealHandle i2 = ideal_generate(g2, Side::left, r);
  const IdealHandle i3 = ideal_generate(g3, Side::left, r);
  CHECK(i1.same(i2));
  CHECK(i1.same(i3));
  CHECK(i1.spanning_set().size() == i2.spanning_set().size());
  for (std::size_t t = 0; t < i1.spanning_set().size(); ++t)
    CHECK(i1.spanning_set()[t] == i2.spanning_set()[t]); // canonical echelon
  const IdealHandle other = ideal_generate({&a, 1}, Side::right, r);
  CHECK_FALSE(other.same(ideal_generate({&a, 1}, Side::left, r)));
}

TEST_CASE("zero and full ideals") {
  const Ring r = gt::catalog("zp5-c2").ring;
  const Element z = r.zero();
  const IdealHandle zero = ideal_generate({&z, 1}, Side::two_sided, r);
  CHECK(zero.is_zero());
  CHECK(zero.rank() == 0);
  CHECK(zero.element_count(10) == 1);
  CHECK(zero.elements(10).size() == 1);
  CHECK(zero.contains(r.zero()));
  CHECK_FALSE(zero.contains(r.basis_element(0)));

  const IdealHandle full = full_ring_ideal(r);
  CHECK(full.is_full());
  CHECK(full.side() == Side::two_sided);
  for (const auto& x : gt::all_elements(r)) CHECK(full.contains(x));
  // certification stamps are per ring instance, so grade against the same
  // realized handle the ideal came from
  const auto inst = gt::catalog("zp5-c2");
  CHECK(is_graded_ideal(full_ring_ideal(inst.ring),
                        gt::certified(inst)).pass);
}

TEST_CASE("membership is linear-span membership") {
  const auto inst = gt::catalog("m2z5-sum");
  const Ring& r = inst.ring;
  const Element gen = r.basis_element(0);
  const IdealHandle I = ideal_generate({&gen, 1}, Side::left, r);
  for (const auto& x : gt::all_elements(r, 700))
    CHECK(membership(x, I) == I.contains(x));
}

TEST_CASE("side names parse both spellings") {
  CHECK(side_from_name("left", "f") == Side::left);
  CHECK(side_from_name("right", "f") == Side::right);
  CHECK(side_from_name("two-sided", "f") == Side::two_sided);
  CHECK(side_from_name("two_sided", "f") == Side::two_sided);
  CHECK_THROWS_AS(side_from_name("middle", "f"), SpecError);
  CHECK(side_name(Side::left) == "left");
  CHECK(side_name(Side::right) == "right");
  CHECK(side_name(Side::two_sided) == "two-sided");
}

TEST_CASE("composite modulus is refused") {
  RingSpec s;
  s.modulus = 6;
  s.basis_names = {"a"};
  s.structure_constants = {{0, 0, 0, 1}};
  const Ring z6 = Ring::make(s);
  const Element gen = z6.basis_element(0);
  CHECK_THROWS_AS(ideal_generate({&gen, 1}, Side::two_sided, z6),
                  UnsupportedModulusError);
}

} // TEST_SUITE
