#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "gradering/linalg.hpp"

using namespace gradering;
using linalg::Row;

namespace {

// Brute-force solution set of A x = b over Z_p, enumerating all p^n vectors.
std::set<Row> brute_solutions(u64 p, const std::vector<Row>& A, const Row& b) {
  const std::size_t n = A.front().size();
  std::set<Row> out;
  Row x(n, 0);
  const u64 total = pow_capped(p, n, u64(1) << 20);
  for (u64 step = 0; step < total; ++step) {
    bool ok = true;
    for (std::size_t r = 0; r < A.size() && ok; ++r) {
      u64 acc = 0;
      for (std::size_t c = 0; c < n; ++c) acc += A[r][c] * x[c];
      ok = acc % p == b[r];
    }
    if (ok) out.insert(x);
    for (std::size_t i = 0; i < n; ++i) {
      if (++x[i] < p) break;
      x[i] = 0;
    }
  }
  return out;
}

// Every vector the general solution generates.
std::set<Row> span_solutions(u64 p, const linalg::Solution& s) {
  std::set<Row> out;
  std::vector<u64> coeff(s.null_basis.size(), 0);
  const u64 total = pow_capped(p, s.null_basis.size(), u64(1) << 20);
  for (u64 step = 0; step < total; ++step) {
    Row x = s.particular;
    for (std::size_t k = 0; k < coeff.size(); ++k)
      for (std::size_t c = 0; c < x.size(); ++c)
        x[c] = (x[c] + coeff[k] * s.null_basis[k][c]) % p;
    out.insert(x);
    for (std::size_t i = 0; i < coeff.size(); ++i) {
      if (++coeff[i] < p) break;
      coeff[i] = 0;
    }
  }
  return out;
}

std::vector<Row> random_system(std::mt19937& rng, u64 p, std::size_t rows,
                               std::size_t cols) {
  std::uniform_int_distribution<u64> coeff(0, p - 1);
  std::vector<Row> A(rows, Row(cols));
  for (auto& r : A)
    for (auto& v : r) v = coeff(rng);
  return A;
}

} // namespace

TEST_SUITE("linalg") {

TEST_CASE("solve agrees with the brute-force solution set") {
  std::mt19937 rng(20260814);
  for (u64 p : {2, 3, 5}) {
    std::uniform_int_distribution<u64> coeff(0, p - 1);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t cols = 1 + trial % 4;
      const std::size_t rows = 1 + (trial / 4) % 5;
      const auto A = random_system(rng, p, rows, cols);
      Row b(rows);
      for (auto& v : b) v = coeff(rng);

      const auto brute = brute_solutions(p, A, b);
      const auto got = linalg::solve(p, A, b);
      if (brute.empty()) {
        CHECK_MESSAGE(!got.has_value(), "p=", p, " trial=", trial);
        continue;
      }
      REQUIRE_MESSAGE(got.has_value(), "p=", p, " trial=", trial);
      CHECK(brute.count(got->particular) == 1);
      CHECK(span_solutions(p, *got) == brute);
    }
  }
}

TEST_CASE("solve is deterministic in the given row order") {
  std::mt19937 rng(7);
  const auto A = random_system(rng, 5, 4, 4);
  const Row b{1, 2, 3, 4};
  const auto s1 = linalg::solve(5, A, b);
  const auto s2 = linalg::solve(5, A, b);
  REQUIRE(s1.has_value() == s2.has_value());
  if (s1) {
    CHECK(s1->particular == s2->particular);
    CHECK(s1->null_basis == s2->null_basis);
  }
}

TEST_CASE("null_space satisfies rank-nullity") {
  std::mt19937 rng(99);
  for (u64 p : {2, 3, 5}) {
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t cols = 1 + trial % 5;
      const auto A = random_system(rng, p, 1 + trial % 4, cols);
      linalg::Rref rr(p, cols);
      for (const auto& row : A) rr.add(row);
      const auto nb = linalg::null_space(p, A, cols);
      CHECK(rr.rank() + nb.size() == cols);
      // every basis vector actually solves A x = 0
      for (const auto& x : nb)
        for (const auto& row : A) {
          u64 acc = 0;
          for (std::size_t c = 0; c < cols; ++c) acc += row[c] * x[c];
          CHECK(acc % p == 0);
        }
    }
  }
}

TEST_CASE("zero matrix edge cases") {
  const std::vector<Row> zero{{0, 0, 0}};
  CHECK(linalg::null_space(5, zero, 3).size() == 3);
  CHECK_FALSE(linalg::solve(5, zero, Row{1}).has_value());
  const auto s = linalg::solve(5, zero, Row{0});
  REQUIRE(s.has_value());
  CHECK(s->particular == Row{0, 0, 0});
  CHECK(s->null_basis.size() == 3);
}

TEST_CASE("rref basis is canonical for the span") {
  const std::vector<Row> rows{{1, 2, 3, 4}, {0, 1, 1, 1}, {2, 0, 1, 3}};
  linalg::Rref fwd(5, 4);
  for (const auto& r : rows) fwd.add(r);
  linalg::Rref rev(5, 4);
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) rev.add(*it);
  CHECK(fwd.rank() == rev.rank());
  CHECK(fwd.basis() == rev.basis());
  CHECK(fwd.same_span(rev));

  // normalized: pivots are 1 and eliminated everywhere else
  for (std::size_t i = 0; i < fwd.basis().size(); ++i) {
    const auto& row = fwd.basis()[i];
    const auto pivot = std::find_if(row.begin(), row.end(),
                                    [](u64 v) { return v != 0; });
    REQUIRE(pivot != row.end());
    CHECK(*pivot == 1);
    const auto col = static_cast<std::size_t>(pivot - row.begin());
    for (std::size_t j = 0; j < fwd.basis().size(); ++j)
      if (j != i) CHECK(fwd.basis()[j][col] == 0);
  }
}

TEST_CASE("rref membership counts the span exactly") {
  linalg::Rref rr(3, 3);
  rr.add({1, 2, 0});
  rr.add({0, 0, 2});
  REQUIRE(rr.rank() == 2);
  u64 members = 0;
  Row x(3, 0);
  for (int step = 0; step < 27; ++step) {
    if (rr.contains(x)) ++members;
    for (std::size_t i = 0; i < 3; ++i) {
      if (++x[i] < 3) break;
      x[i] = 0;
    }
  }
  CHECK(members == 9); // 3^rank
  CHECK(rr.reduce({1, 2, 2}) == Row{0, 0, 0});
  CHECK(rr.reduce({1, 0, 0}) != Row{0, 0, 0});
}

TEST_CASE("add reports rank growth") {
  linalg::Rref rr(2, 2);
  CHECK(rr.add({1, 1}));
  CHECK_FALSE(rr.add({1, 1}));
  CHECK(rr.add({0, 1}));
  CHECK(rr.rank() == 2);
}

} // TEST_SUITE
