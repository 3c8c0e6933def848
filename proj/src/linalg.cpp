#include "gradering/linalg.hpp"

#include <cassert>

namespace gradering::linalg {

namespace {

u64 mul(u64 a, u64 b, u64 p) { return (a * b) % p; }

void axpy(Row& target, u64 scale, const Row& src, u64 p) {
  for (std::size_t i = 0; i < target.size(); ++i)
    target[i] = (target[i] + scale * src[i]) % p;
}

} // namespace

Rref::Rref(u64 p, std::size_t width) : p_(p), width_(width) {}

Row Rref::reduce(Row v) const {
  assert(v.size() == width_);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    u64 c = v[pivots_[r]];
    if (c == 0) continue;
    axpy(v, p_ - c, rows_[r], p_); // v -= c * row
  }
  return v;
}

bool Rref::add(Row v) {
  v = reduce(std::move(v));
  std::size_t pivot = width_;
  for (std::size_t i = 0; i < width_; ++i)
    if (v[i] != 0) { pivot = i; break; }
  if (pivot == width_) return false;

  u64 inv = inv_mod(v[pivot], p_);
  for (auto& x : v) x = mul(x, inv, p_);

  // Eliminate the new pivot column from existing rows, then keep rows
  // ordered by pivot column.
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    u64 c = rows_[r][pivot];
    if (c != 0) axpy(rows_[r], p_ - c, v, p_);
  }
  std::size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < pivot) ++pos;
  rows_.insert(rows_.begin() + pos, std::move(v));
  pivots_.insert(pivots_.begin() + pos, pivot);
  return true;
}

bool Rref::contains(const Row& v) const {
  Row r = reduce(v);
  for (u64 x : r)
    if (x != 0) return false;
  return true;
}

bool Rref::same_span(const Rref& other) const {
  return p_ == other.p_ && width_ == other.width_ && rows_ == other.rows_;
}

std::optional<Solution> solve(u64 p, const std::vector<Row>& A, const Row& b) {
  const std::size_t unknowns = A.empty() ? b.size() * 0 : A.front().size();
  std::vector<Row> aug;
  aug.reserve(A.size());
  for (std::size_t r = 0; r < A.size(); ++r) {
    assert(A[r].size() == unknowns);
    Row row = A[r];
    row.push_back(r < b.size() ? b[r] % p : 0);
    aug.push_back(std::move(row));
  }

  std::vector<std::size_t> pivot_of_row;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < unknowns && rank < aug.size(); ++col) {
    std::size_t sel = rank;
    while (sel < aug.size() && aug[sel][col] == 0) ++sel;
    if (sel == aug.size()) continue;
    std::swap(aug[rank], aug[sel]);
    u64 inv = inv_mod(aug[rank][col], p);
    for (auto& x : aug[rank]) x = mul(x, inv, p);
    for (std::size_t r = 0; r < aug.size(); ++r) {
      if (r == rank) continue;
      u64 c = aug[r][col];
      if (c != 0) axpy(aug[r], p - c, aug[rank], p);
    }
    pivot_of_row.push_back(col);
    ++rank;
  }
  for (std::size_t r = rank; r < aug.size(); ++r)
    if (aug[r][unknowns] != 0) return std::nullopt; // 0 = nonzero

  Solution sol;
  sol.particular.assign(unknowns, 0);
  for (std::size_t r = 0; r < rank; ++r)
    sol.particular[pivot_of_row[r]] = aug[r][unknowns];

  std::vector<bool> is_pivot(unknowns, false);
  for (std::size_t r = 0; r < rank; ++r) is_pivot[pivot_of_row[r]] = true;
  for (std::size_t col = 0; col < unknowns; ++col) {
    if (is_pivot[col]) continue;
    Row dir(unknowns, 0);
    dir[col] = 1;
    for (std::size_t r = 0; r < rank; ++r)
      dir[pivot_of_row[r]] = (p - aug[r][col]) % p;
    sol.null_basis.push_back(std::move(dir));
  }
  return sol;
}

std::vector<Row> null_space(u64 p, const std::vector<Row>& A,
                            std::size_t unknowns) {
  if (A.empty()) {
    std::vector<Row> basis;
    for (std::size_t i = 0; i < unknowns; ++i) {
      Row dir(unknowns, 0);
      dir[i] = 1;
      basis.push_back(std::move(dir));
    }
    return basis;
  }
  Row zero(A.size(), 0);
  auto sol = solve(p, A, zero);
  assert(sol.has_value());
  return sol->null_basis;
}

} // namespace gradering::linalg
