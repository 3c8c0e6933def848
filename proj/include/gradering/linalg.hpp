#pragma once

#include <optional>
#include <vector>

#include "gradering/numeric.hpp"

namespace gradering::linalg {

using Row = std::vector<u64>;

/// Incrementally maintained reduced row echelon basis of a span over Z_p.
/// Rows are normalized (pivot 1), pivots strictly increase, and every pivot
/// column is eliminated above and below, so equal spans have equal bases.
class Rref {
public:
  Rref(u64 p, std::size_t width);

  /// Reduces v against the basis and inserts the residual; true if rank grew.
  bool add(Row v);

  /// Residual of v after elimination against the basis.
  Row reduce(Row v) const;

  bool contains(const Row& v) const;

  std::size_t rank() const { return rows_.size(); }
  std::size_t width() const { return width_; }
  const std::vector<Row>& basis() const { return rows_; }
  bool same_span(const Rref& other) const;

private:
  u64 p_;
  std::size_t width_;
  std::vector<Row> rows_;
  std::vector<std::size_t> pivots_;
};

/// General solution of the system rows(A) * x = b over Z_p.
struct Solution {
  Row particular;              // free variables set to zero
  std::vector<Row> null_basis; // one vector per free column, column-ordered
};

/// Solves A x = b; A is a list of equation rows. Empty optional if
/// inconsistent. Deterministic: elimination in given row order.
std::optional<Solution> solve(u64 p, const std::vector<Row>& A, const Row& b);

/// Basis of the nullspace of A (solve with b = 0, null part only).
std::vector<Row> null_space(u64 p, const std::vector<Row>& A,
                            std::size_t unknowns);

} // namespace gradering::linalg
