#ifndef HOMFORMAL_LINALG_HPP
#define HOMFORMAL_LINALG_HPP

#include <optional>
#include <utility>
#include <vector>

#include "homformal/rational.hpp"

namespace linalg {

using exactpoly::BigInt;
using exactpoly::Rational;

// Sparse matrix as a list of rows; each row holds (column, value) pairs sorted
// by column. Built incrementally, consumed by rank().
struct SparseMatrix {
  int ncols = 0;
  std::vector<std::vector<std::pair<int, Rational>>> rows;

  explicit SparseMatrix(int cols = 0) : ncols(cols) {}
  void add_row(std::vector<std::pair<int, Rational>> row);
  int nrows() const { return static_cast<int>(rows.size()); }
};

// Exact rank over Q via sparse Gaussian elimination with Markowitz-style
// pivoting (consumes the matrix).
long rank(SparseMatrix m);

// Rank of a dense integer matrix (exact, fraction-free).
long rank_int(const std::vector<std::vector<long long>>& m);

// Left kernel basis of a dense integer matrix: rows k with k*M = 0, integer
// entries, spanning the full left null space.
std::vector<std::vector<BigInt>> left_kernel_int(const std::vector<std::vector<long long>>& m);

// Solves A x = b over Q for dense A (columns may outnumber rows); returns one
// solution if consistent.
std::optional<std::vector<Rational>> solve_dense(std::vector<std::vector<Rational>> a,
                                                 std::vector<Rational> b);

}  // namespace linalg

#endif
