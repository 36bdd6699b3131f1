#include "homformal/linalg.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace linalg {

void SparseMatrix::add_row(std::vector<std::pair<int, Rational>> row) {
  std::sort(row.begin(), row.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<int, Rational>> clean;
  for (auto& [c, v] : row) {
    if (c < 0 || c >= ncols) throw std::out_of_range("SparseMatrix column");
    if (v.is_zero()) continue;
    if (!clean.empty() && clean.back().first == c)
      clean.back().second += v;
    else
      clean.emplace_back(c, std::move(v));
    if (!clean.empty() && clean.back().second.is_zero()) clean.pop_back();
  }
  rows.push_back(std::move(clean));
}

namespace {

// row_a -= factor * row_b, sparse merge
std::vector<std::pair<int, Rational>> axpy(const std::vector<std::pair<int, Rational>>& a,
                                           const Rational& factor,
                                           const std::vector<std::pair<int, Rational>>& b) {
  std::vector<std::pair<int, Rational>> out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) {
      out.push_back(a[i++]);
    } else if (a[i].first > b[j].first) {
      out.emplace_back(b[j].first, -(factor * b[j].second));
      ++j;
    } else {
      Rational v = a[i].second - factor * b[j].second;
      if (!v.is_zero()) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.emplace_back(b[j].first, -(factor * b[j].second));
  return out;
}

}  // namespace

long rank(SparseMatrix m) {
  int n = m.nrows();
  // column -> set of live rows containing it
  std::vector<std::set<int>> col_rows(m.ncols);
  // (nnz, row) of live nonzero rows, so the shortest row is found in O(log n)
  std::set<std::pair<int, int>> by_size;
  for (int r = 0; r < n; ++r) {
    for (auto& [c, v] : m.rows[r]) col_rows[c].insert(r);
    if (!m.rows[r].empty()) by_size.insert({static_cast<int>(m.rows[r].size()), r});
  }

  long rk = 0;
  while (!by_size.empty()) {
    // shortest live row; within it, the column hitting the fewest other rows,
    // preferring unit entries to keep coefficients small
    int best_r = by_size.begin()->second;
    int best_c = -1;
    size_t best_cnt = 0;
    bool best_unit = false;
    for (auto& [c, v] : m.rows[best_r]) {
      bool unit = v.is_integer() && (v.num() == 1 || v.num() == -1);
      size_t cnt = col_rows[c].size();
      if (best_c < 0 || std::make_pair(!unit, cnt) < std::make_pair(!best_unit, best_cnt)) {
        best_c = c;
        best_cnt = cnt;
        best_unit = unit;
      }
    }

    ++rk;
    by_size.erase({static_cast<int>(m.rows[best_r].size()), best_r});
    Rational pivot;
    for (auto& [c, v] : m.rows[best_r])
      if (c == best_c) pivot = v;
    std::vector<int> targets(col_rows[best_c].begin(), col_rows[best_c].end());
    for (int r : targets) {
      if (r == best_r) continue;
      Rational val;
      for (auto& [c, v] : m.rows[r])
        if (c == best_c) val = v;
      if (val.is_zero()) continue;
      auto updated = axpy(m.rows[r], val / pivot, m.rows[best_r]);
      by_size.erase({static_cast<int>(m.rows[r].size()), r});
      for (auto& [c, v] : m.rows[r]) col_rows[c].erase(r);
      m.rows[r] = std::move(updated);
      for (auto& [c, v] : m.rows[r]) col_rows[c].insert(r);
      if (!m.rows[r].empty()) by_size.insert({static_cast<int>(m.rows[r].size()), r});
    }
    for (auto& [c, v] : m.rows[best_r]) col_rows[c].erase(best_r);
    m.rows[best_r].clear();
  }
  return rk;
}

long rank_int(const std::vector<std::vector<long long>>& m) {
  SparseMatrix sm(m.empty() ? 0 : static_cast<int>(m[0].size()));
  for (const auto& row : m) {
    std::vector<std::pair<int, Rational>> r;
    for (size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0) r.emplace_back(static_cast<int>(j), Rational(row[j]));
    sm.add_row(std::move(r));
  }
  return rank(sm);
}

std::vector<std::vector<BigInt>> left_kernel_int(const std::vector<std::vector<long long>>& m) {
  int nr = static_cast<int>(m.size());
  int nc = nr ? static_cast<int>(m[0].size()) : 0;
  // augment each row with an identity tail and row-reduce over Q
  std::vector<std::vector<Rational>> a(nr, std::vector<Rational>(nc + nr));
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < nc; ++j) a[i][j] = Rational(m[i][j]);
    a[i][nc + i] = Rational(1);
  }
  int row = 0;
  for (int col = 0; col < nc && row < nr; ++col) {
    int p = -1;
    for (int r = row; r < nr; ++r)
      if (!a[r][col].is_zero()) {
        p = r;
        break;
      }
    if (p < 0) continue;
    std::swap(a[p], a[row]);
    for (int r = 0; r < nr; ++r) {
      if (r == row || a[r][col].is_zero()) continue;
      Rational f = a[r][col] / a[row][col];
      for (int j = col; j < nc + nr; ++j) a[r][j] -= f * a[row][j];
    }
    ++row;
  }
  std::vector<std::vector<BigInt>> kernel;
  for (int r = row; r < nr; ++r) {
    // left part is zero; the tail is a left-kernel vector. Clear denominators.
    BigInt lcm_den = 1;
    for (int j = 0; j < nr; ++j) {
      const BigInt& d = a[r][nc + j].den();
      lcm_den = lcm_den / boost::multiprecision::gcd(lcm_den, d) * d;
    }
    std::vector<BigInt> v(nr);
    for (int j = 0; j < nr; ++j) v[j] = a[r][nc + j].num() * (lcm_den / a[r][nc + j].den());
    kernel.push_back(std::move(v));
  }
  return kernel;
}

std::optional<std::vector<Rational>> solve_dense(std::vector<std::vector<Rational>> a,
                                                 std::vector<Rational> b) {
  int nr = static_cast<int>(a.size());
  int nc = nr ? static_cast<int>(a[0].size()) : 0;
  std::vector<int> pivot_col_of_row;
  int row = 0;
  for (int col = 0; col < nc && row < nr; ++col) {
    int p = -1;
    for (int r = row; r < nr; ++r)
      if (!a[r][col].is_zero()) {
        p = r;
        break;
      }
    if (p < 0) continue;
    std::swap(a[p], a[row]);
    std::swap(b[p], b[row]);
    for (int r = 0; r < nr; ++r) {
      if (r == row || a[r][col].is_zero()) continue;
      Rational f = a[r][col] / a[row][col];
      for (int j = col; j < nc; ++j) a[r][j] -= f * a[row][j];
      b[r] -= f * b[row];
    }
    pivot_col_of_row.push_back(col);
    ++row;
  }
  for (int r = row; r < nr; ++r)
    if (!b[r].is_zero()) return std::nullopt;
  std::vector<Rational> x(nc, Rational(0));
  for (int r = 0; r < row; ++r) x[pivot_col_of_row[r]] = b[r] / a[r][pivot_col_of_row[r]];
  return x;
}

}  // namespace linalg
