#ifndef HOMFORMAL_TEST_HELPERS_HPP
#define HOMFORMAL_TEST_HELPERS_HPP

#include <random>
#include <vector>

#include "homformal/linalg.hpp"
#include "homformal/polynomial.hpp"

namespace testhelpers {

using exactpoly::Monomial;
using exactpoly::Polynomial;
using exactpoly::Rational;

// Independent bounded-degree membership oracle: p lies in (g_1..g_k) iff
// p = sum c_i * m_i * g_i with monomial multipliers m_i of matching degree.
// For homogeneous input this is a complete test, by plain linear algebra over
// the degree-(deg p) slice. Deliberately ignorant of Groebner machinery.
inline bool membership_oracle(const Polynomial& p, const std::vector<Polynomial>& gens) {
  if (p.is_zero()) return true;
  int nvars = p.var_count();
  int target = p.degree() / 2;  // exponent-sum degree

  // enumerate monomials of a given exponent-sum
  std::vector<Monomial> cols_monos;
  std::vector<std::vector<Rational>> products;  // dense coefficient columns later

  std::vector<Monomial> degree_monos;
  {
    Monomial cur(nvars);
    std::function<void(int, int)> rec = [&](int var, int left) {
      if (var == nvars - 1) {
        cur.exps[var] = static_cast<std::uint16_t>(left);
        degree_monos.push_back(cur);
        return;
      }
      for (int e = 0; e <= left; ++e) {
        cur.exps[var] = static_cast<std::uint16_t>(e);
        rec(var + 1, left - e);
      }
    };
    if (nvars == 0) return false;  // nonzero constant in 0 vars: not in any proper ideal
    rec(0, target);
  }
  auto mono_index = [&](const Monomial& m) -> int {
    for (size_t i = 0; i < degree_monos.size(); ++i)
      if (degree_monos[i] == m) return static_cast<int>(i);
    return -1;
  };

  // columns: for each generator and each multiplier monomial, the product
  std::vector<std::vector<Rational>> a(degree_monos.size());
  for (auto& row : a) row.clear();
  std::vector<std::vector<Rational>> cols;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    int gd = g.degree() / 2;
    if (gd > target) continue;
    // multipliers of degree target - gd
    std::vector<Monomial> mult;
    Monomial cur(nvars);
    std::function<void(int, int)> rec = [&](int var, int left) {
      if (var == nvars - 1) {
        cur.exps[var] = static_cast<std::uint16_t>(left);
        mult.push_back(cur);
        return;
      }
      for (int e = 0; e <= left; ++e) {
        cur.exps[var] = static_cast<std::uint16_t>(e);
        rec(var + 1, left - e);
      }
    };
    rec(0, target - gd);
    for (const auto& m : mult) {
      std::vector<Rational> col(degree_monos.size(), Rational(0));
      Polynomial prod = g.times_monomial(m, Rational(1));
      for (const auto& t : prod.terms()) col[mono_index(t.mono)] = t.coef;
      cols.push_back(std::move(col));
    }
  }
  // matrix with columns `cols`, right-hand side p
  std::vector<std::vector<Rational>> mat(degree_monos.size(),
                                         std::vector<Rational>(cols.size(), Rational(0)));
  for (size_t j = 0; j < cols.size(); ++j)
    for (size_t i = 0; i < degree_monos.size(); ++i) mat[i][j] = cols[j][i];
  std::vector<Rational> rhs(degree_monos.size(), Rational(0));
  for (const auto& t : p.terms()) rhs[mono_index(t.mono)] = t.coef;
  return linalg::solve_dense(std::move(mat), std::move(rhs)).has_value();
}

// deterministic random homogeneous polynomial
inline Polynomial random_homogeneous(std::mt19937_64& rng, int nvars, int exp_degree,
                                     int max_terms) {
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::vector<exactpoly::Term> ts;
  int count = nterms(rng);
  for (int t = 0; t < count; ++t) {
    Monomial m(nvars);
    int left = exp_degree;
    for (int v = 0; v < nvars - 1; ++v) {
      std::uniform_int_distribution<int> pick(0, left);
      int e = pick(rng);
      m.exps[v] = static_cast<std::uint16_t>(e);
      left -= e;
    }
    m.exps[nvars - 1] = static_cast<std::uint16_t>(left);
    int c = coef(rng);
    if (c == 0) c = 1;
    ts.push_back({m, Rational(c)});
  }
  return Polynomial::from_terms(nvars, std::move(ts));
}

}  // namespace testhelpers

#endif
