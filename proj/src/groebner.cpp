#include "homformal/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace groebner {

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  if (permutation.empty()) return exactpoly::grevlex_cmp(a, b);
  Monomial pa(a.var_count()), pb(b.var_count());
  for (int i = 0; i < a.var_count(); ++i) {
    pa.exps[permutation[i]] = a.exps[i];
    pb.exps[permutation[i]] = b.exps[i];
  }
  return exactpoly::grevlex_cmp(pa, pb);
}

namespace {

const Monomial& lead(const Polynomial& p) { return p.leading_term().mono; }

// full reduction of p modulo the (not necessarily complete) basis
Polynomial reduce_full(Polynomial p, const std::vector<Polynomial>& basis) {
  int nvars = p.var_count();
  std::vector<exactpoly::Term> remainder;
  auto divisor_of = [&](const Monomial& m) -> const Polynomial* {
    for (const auto& g : basis)
      if (!g.is_zero() && lead(g).divides(m)) return &g;
    return nullptr;
  };
  while (!p.is_zero()) {
    const auto& ts = p.terms();
    // move the maximal irreducible prefix to the remainder in one scan
    size_t k = 0;
    const Polynomial* g = nullptr;
    while (k < ts.size() && !(g = divisor_of(ts[k].mono))) ++k;
    if (k > 0) {
      std::vector<exactpoly::Term> all = p.release_terms();
      std::vector<exactpoly::Term> rest;
      rest.reserve(all.size() - k);
      for (size_t i = 0; i < k; ++i) remainder.push_back(std::move(all[i]));
      for (size_t i = k; i < all.size(); ++i) rest.push_back(std::move(all[i]));
      p = Polynomial::from_sorted_terms(nvars, std::move(rest));
      continue;
    }
    const auto& lt = p.leading_term();
    Monomial q = lt.mono.quotient(lead(*g));
    Rational f = lt.coef / g->leading_term().coef;
    p = p - g->times_monomial(q, f);
  }
  return Polynomial::from_sorted_terms(nvars, std::move(remainder));
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  Monomial l = lead(f).lcm(lead(g));
  Polynomial a = f.times_monomial(l.quotient(lead(f)), f.leading_term().coef.inverse());
  Polynomial b = g.times_monomial(l.quotient(lead(g)), g.leading_term().coef.inverse());
  return a - b;
}

}  // namespace

GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const MonomialOrder& order) {
  if (!order.permutation.empty())
    throw std::invalid_argument("buchberger: only the fixed grevlex order is supported");

  int nvars = -1;
  std::vector<Polynomial> basis;
  for (const auto& g : gens) {
    if (nvars < 0) nvars = g.var_count();
    if (g.var_count() != nvars)
      throw std::invalid_argument("buchberger: generators must share a variable count");
    if (!g.is_homogeneous())
      throw std::invalid_argument("buchberger: generators must be homogeneous");
    if (!g.is_zero()) basis.push_back(g.monic());
  }
  GroebnerBasis result;
  result.order = order;
  result.source_ideal = gens;
  result.var_count = std::max(nvars, 0);
  if (basis.empty()) return result;

  // pair queue keyed by (lcm degree, i, j); processed set for the chain criterion
  struct PairKey {
    int deg, i, j;
    bool operator<(const PairKey& o) const {
      if (deg != o.deg) return deg < o.deg;
      if (i != o.i) return i < o.i;
      return j < o.j;
    }
  };
  std::set<PairKey> queue;
  std::set<std::pair<int, int>> handled;
  auto push_pairs_for = [&](int k) {
    for (int i = 0; i < k; ++i) {
      Monomial l = lead(basis[i]).lcm(lead(basis[k]));
      queue.insert({l.total_exponent(), i, k});
    }
  };
  for (int k = 0; k < static_cast<int>(basis.size()); ++k) push_pairs_for(k);

  auto treated = [&](int i, int j) {
    if (i > j) std::swap(i, j);
    return handled.count({i, j}) > 0 || queue.count({lead(basis[i]).lcm(lead(basis[j])).total_exponent(), i, j}) == 0;
  };

  while (!queue.empty()) {
    auto [deg, i, j] = *queue.begin();
    queue.erase(queue.begin());
    handled.insert({i, j});

    const Monomial li = lead(basis[i]);
    const Monomial lj = lead(basis[j]);
    if (li.coprime(lj)) continue;  // product criterion
    Monomial l = li.lcm(lj);
    // chain criterion: some k with LT(k) | lcm and both pairs already handled
    bool skip = false;
    for (int k = 0; k < static_cast<int>(basis.size()) && !skip; ++k) {
      if (k == i || k == j) continue;
      if (lead(basis[k]).divides(l) && treated(i, k) && treated(j, k)) skip = true;
    }
    if (skip) continue;

    Polynomial s = reduce_full(s_polynomial(basis[i], basis[j]), basis);
    if (s.is_zero()) continue;
    basis.push_back(s.monic());
    push_pairs_for(static_cast<int>(basis.size()) - 1);
  }

  // autoreduce: keep only elements whose leads are minimal, then fully reduce tails
  std::vector<Polynomial> minimal;
  for (size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      if (lead(basis[j]).divides(lead(basis[i]))) {
        // ties (equal leads) keep the earlier one
        if (!(lead(basis[j]) == lead(basis[i])) || j < i) redundant = true;
      }
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  std::vector<Polynomial> reduced;
  for (size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Polynomial r = reduce_full(minimal[i], others);
    if (!r.is_zero()) reduced.push_back(r.monic());
  }
  std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
    return result.order.less(lead(a), lead(b));
  });
  result.generators = std::move(reduced);
  return result;
}

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb) {
  if (!gb.generators.empty() && p.var_count() != gb.var_count)
    throw std::invalid_argument("normal_form: variable-count mismatch");
  return reduce_full(p, gb.generators);
}

bool MembershipCertificate::verify(const Polynomial& p) const {
  if (!verify_basis(basis)) return false;
  Polynomial r = normal_form(p, basis);
  if (!(r == remainder)) return false;
  return member == r.is_zero();
}

MembershipCertificate ideal_member(const Polynomial& p, const std::vector<Polynomial>& gens) {
  if (!p.is_homogeneous()) throw std::invalid_argument("ideal_member: inhomogeneous query");
  MembershipCertificate cert;
  cert.basis = buchberger(gens);
  cert.remainder = normal_form(p, cert.basis);
  cert.member = cert.remainder.is_zero();
  return cert;
}

bool is_zero_dimensional(const GroebnerBasis& gb) {
  if (gb.var_count == 0) return true;
  // constants in the basis mean the whole ring, which is zero-dimensional too
  for (const auto& g : gb.generators)
    if (lead(g).is_constant()) return true;
  for (int v = 0; v < gb.var_count; ++v) {
    bool found = false;
    for (const auto& g : gb.generators) {
      const Monomial& m = lead(g);
      bool pure = m.exps[v] > 0;
      for (int w = 0; w < gb.var_count && pure; ++w)
        if (w != v && m.exps[w] > 0) pure = false;
      if (pure) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

namespace {

// Hilbert numerator of a monomial ideal in the polynomial-degree variable t:
// N(t) with Hilb(R/I) = N(t)/(1-t)^n. Computed by the standard pivot
// recursion N(I) = N(I + (x)) + t * N(I : x).
std::vector<BigInt> poly_mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  std::vector<BigInt> c(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

std::vector<Monomial> minimalize(std::vector<Monomial> gens) {
  std::vector<Monomial> out;
  for (size_t i = 0; i < gens.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < gens.size() && !redundant; ++j) {
      if (i == j) continue;
      if (gens[j].divides(gens[i]) && !(gens[j] == gens[i] && j > i)) redundant = true;
    }
    if (!redundant) out.push_back(gens[i]);
  }
  return out;
}

std::vector<BigInt> hilbert_numerator(std::vector<Monomial> gens) {
  gens = minimalize(std::move(gens));
  if (gens.empty()) return {BigInt(1)};
  if (!gens[0].total_exponent()) return {BigInt(0)};  // contains 1

  // if all generators are powers of distinct single variables: product formula
  bool simple = true;
  std::set<int> used;
  for (const auto& g : gens) {
    int nz = -1;
    for (int i = 0; i < g.var_count() && simple; ++i)
      if (g.exps[i]) {
        if (nz >= 0)
          simple = false;
        else
          nz = i;
      }
    if (!simple || used.count(nz)) {
      simple = false;
      break;
    }
    used.insert(nz);
  }
  if (simple) {
    std::vector<BigInt> num{BigInt(1)};
    for (const auto& g : gens) {
      std::vector<BigInt> f(g.total_exponent() + 1);
      f[0] = 1;
      f[g.total_exponent()] = -1;
      num = poly_mul(num, f);
    }
    return num;
  }

  // pivot: a variable occurring in a non-pure generator
  int pivot = -1;
  for (const auto& g : gens) {
    int cnt = 0, last = -1;
    for (int i = 0; i < g.var_count(); ++i)
      if (g.exps[i]) {
        ++cnt;
        last = i;
      }
    if (cnt >= 2) {
      pivot = last;
      break;
    }
  }

  // I + (x)
  std::vector<Monomial> plus;
  Monomial x(gens[0].var_count());
  x.exps[pivot] = 1;
  plus.push_back(x);
  for (const auto& g : gens)
    if (!g.exps[pivot]) plus.push_back(g);
  // I : x
  std::vector<Monomial> colon;
  for (const auto& g : gens) {
    Monomial h = g;
    if (h.exps[pivot]) h.exps[pivot] -= 1;
    colon.push_back(h);
  }
  auto a = hilbert_numerator(std::move(plus));
  auto b = hilbert_numerator(std::move(colon));
  std::vector<BigInt> out(std::max(a.size(), b.size() + 1));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i + 1] += b[i];
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

std::vector<Monomial> leading_monomials(const GroebnerBasis& gb) {
  std::vector<Monomial> lt;
  lt.reserve(gb.generators.size());
  for (const auto& g : gb.generators) lt.push_back(lead(g));
  return lt;
}

// coefficients of N(t)/(1-t)^n up to degree bound (inclusive)
std::vector<BigInt> series_coeffs(const std::vector<BigInt>& num, int nvars, int bound) {
  std::vector<BigInt> c(bound + 1);
  for (size_t i = 0; i < num.size() && i <= static_cast<size_t>(bound); ++i) c[i] = num[i];
  for (int k = 0; k < nvars; ++k)
    for (int i = 1; i <= bound; ++i) c[i] += c[i - 1];
  return c;
}

}  // namespace

std::optional<BigInt> staircase_dimension(const GroebnerBasis& gb) {
  if (!is_zero_dimensional(gb)) return std::nullopt;
  if (gb.var_count == 0) {
    for (const auto& g : gb.generators)
      if (!g.is_zero()) return BigInt(0);
    return BigInt(1);
  }
  auto num = hilbert_numerator(leading_monomials(gb));
  // zero-dimensional: (1-t)^n divides N; the quotient's value at t=1 is the count.
  // Evaluate by repeated synthetic division at t=1.
  std::vector<BigInt> cur = num;
  for (int k = 0; k < gb.var_count; ++k) {
    // divide by (1-t): s_i = sum_{j<=i} c_j must terminate with zero remainder
    std::vector<BigInt> s(cur.size());
    BigInt acc = 0;
    for (size_t i = 0; i < cur.size(); ++i) {
      acc += cur[i];
      s[i] = acc;
    }
    if (s.empty() || s.back() != 0)
      throw std::logic_error("staircase_dimension: numerator not divisible");
    s.pop_back();
    cur = std::move(s);
  }
  BigInt total = 0;
  for (const auto& c : cur) total += c;
  return total;
}

std::vector<BigInt> hilbert_series(const GroebnerBasis& gb, int max_degree) {
  if (max_degree < 0) return {};
  std::vector<BigInt> out(max_degree + 1);
  int tbound = max_degree / 2;
  std::vector<BigInt> c;
  if (gb.var_count == 0) {
    bool zero_ideal = true;
    for (const auto& g : gb.generators)
      if (!g.is_zero()) zero_ideal = false;
    c.assign(tbound + 1, BigInt(0));
    if (!c.empty()) c[0] = zero_ideal ? 1 : 0;
  } else {
    c = series_coeffs(hilbert_numerator(leading_monomials(gb)), gb.var_count, tbound);
  }
  for (int i = 0; i <= tbound; ++i) out[2 * i] = c[i];
  return out;
}

bool is_regular_system(const std::vector<Polynomial>& polys) {
  if (polys.empty()) return true;  // zero variables, zero polynomials
  int nvars = polys[0].var_count();
  for (const auto& p : polys) {
    if (p.var_count() != nvars)
      throw std::invalid_argument("is_regular_system: variable-count mismatch");
    if (!p.is_homogeneous())
      throw std::invalid_argument("is_regular_system: inhomogeneous input");
  }
  if (static_cast<int>(polys.size()) != nvars)
    throw std::invalid_argument(
        "is_regular_system: length must equal the variable count");
  return is_zero_dimensional(buchberger(polys));
}

bool verify_basis(const GroebnerBasis& gb) {
  const auto& g = gb.generators;
  for (size_t i = 0; i < g.size(); ++i)
    for (size_t j = i + 1; j < g.size(); ++j)
      if (!normal_form(s_polynomial(g[i], g[j]), gb).is_zero()) return false;
  for (const auto& src : gb.source_ideal)
    if (!normal_form(src, gb).is_zero()) return false;
  return true;
}

}  // namespace groebner
