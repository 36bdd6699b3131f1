#include "homformal/cartanmodel.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "homformal/linalg.hpp"

namespace cartanmodel {

using exactpoly::IntMatrix;
using exactpoly::Monomial;
using exactpoly::Term;

std::string route_name(Route r) {
  switch (r) {
    case Route::EqualRank: return "equal-rank";
    case Route::SplittingTheorem: return "splitting+theorem";
    case Route::SplittingCor01: return "splitting+cor01";
    case Route::FreeCohomologyCor02: return "free-cohomology-cor02";
    case Route::SharedTorusTransfer: return "shared-torus-transfer";
    case Route::DegreeReasoning: return "degree-reasoning";
    case Route::ProductReduction: return "product-reduction";
  }
  return "?";
}

std::string status_name(Status s) {
  switch (s) {
    case Status::Yes: return "yes";
    case Status::NoWitnessFound: return "no-witness-found";
    case Status::NotApplicable: return "not-applicable";
  }
  return "?";
}

// ----------------------------------------------------------- build_model

CartanModel build_model(const GroupDatum& g, const GroupDatum& k, const TorusMap& emb) {
  if (!g.explicit_mode)
    throw std::invalid_argument("build_model: '" + g.label +
                                "' is degree-only; use the degree-reasoning check");
  if (emb.source_rank() != g.ambient_rank || emb.target_rank() != k.ambient_rank)
    throw std::invalid_argument("build_model: rank inconsistency between '" + g.label +
                                "', '" + k.label + "' and the embedding");
  if (g.rank < k.rank)
    throw std::invalid_argument("build_model: subgroup rank exceeds group rank");

  // fold the subgroup's trace relations into the map, then check that the
  // source's own trace relations are respected
  TorusMap reduced = liegroups::reduce_target(emb, k);
  for (const auto& c : g.constraints) {
    for (int j = 0; j < k.rank; ++j) {
      long long sum = 0;
      for (int i : c.indices) sum += reduced.matrix[i][j];
      if (sum != 0)
        throw std::invalid_argument("build_model: embedding violates the trace relation of " +
                                    g.label);
    }
  }
  if (k.rank > 0 && linalg::rank_int(reduced.matrix) != k.rank)
    throw std::invalid_argument("build_model: subgroup torus does not embed (rank drop)");

  // rows of the reduced map at the source's reduced coordinates
  IntMatrix rows;
  {
    std::vector<bool> eliminated(g.ambient_rank, false);
    for (const auto& c : g.constraints) eliminated[c.eliminated] = true;
    for (int i = 0; i < g.ambient_rank; ++i)
      if (!eliminated[i]) rows.push_back(reduced.matrix[i]);
  }

  CartanModel m;
  m.base = k;
  m.total_label = g.label;
  m.corank = g.rank - k.rank;
  m.formal_dimension = g.dimension() - k.dimension();
  for (size_t j = 0; j < g.invariant_generators.size(); ++j) {
    m.images.push_back(exactpoly::substitute_linear(g.invariant_generators[j], rows));
    m.fiber_degrees.push_back(g.generator_degrees[j] - 1);
    if (!m.images.back().is_zero() && m.images.back().degree() != g.generator_degrees[j])
      throw std::logic_error("build_model: restriction changed the degree");
  }

  // spot-check Weyl(K) invariance of the images with a few legal elements
  auto spot_elements = [&]() {
    std::vector<liegroups::WeylElement> ws;
    liegroups::WeylElement w;
    w.perm.resize(k.ambient_rank);
    std::iota(w.perm.begin(), w.perm.end(), 0);
    w.sign.assign(k.ambient_rank, 1);
    for (const auto& b : k.weyl_blocks()) {
      auto v = w;
      if (b.type != liegroups::WeylBlockType::Fixed)
        std::reverse(v.perm.begin() + b.offset, v.perm.begin() + b.offset + b.size);
      if (b.type == liegroups::WeylBlockType::AllSigns) v.sign[b.offset] = -1;
      if (b.type == liegroups::WeylBlockType::EvenSigns && b.size >= 2) {
        v.sign[b.offset] = -1;
        v.sign[b.offset + 1] = -1;
      }
      ws.push_back(v);
    }
    return ws;
  };
  if (k.rank > 0) {
    // reduced-coordinate action: section, ambient action, reduction
    std::vector<int> section;  // reduced slot -> ambient index
    {
      std::vector<bool> eliminated(k.ambient_rank, false);
      for (const auto& c : k.constraints) eliminated[c.eliminated] = true;
      for (int i = 0; i < k.ambient_rank; ++i)
        if (!eliminated[i]) section.push_back(i);
    }
    for (const auto& w : spot_elements()) {
      if (!w.legal_for(k)) continue;
      IntMatrix amb = w.substitution();
      IntMatrix red(k.rank, std::vector<long long>(k.rank, 0));
      for (int i = 0; i < k.rank; ++i)
        for (int j = 0; j < k.ambient_rank; ++j)
          if (amb[section[i]][j])
            for (int c2 = 0; c2 < k.rank; ++c2)
              red[i][c2] += amb[section[i]][j] * k.reduction[j][c2];
      for (const auto& psi : m.images)
        if (!(exactpoly::substitute_linear(psi, red) == psi))
          throw std::logic_error("build_model: image is not Weyl-invariant");
    }
  }
  return m;
}

// ------------------------------------------------------- witness pieces

bool SplittingWitness::reverify(const CartanModel& m) const {
  std::vector<Polynomial> regular;
  for (int i : regular_subset) regular.push_back(m.images[i]);
  try {
    if (!groebner::is_regular_system(regular)) return false;
  } catch (const std::exception&) {
    return false;
  }
  std::vector<Polynomial> gens = regular;
  for (size_t t = 0; t < redundant_order.size(); ++t) {
    const Polynomial& psi = m.images[redundant_order[t]];
    if (!certificates[t].verify(psi)) return false;
    if (!certificates[t].member) return false;
    gens.push_back(psi);
  }
  return true;
}

namespace {

// series/polynomial helpers on coefficient vectors indexed by degree
std::vector<BigInt> coeff_mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<BigInt> c(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0) c[i + j] += a[i] * b[j];
  }
  return c;
}

std::vector<BigInt> one_minus_q(int d) {
  std::vector<BigInt> v(d + 1);
  v[0] = 1;
  v[d] = -1;
  return v;
}

std::vector<BigInt> one_plus_q(int d) {
  std::vector<BigInt> v(d + 1);
  v[0] = 1;
  v[d] = 1;
  return v;
}

void trim(std::vector<BigInt>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

// exact division of coefficient polynomials; throws when not exact
std::vector<BigInt> coeff_div(std::vector<BigInt> num, std::vector<BigInt> den) {
  trim(num);
  trim(den);
  if (den.empty()) throw std::domain_error("coeff_div: zero divisor");
  if (num.empty()) return {BigInt(0)};
  if (num.size() < den.size()) throw std::domain_error("coeff_div: not divisible");
  std::vector<BigInt> q(num.size() - den.size() + 1);
  // divide from the bottom: den[0] is 1 for all our denominators
  if (den[0] == 0) throw std::domain_error("coeff_div: zero constant term");
  for (size_t i = 0; i < q.size(); ++i) {
    BigInt c = num[i];
    if (c % den[0] != 0) throw std::domain_error("coeff_div: not divisible");
    q[i] = c / den[0];
    for (size_t j = 0; j < den.size() && i + j < num.size(); ++j) num[i + j] -= q[i] * den[j];
  }
  for (const auto& c : num)
    if (c != 0) throw std::domain_error("coeff_div: nonzero remainder");
  trim(q);
  if (q.empty()) q.push_back(0);
  return q;
}

std::vector<int> sorted_copy(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// all exponent multi-indices alpha with sum(alpha_i * deg_i) == target
void degree_combos(const std::vector<int>& degs, int target, std::vector<int>& cur, size_t pos,
                   const std::function<void(const std::vector<int>&)>& emit) {
  if (target == 0) {
    emit(cur);
    return;
  }
  if (pos >= degs.size()) return;
  for (int e = 0; e * degs[pos] <= target; ++e) {
    cur[pos] = e;
    degree_combos(degs, target - e * degs[pos], cur, pos + 1, emit);
  }
  cur[pos] = 0;
}

SubalgebraExpr solve_subalgebra(const Polynomial& target, const std::vector<Polynomial>& earlier) {
  SubalgebraExpr ex;
  if (target.is_zero()) {
    ex.found = true;
    return ex;
  }
  int d = target.degree();
  std::vector<int> degs;
  for (const auto& e : earlier) degs.push_back(e.degree());

  std::vector<std::vector<int>> combos;
  std::vector<int> cur(earlier.size(), 0);
  degree_combos(degs, d, cur, 0,
                [&](const std::vector<int>& alpha) { combos.push_back(alpha); });
  if (combos.empty()) return ex;

  // products of earlier images per combo, with cached powers
  std::vector<std::vector<Polynomial>> powers(earlier.size());
  auto power = [&](size_t i, int e) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial::constant(target.var_count(), Rational(1)));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * earlier[i]);
    return cache[e];
  };
  std::vector<Polynomial> prods;
  for (const auto& alpha : combos) {
    Polynomial p = Polynomial::constant(target.var_count(), Rational(1));
    for (size_t i = 0; i < alpha.size(); ++i)
      if (alpha[i]) p = p * power(i, alpha[i]);
    prods.push_back(std::move(p));
  }

  // assemble the linear system over the monomials appearing anywhere
  struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
      return exactpoly::grevlex_cmp(a, b) < 0;
    }
  };
  std::map<Monomial, int, MonoLess> index;
  auto note = [&](const Polynomial& p) {
    for (const auto& t : p.terms())
      if (!index.count(t.mono)) {
        int next = static_cast<int>(index.size());
        index[t.mono] = next;
      }
  };
  note(target);
  for (const auto& p : prods) note(p);
  std::vector<std::vector<Rational>> a(index.size(),
                                       std::vector<Rational>(prods.size(), Rational(0)));
  std::vector<Rational> rhs(index.size(), Rational(0));
  for (size_t j = 0; j < prods.size(); ++j)
    for (const auto& t : prods[j].terms()) a[index[t.mono]][j] = t.coef;
  for (const auto& t : target.terms()) rhs[index[t.mono]] = t.coef;

  auto sol = linalg::solve_dense(std::move(a), std::move(rhs));
  if (!sol) return ex;
  ex.found = true;
  for (size_t j = 0; j < combos.size(); ++j)
    if (!(*sol)[j].is_zero()) ex.combo.emplace_back(combos[j], (*sol)[j]);
  return ex;
}

}  // namespace

// --------------------------------------------------------- find_splitting

std::optional<SplittingWitness> find_splitting(const CartanModel& m, const Budget& budget) {
  const int r = m.base.rank;
  const int n = static_cast<int>(m.images.size());
  if (r > n) return std::nullopt;

  std::vector<int> base_degrees = sorted_copy(m.base.generator_degrees);
  BigInt base_degree_product = 1;
  for (int e : m.base.generator_degrees) base_degree_product *= e;

  // subsets of size r in lexicographic order, degree-matched ones first
  std::vector<std::vector<int>> matched, rest;
  std::vector<int> idx(r);
  std::iota(idx.begin(), idx.end(), 0);
  auto push_subset = [&](const std::vector<int>& s) {
    std::vector<int> degs;
    BigInt prod = 1;
    for (int i : s) {
      if (m.images[i].is_zero() && r > 0) return;  // a zero can never be regular
      degs.push_back(m.image_degree(i));
      prod *= m.image_degree(i);
    }
    // the elliptic Euler characteristic prod(d)/prod(e) must be a positive integer
    if (r > 0 && prod % base_degree_product != 0) return;
    if (sorted_copy(degs) == base_degrees)
      matched.push_back(s);
    else
      rest.push_back(s);
  };
  if (r == 0) {
    matched.push_back({});
  } else {
    while (true) {
      push_subset(idx);
      int pos = r - 1;
      while (pos >= 0 && idx[pos] == n - r + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int i = pos + 1; i < r; ++i) idx[i] = idx[i - 1] + 1;
    }
  }

  auto try_subset = [&](const std::vector<int>& s) -> std::optional<SplittingWitness> {
    std::vector<Polynomial> regular;
    for (int i : s) regular.push_back(m.images[i]);
    auto gb = groebner::buchberger(regular);
    if (!groebner::is_zero_dimensional(gb)) return std::nullopt;

    SplittingWitness w;
    w.regular_subset = s;
    w.regular_basis = gb;

    std::vector<int> leftovers;
    for (int i = 0; i < n; ++i)
      if (std::find(s.begin(), s.end(), i) == s.end()) leftovers.push_back(i);
    // lower degrees first; index as the tie break
    std::stable_sort(leftovers.begin(), leftovers.end(), [&](int a, int b) {
      return m.image_degree(a) < m.image_degree(b);
    });

    std::vector<Polynomial> gens = regular;
    std::vector<Polynomial> earlier = regular;  // for subalgebra lifts
    std::vector<bool> done(leftovers.size(), false);
    size_t remaining = leftovers.size();
    bool progress = true;
    while (remaining && progress) {
      progress = false;
      for (size_t t = 0; t < leftovers.size(); ++t) {
        if (done[t]) continue;
        if (budget.expired()) return std::nullopt;
        const Polynomial& psi = m.images[leftovers[t]];
        auto cert = groebner::ideal_member(psi, gens);
        if (!cert.member) continue;
        w.redundant_order.push_back(leftovers[t]);
        w.certificates.push_back(std::move(cert));
        w.lifts.push_back(solve_subalgebra(psi, earlier));
        gens.push_back(psi);
        earlier.push_back(psi);
        done[t] = true;
        --remaining;
        progress = true;
      }
    }
    if (remaining) return std::nullopt;
    return w;
  };

  for (const auto& bucket : {std::cref(matched), std::cref(rest)}) {
    for (const auto& s : bucket.get()) {
      if (budget.expired()) return std::nullopt;
      if (auto w = try_subset(s)) return w;
    }
  }
  return std::nullopt;
}

// --------------------------------------------------------- check_formality

Verdict check_formality(const CartanModel& m, const Budget& budget) {
  Verdict v;
  bool expired_before = budget.expired();
  auto w = find_splitting(m, budget);
  if (!w) {
    v.formal = Status::NoWitnessFound;
    v.notes.push_back(expired_before || budget.expired() ? "splitting search hit the time budget"
                                                         : "splitting search exhausted");
    return v;
  }

  // elliptic Poincare polynomial prod(1-q^{d_j}) / prod(1-q^{e_i})
  std::vector<BigInt> num{BigInt(1)};
  for (int j : w->regular_subset) num = coeff_mul(num, one_minus_q(m.image_degree(j)));
  std::vector<BigInt> den{BigInt(1)};
  for (int e : m.base.generator_degrees) den = coeff_mul(den, one_minus_q(e));
  v.elliptic_poincare = coeff_div(num, den);

  // cross-check against the torus-level staircase: the torus ring is free of
  // rank |W| over the invariant ring, so
  //   hilbert * (1-q^2)^rank == elliptic * prod(1-q^{e_i})
  {
    int hdeg = 0;
    for (int j : w->regular_subset) hdeg += m.image_degree(j);
    hdeg = std::max(hdeg - 2 * m.base.rank, 0);
    auto series = groebner::hilbert_series(w->regular_basis, hdeg);
    std::vector<BigInt> lhs = series;
    for (int i = 0; i < m.base.rank; ++i) lhs = coeff_mul(lhs, one_minus_q(2));
    std::vector<BigInt> rhs = v.elliptic_poincare;
    for (int e : m.base.generator_degrees) rhs = coeff_mul(rhs, one_minus_q(e));
    trim(lhs);
    trim(rhs);
    if (lhs != rhs) throw std::logic_error("check_formality: staircase series mismatch");

    auto dim = groebner::staircase_dimension(w->regular_basis);
    BigInt expect = 1;
    for (int j : w->regular_subset) expect *= BigInt(m.image_degree(j) / 2);
    if (!dim || *dim != expect)
      throw std::logic_error("check_formality: staircase dimension mismatch");
  }

  v.poincare = v.elliptic_poincare;
  for (size_t t = 0; t < w->redundant_order.size(); ++t)
    v.poincare = coeff_mul(v.poincare, one_plus_q(m.fiber_degrees[w->redundant_order[t]]));
  trim(v.poincare);

  v.formal = Status::Yes;
  v.witness = std::move(*w);
  return v;
}

// -------------------------------------------- equivariant formality routes

namespace {

// psi(u) - psi(w) in the doubled ring
Polynomial doubled_difference(const Polynomial& psi, int r) {
  IntMatrix to_u(r, std::vector<long long>(2 * r, 0));
  IntMatrix to_w(r, std::vector<long long>(2 * r, 0));
  for (int i = 0; i < r; ++i) {
    to_u[i][i] = 1;
    to_w[i][r + i] = 1;
  }
  return exactpoly::substitute_linear(psi, to_u) - exactpoly::substitute_linear(psi, to_w);
}

}  // namespace

Verdict check_equivariant_formality(const CartanModel& m, const Verdict& formality,
                                    const Budget& budget) {
  Verdict v = formality;
  if (v.formal != Status::Yes || !v.witness) {
    v.equivariantly_formal = Status::NotApplicable;
    if (!v.witness) v.notes.push_back("equivariant check needs a splitting witness");
    return v;
  }
  const SplittingWitness& w = *v.witness;

  if (m.corank == 0) {
    v.route = Route::EqualRank;
    v.equivariantly_formal = Status::Yes;
    return v;
  }

  bool all_zero = true;
  for (int j : w.redundant_order)
    if (!m.images[j].is_zero()) all_zero = false;

  if (all_zero) {
    // kernel dimension equals the corank; the leftover generators are closed
    // already on the Borel model
    v.route = Route::SplittingTheorem;
    v.equivariantly_formal = Status::Yes;
    return v;
  }

  bool free_cohomology =
      v.elliptic_poincare.size() == 1 && v.elliptic_poincare[0] == 1;

  // nonzero redundant images need a closed lift on the Borel model: a
  // constant-coefficient expression in earlier images telescopes; otherwise
  // fall back to membership in the doubled-ring difference ideal
  std::vector<Polynomial> earlier_diffs;
  for (int j : w.regular_subset) earlier_diffs.push_back(doubled_difference(m.images[j], m.base.rank));
  bool certified = true;
  for (size_t t = 0; t < w.redundant_order.size() && certified; ++t) {
    const Polynomial& psi = m.images[w.redundant_order[t]];
    if (psi.is_zero() || w.lifts[t].found) {
      earlier_diffs.push_back(doubled_difference(psi, m.base.rank));
      continue;
    }
    if (budget.expired()) {
      certified = false;
      v.notes.push_back("equivariant certification hit the time budget");
      break;
    }
    auto cert = groebner::ideal_member(doubled_difference(psi, m.base.rank), earlier_diffs);
    if (!cert.member) {
      certified = false;
      v.notes.push_back("no closed Borel lift found for a redundant generator");
      break;
    }
    v.notes.push_back("redundant image lifted via the doubled-ring difference ideal");
    earlier_diffs.push_back(doubled_difference(psi, m.base.rank));
  }

  if (!certified) {
    v.route = free_cohomology ? Route::FreeCohomologyCor02 : Route::SplittingCor01;
    v.equivariantly_formal = Status::NoWitnessFound;
    return v;
  }
  v.route = free_cohomology ? Route::FreeCohomologyCor02 : Route::SplittingCor01;
  v.equivariantly_formal = Status::Yes;
  return v;
}

Verdict decide(const CartanModel& m, const Budget& budget) {
  Verdict f = check_formality(m, budget);
  if (f.formal != Status::Yes) return f;
  return check_equivariant_formality(m, f, budget);
}

// --------------------------------------------------------- degree reasoning

Verdict degree_reasoning_check(const std::vector<int>& g_degrees,
                               const std::vector<int>& k_degrees, const DegreeFacts& facts) {
  Verdict v;
  v.route = Route::DegreeReasoning;
  const int nk = static_cast<int>(k_degrees.size());
  const int ng = static_cast<int>(g_degrees.size());
  if (nk > ng) {
    v.formal = Status::NotApplicable;
    v.notes.push_back("subgroup rank exceeds group rank");
    return v;
  }

  // K generators processed in descending degree (ties by index)
  std::vector<int> order(nk);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return k_degrees[a] > k_degrees[b]; });

  bool g_has_deg4 = std::find(g_degrees.begin(), g_degrees.end(), 4) != g_degrees.end();

  std::vector<DegreeCandidate> candidates;
  std::vector<int> assigned_g(nk, -1), power(nk, 0);
  std::vector<bool> used(ng, false);

  std::function<void(int)> rec = [&](int pos) {
    if (pos == nk) {
      DegreeCandidate c;
      c.assignment.resize(nk);
      for (int i = 0; i < nk; ++i) c.assignment[i] = {assigned_g[i], power[i]};
      for (int i = 0; i < nk; ++i) {
        if (power[i] >= 2) {
          c.elliptic_pairs.emplace_back(k_degrees[i], power[i]);
          c.euler *= power[i];
        }
      }
      std::sort(c.elliptic_pairs.begin(), c.elliptic_pairs.end());
      for (int j = 0; j < ng; ++j)
        if (!used[j]) c.sphere_fiber_degrees.push_back(g_degrees[j] - 1);
      std::sort(c.sphere_fiber_degrees.begin(), c.sphere_fiber_degrees.end());
      candidates.push_back(std::move(c));
      return;
    }
    int ki = order[pos];
    int e = k_degrees[ki];
    for (int j = 0; j < ng; ++j) {
      if (used[j]) continue;
      if (g_degrees[j] % e != 0) continue;
      int k = g_degrees[j] / e;
      if (k < 1) continue;
      if (facts.killing_form && e == 4 && g_has_deg4 && k != 1) continue;
      bool forced_ok = true;
      for (const auto& [ke, ge] : facts.forced)
        if (ke == e && g_degrees[j] != ge) forced_ok = false;
      if (!forced_ok) continue;
      used[j] = true;
      assigned_g[ki] = j;
      power[ki] = k;
      rec(pos + 1);
      used[j] = false;
    }
  };
  rec(0);

  if (candidates.empty()) {
    v.formal = Status::NoWitnessFound;
    v.notes.push_back("no consistent pure-power assignment");
    return v;
  }

  // leftovers must be forced to zero by degrees: no decomposable monomial in
  // the surviving base variables may reach a leftover's degree
  for (auto& c : candidates) {
    std::vector<int> surviving;  // degrees of K vars that do not cancel
    for (const auto& [e, k] : c.elliptic_pairs) surviving.push_back(e);
    for (int fd : c.sphere_fiber_degrees) {
      int d = fd + 1;
      bool decomposable = false;
      std::vector<int> cur(surviving.size(), 0);
      degree_combos(surviving, d, cur, 0, [&](const std::vector<int>& alpha) {
        int total = 0;
        for (int a : alpha) total += a;
        if (total >= 2) decomposable = true;
      });
      if (decomposable) {
        v.formal = Status::NoWitnessFound;
        v.notes.push_back("a leftover generator of degree " + std::to_string(d) +
                          " admits a decomposable image; degrees alone cannot decide");
        return v;
      }
    }
    // candidate Poincare polynomial: truncated power ring times odd spheres
    std::vector<BigInt> p{BigInt(1)};
    for (const auto& [e, k] : c.elliptic_pairs) {
      std::vector<BigInt> f(e * (k - 1) + 1);
      for (int j = 0; j < k; ++j) f[e * j] = 1;
      p = coeff_mul(p, f);
    }
    for (int fd : c.sphere_fiber_degrees) p = coeff_mul(p, one_plus_q(fd));
    trim(p);
    c.poincare = std::move(p);
  }

  v.candidates = std::move(candidates);
  v.formal = Status::Yes;
  v.equivariantly_formal = Status::Yes;
  bool same = true;
  for (const auto& c : v.candidates)
    if (c.poincare != v.candidates[0].poincare) same = false;
  if (same) v.poincare = v.candidates[0].poincare;
  return v;
}

// ------------------------------------------------------------- Borel model

BorelModel build_borel_model(const CartanModel& m) {
  BorelModel b;
  b.base_vars = m.base.rank;
  b.fiber_degrees = m.fiber_degrees;
  for (const auto& psi : m.images)
    b.differentials.push_back(doubled_difference(psi, m.base.rank));
  return b;
}

std::vector<Polynomial> images_in_invariants(const CartanModel& m) {
  const auto& gens = m.base.invariant_generators;
  const int r = m.base.rank;
  std::vector<std::vector<Polynomial>> powers(gens.size());
  auto power = [&](size_t i, int e) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial::constant(r, Rational(1)));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * gens[i]);
    return cache[e];
  };

  // exponent decomposition of a monomial over the generator leading terms
  std::vector<Monomial> leads;
  for (const auto& g : gens) leads.push_back(g.leading_term().mono);
  std::function<bool(Monomial, size_t, std::vector<int>&)> decompose =
      [&](Monomial target, size_t i, std::vector<int>& out) -> bool {
    if (target.total_exponent() == 0) return true;
    if (i >= leads.size()) return false;
    int max_e = 0;
    {
      Monomial t = target;
      while (leads[i].divides(t)) {
        t = t.quotient(leads[i]);
        ++max_e;
      }
    }
    for (int e = max_e; e >= 0; --e) {
      Monomial t = target;
      for (int x = 0; x < e; ++x) t = t.quotient(leads[i]);
      out[i] = e;
      if (decompose(t, i + 1, out)) return true;
    }
    out[i] = 0;
    return false;
  };

  std::vector<Polynomial> rewritten;
  for (const auto& psi0 : m.images) {
    Polynomial psi = psi0;
    std::vector<Term> out_terms;
    bool ok = true;
    while (!psi.is_zero() && ok) {
      std::vector<int> alpha(gens.size(), 0);
      if (!decompose(psi.leading_term().mono, 0, alpha)) {
        ok = false;
        break;
      }
      Rational lead_coef(1);
      Polynomial prod = Polynomial::constant(r, Rational(1));
      Monomial fmono(static_cast<int>(gens.size()));
      for (size_t i = 0; i < gens.size(); ++i) {
        if (!alpha[i]) continue;
        prod = prod * power(i, alpha[i]);
        fmono.exps[i] = static_cast<std::uint16_t>(alpha[i]);
        for (int x = 0; x < alpha[i]; ++x) lead_coef *= gens[i].leading_term().coef;
      }
      Rational c = psi.leading_term().coef / lead_coef;
      out_terms.push_back({fmono, c});
      psi = psi - prod.scaled(c);
    }
    if (ok) {
      rewritten.push_back(Polynomial::from_terms(static_cast<int>(gens.size()),
                                                 std::move(out_terms)));
      continue;
    }
    // fallback: one dense solve over all generator monomials of this degree
    auto ex = solve_subalgebra(psi0, gens);
    if (!ex.found)
      throw std::logic_error("images_in_invariants: image is not in the invariant ring");
    std::vector<Term> ts;
    for (const auto& [alpha, c] : ex.combo) {
      Monomial fmono(static_cast<int>(gens.size()));
      for (size_t i = 0; i < alpha.size(); ++i)
        fmono.exps[i] = static_cast<std::uint16_t>(alpha[i]);
      ts.push_back({fmono, c});
    }
    rewritten.push_back(Polynomial::from_terms(static_cast<int>(gens.size()), std::move(ts)));
  }
  return rewritten;
}

PureDga fiber_dga(const CartanModel& m) {
  PureDga d;
  d.poly_vars = static_cast<int>(m.base.generator_degrees.size());
  d.poly_var_degrees = m.base.generator_degrees;
  d.generator_degrees = m.fiber_degrees;
  d.images = images_in_invariants(m);
  return d;
}

PureDga torus_fiber_dga(const CartanModel& m) {
  return {m.base.rank, std::vector<int>(m.base.rank, 2), m.fiber_degrees, m.images};
}

PureDga borel_dga(const BorelModel& b) {
  return {2 * b.base_vars, std::vector<int>(2 * b.base_vars, 2), b.fiber_degrees,
          b.differentials};
}

// ------------------------------------------------------------- the oracle

namespace {

struct Slice {
  std::vector<std::pair<Monomial, std::uint32_t>> elems;
  std::map<std::pair<std::vector<std::uint16_t>, std::uint32_t>, int> index;

  int find(const Monomial& m, std::uint32_t mask) const {
    auto it = index.find({m.exps, mask});
    return it == index.end() ? -1 : it->second;
  }
};

// monomials of a given weighted cohomological degree (all weights even)
void enumerate_monomials(const std::vector<int>& weights, int total,
                         const std::function<void(const Monomial&)>& emit) {
  int nvars = static_cast<int>(weights.size());
  Monomial cur(nvars);
  if (nvars == 0) {
    if (total == 0) emit(cur);
    return;
  }
  std::function<void(int, int)> rec = [&](int var, int left) {
    if (var == nvars - 1) {
      if (left % weights[var] == 0) {
        cur.exps[var] = static_cast<std::uint16_t>(left / weights[var]);
        emit(cur);
      }
      return;
    }
    for (int e = 0; e * weights[var] <= left; ++e) {
      cur.exps[var] = static_cast<std::uint16_t>(e);
      rec(var + 1, left - e * weights[var]);
    }
  };
  rec(0, total);
}

// per-degree monomial counts up to bound, by unbounded knapsack
std::vector<long long> monomial_counts(const std::vector<int>& weights, int bound) {
  std::vector<long long> c(bound + 1, 0);
  c[0] = 1;
  for (int w : weights)
    for (int d = w; d <= bound; ++d) c[d] += c[d - w];
  return c;
}

long long slice_count(const PureDga& dga, int d, long long cap) {
  int ngen = static_cast<int>(dga.generator_degrees.size());
  if (ngen > 20) throw ResourceBound("oracle: generator count bound exceeded");
  auto counts = monomial_counts(dga.poly_var_degrees, d);
  long long total = 0;
  for (std::uint32_t mask = 0; mask < (1u << ngen); ++mask) {
    int md = 0;
    for (int i = 0; i < ngen; ++i)
      if (mask & (1u << i)) md += dga.generator_degrees[i];
    if (md > d) continue;
    total += counts[d - md];
    if (total > cap) return total;
  }
  return total;
}

Slice build_slice(const PureDga& dga, int d, const OracleLimits& lim) {
  if (slice_count(dga, d, lim.max_basis_per_degree) > lim.max_basis_per_degree)
    throw ResourceBound("oracle: slice at degree " + std::to_string(d) +
                        " exceeds the basis bound");
  Slice s;
  int ngen = static_cast<int>(dga.generator_degrees.size());
  for (std::uint32_t mask = 0; mask < (1u << ngen); ++mask) {
    int md = 0;
    for (int i = 0; i < ngen; ++i)
      if (mask & (1u << i)) md += dga.generator_degrees[i];
    if (md > d) continue;
    enumerate_monomials(dga.poly_var_degrees, d - md, [&](const Monomial& m) {
      s.index[{m.exps, mask}] = static_cast<int>(s.elems.size());
      s.elems.emplace_back(m, mask);
    });
  }
  return s;
}

// rows = source elements, entries indexed by the target slice
linalg::SparseMatrix differential_matrix(const PureDga& dga, const Slice& src,
                                         const Slice& dst) {
  linalg::SparseMatrix mat(static_cast<int>(dst.elems.size()));
  int ngen = static_cast<int>(dga.generator_degrees.size());
  for (const auto& [mono, mask] : src.elems) {
    std::map<int, Rational> row;
    int sign_count = 0;
    for (int i = 0; i < ngen; ++i) {
      if (!(mask & (1u << i))) continue;
      int sgn = (sign_count % 2 == 0) ? 1 : -1;
      ++sign_count;
      if (dga.images[i].is_zero()) continue;
      std::uint32_t rest = mask & ~(1u << i);
      for (const auto& t : dga.images[i].terms()) {
        Monomial prod = mono.product(t.mono);
        int col = dst.find(prod, rest);
        if (col < 0) throw std::logic_error("oracle: differential left the slice");
        row[col] += (sgn > 0) ? t.coef : -t.coef;
      }
    }
    std::vector<std::pair<int, Rational>> r(row.begin(), row.end());
    mat.add_row(std::move(r));
  }
  return mat;
}

}  // namespace

long long max_slice_dimension(const PureDga& dga, int n) {
  long long best = 0;
  for (int d = 0; d <= n + 1; ++d)
    best = std::max(best, slice_count(dga, d, (1LL << 62)));
  return best;
}

std::vector<BigInt> dga_cohomology_upto(const PureDga& dga, int n, const OracleLimits& lim) {
  if (n > lim.max_total_degree)
    throw ResourceBound("oracle: degree bound exceeded");
  std::vector<long> ranks(n + 2, 0);
  std::vector<long long> dims(n + 2, 0);
  Slice prev = build_slice(dga, 0, lim);
  dims[0] = static_cast<long long>(prev.elems.size());
  for (int d = 0; d <= n; ++d) {
    Slice next = build_slice(dga, d + 1, lim);
    dims[d + 1] = static_cast<long long>(next.elems.size());
    ranks[d] = linalg::rank(differential_matrix(dga, prev, next));
    prev = std::move(next);
  }
  std::vector<BigInt> betti(n + 1);
  for (int d = 0; d <= n; ++d)
    betti[d] = BigInt(dims[d]) - ranks[d] - (d ? ranks[d - 1] : 0);
  return betti;
}

namespace {

// borel must be the doubled version of fiber: variables [0, fiber.poly_vars)
// are the fiber copy, the rest the base copy
bool surjectivity_core(const PureDga& fiber, const PureDga& borel, int n,
                       const OracleLimits& lim) {
  auto fiber_betti = dga_cohomology_upto(fiber, n, lim);

  for (int d = 0; d <= n; ++d) {
    if (fiber_betti[d] == 0) continue;

    Slice fprev = d ? build_slice(fiber, d - 1, lim) : Slice{};
    Slice fcur = build_slice(fiber, d, lim);
    Slice fnext = build_slice(fiber, d + 1, lim);
    Slice bcur = build_slice(borel, d, lim);
    Slice bnext = build_slice(borel, d + 1, lim);

    long rank_df = linalg::rank(differential_matrix(fiber, fcur, fnext));
    long dim_zf = static_cast<long>(fcur.elems.size()) - rank_df;

    linalg::SparseMatrix ab = differential_matrix(borel, bcur, bnext);
    long rank_ab = linalg::rank(ab);

    // combined map (x, y) -> (d_B x, restrict(x) + d_F y) into
    // (borel degree d+1) + (fiber degree d)
    int cols_total = static_cast<int>(bnext.elems.size() + fcur.elems.size());
    linalg::SparseMatrix big(cols_total);
    int offset = static_cast<int>(bnext.elems.size());
    for (int i = 0; i < static_cast<int>(bcur.elems.size()); ++i) {
      auto row = ab.rows[i];
      // restriction: keep elements whose w-copy exponents vanish
      const auto& [mono, mask] = bcur.elems[i];
      bool pure_u = true;
      for (int vv = fiber.poly_vars; vv < borel.poly_vars; ++vv)
        if (mono.exps[vv]) pure_u = false;
      if (pure_u) {
        Monomial um(fiber.poly_vars);
        for (int vv = 0; vv < fiber.poly_vars; ++vv) um.exps[vv] = mono.exps[vv];
        int col = fcur.find(um, mask);
        if (col < 0) throw std::logic_error("oracle: restriction left the slice");
        row.emplace_back(offset + col, Rational(1));
      }
      big.add_row(std::move(row));
    }
    if (d > 0) {
      linalg::SparseMatrix df_prev = differential_matrix(fiber, fprev, fcur);
      for (auto& row : df_prev.rows) {
        std::vector<std::pair<int, Rational>> shifted;
        for (auto& [c, val] : row) shifted.emplace_back(offset + c, val);
        big.add_row(std::move(shifted));
      }
    }
    long rank_big = linalg::rank(std::move(big));
    if (rank_big - rank_ab != dim_zf) return false;
  }
  return true;
}

}  // namespace

bool verify_fiber_surjectivity(const CartanModel& m, int n, const OracleLimits& lim) {
  return surjectivity_core(torus_fiber_dga(m), borel_dga(build_borel_model(m)), n, lim);
}

bool verify_fiber_surjectivity_invariant(const CartanModel& m, int n, const OracleLimits& lim) {
  PureDga fiber = fiber_dga(m);
  PureDga borel;
  borel.poly_vars = 2 * fiber.poly_vars;
  borel.poly_var_degrees = fiber.poly_var_degrees;
  borel.poly_var_degrees.insert(borel.poly_var_degrees.end(), fiber.poly_var_degrees.begin(),
                                fiber.poly_var_degrees.end());
  borel.generator_degrees = fiber.generator_degrees;
  exactpoly::IntMatrix to_left(fiber.poly_vars, std::vector<long long>(borel.poly_vars, 0));
  exactpoly::IntMatrix to_right(fiber.poly_vars, std::vector<long long>(borel.poly_vars, 0));
  for (int i = 0; i < fiber.poly_vars; ++i) {
    to_left[i][i] = 1;
    to_right[i][fiber.poly_vars + i] = 1;
  }
  for (const auto& psi : fiber.images)
    borel.images.push_back(exactpoly::substitute_linear(psi, to_left) -
                           exactpoly::substitute_linear(psi, to_right));
  return surjectivity_core(fiber, borel, n, lim);
}

std::string format_poincare(const std::vector<BigInt>& coeffs) {
  std::ostringstream os;
  bool first = true;
  for (size_t d = 0; d < coeffs.size(); ++d) {
    if (coeffs[d] == 0) continue;
    if (!first) os << " + ";
    if (coeffs[d] != 1 || d == 0) os << coeffs[d].str();
    if (d > 0) {
      if (coeffs[d] != 1) os << "*";
      os << "q^" << d;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace cartanmodel
