#ifndef HOMFORMAL_GROEBNER_HPP
#define HOMFORMAL_GROEBNER_HPP

#include <optional>
#include <vector>

#include "homformal/polynomial.hpp"

namespace groebner {

using exactpoly::BigInt;
using exactpoly::Monomial;
using exactpoly::Polynomial;
using exactpoly::Rational;

// The one order used everywhere: graded reverse lexicographic, with an
// optional relabeling of the variables. All inputs here are homogeneous, so
// any graded order computes the same invariants; fixing grevlex keeps runs
// reproducible.
struct MonomialOrder {
  std::vector<int> permutation;  // empty = identity; permutation[i] = slot of variable i

  int compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
};

struct GroebnerBasis {
  std::vector<Polynomial> generators;  // reduced, monic, sorted by leading term
  MonomialOrder order;
  std::vector<Polynomial> source_ideal;
  int var_count = 0;
};

// Reduced Groebner basis via Buchberger with the product and chain criteria.
// Generators must be homogeneous and share a variable count. Deterministic.
GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const MonomialOrder& order = {});

// Complete multivariate division remainder; idempotent; zero iff p lies in
// the ideal spanned by the basis.
Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb);

struct MembershipCertificate {
  bool member = false;
  GroebnerBasis basis;
  Polynomial remainder;  // zero iff member

  // Re-runs the division and the S-polynomial checks.
  bool verify(const Polynomial& p) const;
};

MembershipCertificate ideal_member(const Polynomial& p, const std::vector<Polynomial>& gens);

// True iff the leading-term ideal contains a pure power of every variable.
bool is_zero_dimensional(const GroebnerBasis& gb);

// Q-dimension of the quotient (standard monomial count); nullopt = infinite.
std::optional<BigInt> staircase_dimension(const GroebnerBasis& gb);

// Standard-monomial count per cohomological degree 0..max_degree (odd entries
// are zero since every variable has degree 2).
std::vector<BigInt> hilbert_series(const GroebnerBasis& gb, int max_degree);

// For n homogeneous polynomials in n variables regularity is equivalent to a
// zero-dimensional quotient; other lengths are rejected.
bool is_regular_system(const std::vector<Polynomial>& polys);

// All S-polynomials of basis pairs reduce to zero and every source generator
// reduces to zero. Used by tests and certificate re-verification.
bool verify_basis(const GroebnerBasis& gb);

}  // namespace groebner

#endif
