#ifndef HOMFORMAL_POLYNOMIAL_HPP
#define HOMFORMAL_POLYNOMIAL_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "homformal/rational.hpp"

namespace exactpoly {

// Exponent vector over the torus variables. Every variable has cohomological
// degree 2, so the cohomological degree of a monomial is twice its exponent sum.
struct Monomial {
  std::vector<std::uint16_t> exps;

  Monomial() = default;
  explicit Monomial(int nvars) : exps(nvars, 0) {}

  int var_count() const { return static_cast<int>(exps.size()); }
  int total_exponent() const {
    int s = 0;
    for (auto e : exps) s += e;
    return s;
  }
  int cohomological_degree() const { return 2 * total_exponent(); }
  bool is_constant() const { return total_exponent() == 0; }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps == b.exps; }

  bool divides(const Monomial& b) const {
    for (size_t i = 0; i < exps.size(); ++i)
      if (exps[i] > b.exps[i]) return false;
    return true;
  }
  Monomial quotient(const Monomial& d) const {  // *this / d, assumes divisibility
    Monomial q = *this;
    for (size_t i = 0; i < exps.size(); ++i) q.exps[i] -= d.exps[i];
    return q;
  }
  Monomial lcm(const Monomial& b) const {
    Monomial l = *this;
    for (size_t i = 0; i < exps.size(); ++i)
      if (b.exps[i] > l.exps[i]) l.exps[i] = b.exps[i];
    return l;
  }
  Monomial product(const Monomial& b) const {
    Monomial p = *this;
    for (size_t i = 0; i < exps.size(); ++i) p.exps[i] += b.exps[i];
    return p;
  }
  bool coprime(const Monomial& b) const {
    for (size_t i = 0; i < exps.size(); ++i)
      if (exps[i] && b.exps[i]) return false;
    return true;
  }
};

// Graded reverse lexicographic order; degree first, ties broken at the last
// differing exponent (smaller exponent there wins). Returns <0, 0, >0.
int grevlex_cmp(const Monomial& a, const Monomial& b);
inline bool grevlex_less(const Monomial& a, const Monomial& b) { return grevlex_cmp(a, b) < 0; }

struct Term {
  Monomial mono;
  Rational coef;
};

// Integer substitution matrix: row i gives the image of source variable i as a
// linear combination of target variables.
using IntMatrix = std::vector<std::vector<long long>>;

// Multivariate polynomial over Q with terms kept sorted in descending grevlex
// order and no zero coefficients. Deterministic throughout.
class Polynomial {
  int nvars_ = 0;
  std::vector<Term> terms_;  // descending grevlex

 public:
  Polynomial() = default;
  explicit Polynomial(int nvars) : nvars_(nvars) {}
  static Polynomial constant(int nvars, const Rational& c);
  static Polynomial variable(int nvars, int index, int power = 1);
  static Polynomial from_terms(int nvars, std::vector<Term> terms);  // normalizes
  // terms must be strictly descending in grevlex with no zero coefficients
  static Polynomial from_sorted_terms(int nvars, std::vector<Term> terms);

  int var_count() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::vector<Term> release_terms() { return std::move(terms_); }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  const Term& leading_term() const;  // largest in grevlex

  // Cohomological degree of the top term; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : terms_.front().mono.cohomological_degree(); }
  bool is_homogeneous() const;

  Rational coefficient(const Monomial& m) const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const Rational& c) const;
  Polynomial times_monomial(const Monomial& m, const Rational& c) const;
  Polynomial monic() const;  // leading coefficient 1

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_.size() == b.terms_.size() &&
           [&] {
             for (size_t i = 0; i < a.terms_.size(); ++i)
               if (!(a.terms_[i].mono == b.terms_[i].mono) ||
                   a.terms_[i].coef != b.terms_[i].coef)
                 return false;
             return true;
           }();
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  // Canonical text form, e.g. "2*t1^2 - 1/3*t1*t2". Variables default to
  // t1..tn; a namer can supply other letters (s, u, w) for reports.
  std::string str(const std::function<std::string(int)>& namer = {}) const;

  void check_same_vars(const Polynomial& other, const char* op) const;
};

enum class ArithOp { Add, Sub, Mul };
Polynomial arith(const Polynomial& a, const Polynomial& b, ArithOp op);

// Ring homomorphism induced by an integer linear substitution on the
// variables; preserves cohomological degree. map must have one row per source
// variable; the column count is the target variable count.
Polynomial substitute_linear(const Polynomial& p, const IntMatrix& map);

// Elementary symmetric polynomial e_k over the listed variables (0-based
// indices) in an nvars-variable ring; over their squares when squared is set.
Polynomial elementary_symmetric(int nvars, int k, const std::vector<int>& vars, bool squared);

// Power sum p_k = sum v^k (or v^{2k} when squared); used by Newton-identity checks.
Polynomial power_sum(int nvars, int k, const std::vector<int>& vars, bool squared);

// The product monomial over the listed variables with coefficient 1
// (Euler/Pfaffian class of SO(2n) when applied to all torus variables).
Polynomial top_class(int nvars, const std::vector<int>& vars);

// Formal partial derivative with respect to variable `var`.
Polynomial derivative(const Polynomial& p, int var);

// Evaluates at a rational point (for spot checks like Jacobian rank).
Rational evaluate(const Polynomial& p, const std::vector<Rational>& point);

// Parses the canonical text form. Variable tokens are <letters><index> with
// 1-based indices; every letter prefix refers to the same ring.
Polynomial parse_polynomial(const std::string& text, int nvars);

std::string default_var_name(int index);  // "t1", "t2", ...

}  // namespace exactpoly

#endif
