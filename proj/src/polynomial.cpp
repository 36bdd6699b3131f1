#include "homformal/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

namespace exactpoly {

int grevlex_cmp(const Monomial& a, const Monomial& b) {
  int da = a.total_exponent(), db = b.total_exponent();
  if (da != db) return da < db ? -1 : 1;
  for (int i = static_cast<int>(a.exps.size()) - 1; i >= 0; --i) {
    if (a.exps[i] != b.exps[i]) return a.exps[i] > b.exps[i] ? -1 : 1;
  }
  return 0;
}

Polynomial Polynomial::constant(int nvars, const Rational& c) {
  Polynomial p(nvars);
  if (!c.is_zero()) p.terms_.push_back({Monomial(nvars), c});
  return p;
}

Polynomial Polynomial::variable(int nvars, int index, int power) {
  if (index < 0 || index >= nvars) throw std::out_of_range("Polynomial::variable index");
  Polynomial p(nvars);
  if (power == 0) return constant(nvars, Rational(1));
  Monomial m(nvars);
  m.exps[index] = static_cast<std::uint16_t>(power);
  p.terms_.push_back({m, Rational(1)});
  return p;
}

Polynomial Polynomial::from_terms(int nvars, std::vector<Term> terms) {
  for (auto& t : terms)
    if (t.mono.var_count() != nvars) throw std::invalid_argument("term variable count mismatch");
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return grevlex_cmp(x.mono, y.mono) > 0; });
  Polynomial p(nvars);
  for (auto& t : terms) {
    if (t.coef.is_zero()) continue;
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono)
      p.terms_.back().coef += t.coef;
    else
      p.terms_.push_back(std::move(t));
    if (!p.terms_.empty() && p.terms_.back().coef.is_zero()) p.terms_.pop_back();
  }
  return p;
}

Polynomial Polynomial::from_sorted_terms(int nvars, std::vector<Term> terms) {
  Polynomial p(nvars);
  p.terms_ = std::move(terms);
  return p;
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
  return terms_.front();
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  int d = terms_.front().mono.total_exponent();
  for (const auto& t : terms_)
    if (t.mono.total_exponent() != d) return false;
  return true;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  for (const auto& t : terms_)
    if (t.mono == m) return t.coef;
  return Rational(0);
}

void Polynomial::check_same_vars(const Polynomial& other, const char* op) const {
  if (nvars_ != other.nvars_)
    throw std::invalid_argument(std::string("variable-count mismatch in ") + op);
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

static Polynomial merge_add(const Polynomial& a, const Polynomial& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.terms().size() + b.terms().size());
  size_t i = 0, j = 0;
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  while (i < ta.size() && j < tb.size()) {
    int c = grevlex_cmp(ta[i].mono, tb[j].mono);
    if (c > 0) {
      out.push_back(ta[i++]);
    } else if (c < 0) {
      out.push_back(tb[j]);
      if (subtract) out.back().coef = -out.back().coef;
      ++j;
    } else {
      Rational s = subtract ? ta[i].coef - tb[j].coef : ta[i].coef + tb[j].coef;
      if (!s.is_zero()) out.push_back({ta[i].mono, s});
      ++i;
      ++j;
    }
  }
  for (; i < ta.size(); ++i) out.push_back(ta[i]);
  for (; j < tb.size(); ++j) {
    out.push_back(tb[j]);
    if (subtract) out.back().coef = -out.back().coef;
  }
  return Polynomial::from_sorted_terms(a.var_count(), std::move(out));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  a.check_same_vars(b, "add");
  return merge_add(a, b, false);
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  a.check_same_vars(b, "sub");
  return merge_add(a, b, true);
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_same_vars(b, "mul");
  std::vector<Term> prods;
  prods.reserve(a.terms().size() * b.terms().size());
  for (const auto& x : a.terms())
    for (const auto& y : b.terms()) prods.push_back({x.mono.product(y.mono), x.coef * y.coef});
  return Polynomial::from_terms(a.var_count(), std::move(prods));
}

Polynomial Polynomial::scaled(const Rational& c) const {
  if (c.is_zero()) return Polynomial(nvars_);
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coef *= c;
  return r;
}

Polynomial Polynomial::times_monomial(const Monomial& m, const Rational& c) const {
  if (c.is_zero()) return Polynomial(nvars_);
  Polynomial r(nvars_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono.product(m), t.coef * c});
  // multiplying by a fixed monomial preserves grevlex order
  return r;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  return scaled(terms_.front().coef.inverse());
}

Polynomial arith(const Polynomial& a, const Polynomial& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
  }
  throw std::logic_error("unreachable");
}

Polynomial substitute_linear(const Polynomial& p, const IntMatrix& map) {
  if (static_cast<int>(map.size()) != p.var_count())
    throw std::invalid_argument("substitute_linear: dimension mismatch");
  int target = map.empty() ? 0 : static_cast<int>(map[0].size());
  for (const auto& row : map)
    if (static_cast<int>(row.size()) != target)
      throw std::invalid_argument("substitute_linear: ragged matrix");

  // linear form per source variable
  std::vector<Polynomial> forms;
  forms.reserve(map.size());
  for (const auto& row : map) {
    std::vector<Term> ts;
    for (int j = 0; j < target; ++j) {
      if (row[j] == 0) continue;
      Monomial m(target);
      m.exps[j] = 1;
      ts.push_back({m, Rational(row[j])});
    }
    forms.push_back(Polynomial::from_terms(target, std::move(ts)));
  }

  // cache powers of each form as needed
  std::vector<std::vector<Polynomial>> powers(forms.size());
  auto form_power = [&](int i, int e) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial::constant(target, Rational(1)));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * forms[i]);
    return cache[e];
  };

  Polynomial result(target);
  for (const auto& t : p.terms()) {
    Polynomial prod = Polynomial::constant(target, t.coef);
    for (int i = 0; i < p.var_count() && !prod.is_zero(); ++i) {
      int e = t.mono.exps[i];
      if (e == 0) continue;
      prod = prod * form_power(i, e);
    }
    result = result + prod;
  }
  return result;
}

Polynomial elementary_symmetric(int nvars, int k, const std::vector<int>& vars, bool squared) {
  int n = static_cast<int>(vars.size());
  if (k < 0 || k > n) throw std::out_of_range("elementary_symmetric: k out of range");
  for (int v : vars)
    if (v < 0 || v >= nvars) throw std::out_of_range("elementary_symmetric: variable index");
  // run over k-subsets in lexicographic order
  std::vector<Term> ts;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  if (k == 0) return Polynomial::constant(nvars, Rational(1));
  while (true) {
    Monomial m(nvars);
    for (int i : idx) m.exps[vars[i]] += squared ? 2 : 1;
    ts.push_back({m, Rational(1)});
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
  return Polynomial::from_terms(nvars, std::move(ts));
}

Polynomial power_sum(int nvars, int k, const std::vector<int>& vars, bool squared) {
  if (k <= 0) throw std::out_of_range("power_sum: k must be positive");
  std::vector<Term> ts;
  for (int v : vars) {
    Monomial m(nvars);
    m.exps[v] = static_cast<std::uint16_t>(squared ? 2 * k : k);
    ts.push_back({m, Rational(1)});
  }
  return Polynomial::from_terms(nvars, std::move(ts));
}

Polynomial top_class(int nvars, const std::vector<int>& vars) {
  if (vars.empty()) throw std::invalid_argument("top_class: empty variable list");
  Monomial m(nvars);
  for (int v : vars) {
    if (v < 0 || v >= nvars) throw std::out_of_range("top_class: variable index");
    m.exps[v] += 1;
  }
  Polynomial p(nvars);
  return Polynomial::from_terms(nvars, {{m, Rational(1)}});
}

Polynomial derivative(const Polynomial& p, int var) {
  if (var < 0 || var >= p.var_count()) throw std::out_of_range("derivative: variable index");
  std::vector<Term> ts;
  for (const auto& t : p.terms()) {
    int e = t.mono.exps[var];
    if (e == 0) continue;
    Monomial m = t.mono;
    m.exps[var] -= 1;
    ts.push_back({m, t.coef * Rational(e)});
  }
  return Polynomial::from_terms(p.var_count(), std::move(ts));
}

Rational evaluate(const Polynomial& p, const std::vector<Rational>& point) {
  if (static_cast<int>(point.size()) != p.var_count())
    throw std::invalid_argument("evaluate: point dimension mismatch");
  Rational acc(0);
  for (const auto& t : p.terms()) {
    Rational v = t.coef;
    for (int i = 0; i < p.var_count(); ++i)
      for (int e = 0; e < t.mono.exps[i]; ++e) v *= point[i];
    acc += v;
  }
  return acc;
}

std::string default_var_name(int index) { return "t" + std::to_string(index + 1); }

std::string Polynomial::str(const std::function<std::string(int)>& namer) const {
  if (terms_.empty()) return "0";
  auto name = namer ? namer : default_var_name;
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coef;
    if (first) {
      if (c.sign() < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
      if (c.sign() < 0) c = -c;
    }
    bool wrote_coef = false;
    if (!c.is_one() || t.mono.is_constant()) {
      os << c.str();
      wrote_coef = true;
    }
    bool first_var = !wrote_coef;
    for (int i = 0; i < nvars_; ++i) {
      int e = t.mono.exps[i];
      if (e == 0) continue;
      if (!first_var) os << "*";
      os << name(i);
      if (e > 1) os << "^" << e;
      first_var = false;
    }
    first = false;
  }
  return os.str();
}

namespace {

struct Lexer {
  const std::string& s;
  size_t i = 0;
  explicit Lexer(const std::string& str) : s(str) {}
  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  char get() {
    skip_ws();
    return s[i++];
  }
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, int nvars) {
  Lexer lx(text);
  std::vector<Term> terms;

  auto parse_uint = [&]() -> std::string {
    std::string num;
    while (lx.i < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.i])))
      num += lx.s[lx.i++];
    if (num.empty()) throw std::invalid_argument("polynomial parse: expected number");
    return num;
  };

  bool expect_term = true;
  int sign = 1;
  while (!lx.eof()) {
    char c = lx.peek();
    if (c == '+' || c == '-') {
      lx.get();
      if (c == '-') sign = -sign;
      expect_term = true;
      continue;
    }
    if (!expect_term) throw std::invalid_argument("polynomial parse: missing operator");

    Rational coef(sign);
    Monomial m(nvars);
    bool have_factor = false;
    bool want_factor = true;
    while (want_factor) {
      lx.skip_ws();
      if (lx.i < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.i]))) {
        std::string num = parse_uint();
        std::string den = "1";
        if (lx.peek() == '/') {
          lx.get();
          den = parse_uint();
        }
        coef *= Rational(BigInt(num), BigInt(den));
        have_factor = true;
      } else if (lx.i < lx.s.size() && std::isalpha(static_cast<unsigned char>(lx.s[lx.i]))) {
        while (lx.i < lx.s.size() && std::isalpha(static_cast<unsigned char>(lx.s[lx.i]))) ++lx.i;
        int idx = std::stoi(parse_uint()) - 1;
        if (idx < 0 || idx >= nvars)
          throw std::invalid_argument("polynomial parse: variable index out of range");
        int e = 1;
        if (lx.peek() == '^') {
          lx.get();
          e = std::stoi(parse_uint());
        }
        m.exps[idx] += static_cast<std::uint16_t>(e);
        have_factor = true;
      } else {
        throw std::invalid_argument("polynomial parse: unexpected character");
      }
      if (lx.peek() == '*') {
        lx.get();
      } else {
        want_factor = false;
      }
    }
    if (!have_factor) throw std::invalid_argument("polynomial parse: empty term");
    terms.push_back({m, coef});
    sign = 1;
    expect_term = false;
  }
  if (expect_term && !terms.empty())
    throw std::invalid_argument("polynomial parse: trailing operator");
  return Polynomial::from_terms(nvars, std::move(terms));
}

}  // namespace exactpoly
