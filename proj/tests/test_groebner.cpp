#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "homformal/groebner.hpp"

using namespace exactpoly;
using namespace groebner;

namespace {
Polynomial P(const std::string& s, int nvars) { return parse_polynomial(s, nvars); }
}  // namespace

TEST_CASE("buchberger on bases that are already reduced") {
  auto gb = buchberger({P("t1", 2), P("t2", 2)});
  REQUIRE(gb.generators.size() == 2);
  CHECK(gb.generators[0] == P("t2", 2));
  CHECK(gb.generators[1] == P("t1", 2));
  CHECK(verify_basis(gb));
}

TEST_CASE("buchberger finds pure powers for {t1^2+t2^2, t1^2*t2^2}") {
  auto gb = buchberger({P("t1^2+t2^2", 2), P("t1^2*t2^2", 2)});
  CHECK(verify_basis(gb));
  CHECK(is_zero_dimensional(gb));
  // leading-term ideal must contain a pure power of each variable
  bool pure1 = false, pure2 = false;
  for (const auto& g : gb.generators) {
    const auto& m = g.leading_term().mono;
    if (m.exps[0] > 0 && m.exps[1] == 0) pure1 = true;
    if (m.exps[1] > 0 && m.exps[0] == 0) pure2 = true;
  }
  CHECK(pure1);
  CHECK(pure2);
}

TEST_CASE("zero ideal") {
  auto gb = buchberger({Polynomial(2)});
  CHECK(gb.generators.empty());
  CHECK_FALSE(is_zero_dimensional(gb));
  auto gb0 = buchberger({});
  CHECK(gb0.generators.empty());
}

TEST_CASE("buchberger rejects inhomogeneous input") {
  CHECK_THROWS(buchberger({P("t1^2 + t2", 2)}));
}

TEST_CASE("normal form") {
  auto gb = buchberger({P("t1^2+t2^2", 2)});
  // membership of source generators
  CHECK(normal_form(P("t1^2+t2^2", 2), gb).is_zero());
  // constants survive positive-degree homogeneous ideals
  auto gb2 = buchberger({P("t1", 2), P("t2", 2)});
  CHECK(normal_form(P("5", 2), gb2) == P("5", 2));
  // hand division: t1^4 mod (t1^2+t2^2) = t2^4
  CHECK(normal_form(P("t1^4", 2), gb) == P("t2^4", 2));
  // idempotence
  Polynomial nf = normal_form(P("t1^4 + t1*t2^3", 2), gb);
  CHECK(normal_form(nf, gb) == nf);
}

TEST_CASE("ideal membership with certificates") {
  // Sp(2)/Sp(1): psi2 = s1^4 = (1/4) psi1^2 with psi1 = 2 s1^2
  auto cert = ideal_member(P("t1^4", 1), {P("2*t1^2", 1)});
  CHECK(cert.member);
  CHECK(cert.verify(P("t1^4", 1)));

  auto no = ideal_member(P("t1", 2), {P("t2", 2)});
  CHECK_FALSE(no.member);
  CHECK(no.verify(P("t1", 2)));

  // SO(8) Pfaffian image t1^2 t2^2 lies in the ideal of the SO(4) Pfaffian image t1 t2
  auto pf = ideal_member(P("t1^2*t2^2", 2), {P("t1*t2", 2)});
  CHECK(pf.member);
}

TEST_CASE("zero dimensionality") {
  CHECK(is_zero_dimensional(buchberger({P("t1^2", 2), P("t2^3", 2)})));
  CHECK_FALSE(is_zero_dimensional(buchberger({P("t1*t2", 2)})));
  // SU(3)/T^2: e2, e3 with t3 = -t1-t2 eliminated
  Polynomial e2 = P("t1^2 + t1*t2 + t2^2", 2).scaled(Rational(-1));
  Polynomial e3 = P("t1^2*t2 + t1*t2^2", 2).scaled(Rational(-1));
  auto gb = buchberger({e2, e3});
  CHECK(is_zero_dimensional(gb));
  auto dim = staircase_dimension(gb);
  REQUIRE(dim.has_value());
  CHECK(*dim == 6);  // |W(SU(3))|
}

TEST_CASE("staircase dimension") {
  auto one = staircase_dimension(buchberger({P("t1", 2), P("t2", 2)}));
  REQUIRE(one.has_value());
  CHECK(*one == 1);
  auto four = staircase_dimension(buchberger({P("t1^2", 2), P("t2^2", 2)}));
  REQUIRE(four.has_value());
  CHECK(*four == 4);
  CHECK_FALSE(staircase_dimension(buchberger({P("t1*t2", 2)})).has_value());
}

TEST_CASE("hilbert series") {
  // one variable mod t1^2: dims 1,0,1 in cohomological degrees 0,1,2
  auto s = hilbert_series(buchberger({P("t1^2", 1)}), 6);
  CHECK(s == std::vector<BigInt>{1, 0, 1, 0, 0, 0, 0});

  // {t1^2+t2^2, t1^2 t2^2}: complete intersection (1-q^4)(1-q^8)/(1-q^2)^2,
  // palindromic, total dimension 8
  auto gb = buchberger({P("t1^2+t2^2", 2), P("t1^2*t2^2", 2)});
  auto h = hilbert_series(gb, 20);
  std::vector<BigInt> expect{1, 0, 2, 0, 2, 0, 2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  CHECK(h == expect);
  BigInt total = 0;
  for (auto& c : h) total += c;
  CHECK(total == 8);
  CHECK(*staircase_dimension(gb) == 8);

  // zero ideal in 2 variables up to degree 4: 1,0,2,0,3
  auto z = hilbert_series(buchberger({Polynomial(2)}), 4);
  CHECK(z == std::vector<BigInt>{1, 0, 2, 0, 3});
}

TEST_CASE("hilbert series of a complete intersection is palindromic") {
  auto gb = buchberger({P("t1^2+t2^2", 2), P("t1^2*t2^2", 2)});
  auto h = hilbert_series(gb, 8);
  for (size_t i = 0; i < h.size(); ++i) CHECK(h[i] == h[h.size() - 1 - i]);
}

TEST_CASE("regular systems") {
  CHECK(is_regular_system({P("t1^2", 2), P("t2^2", 2)}));
  CHECK_FALSE(is_regular_system({P("t1", 2), P("t1*t2", 2)}));
  CHECK(is_regular_system({P("2*t1^2", 1)}));  // Sp(2)/Sp(1) regular subset
  // length != variable count is an error, not a false
  CHECK_THROWS(is_regular_system({P("t1", 2)}));
}

TEST_CASE("regular system dimension and series match the product formulas") {
  // degrees d1=4, d2=8 over variables of degree 2:
  // staircase = (4*8)/(2*2) = 8 and series = (1-q^4)(1-q^8)/(1-q^2)^2
  std::vector<Polynomial> sys{P("t1^2+t2^2", 2), P("t1^2*t2^2", 2)};
  REQUIRE(is_regular_system(sys));
  auto gb = buchberger(sys);
  CHECK(*staircase_dimension(gb) == 8);

  // compare hilbert_series with the expansion of the rational function
  auto h = hilbert_series(gb, 12);
  // numerator (1-q^4)(1-q^8) divided by (1-q^2)^2 as a series
  std::vector<BigInt> num(13, BigInt(0));
  num[0] = 1;
  num[4] = -1;
  num[8] = -1;
  num[12] = 1;
  for (int k = 0; k < 2; ++k)
    for (int i = 2; i <= 12; ++i) num[i] += num[i - 2];
  for (int i = 0; i <= 12; ++i) CHECK(h[i] == num[i]);
}

TEST_CASE("randomized membership agrees with the linear-algebra oracle") {
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (int it = 0; it < 250; ++it) {
    int nvars = 1 + static_cast<int>(rng() % 3);
    int ngens = 1 + static_cast<int>(rng() % 3);
    std::vector<Polynomial> gens;
    for (int i = 0; i < ngens; ++i)
      gens.push_back(testhelpers::random_homogeneous(rng, nvars, 1 + rng() % 3, 3));
    Polynomial p = testhelpers::random_homogeneous(rng, nvars, 1 + rng() % 4, 3);
    bool via_groebner = ideal_member(p, gens).member;
    bool via_oracle = testhelpers::membership_oracle(p, gens);
    CHECK(via_groebner == via_oracle);
    ++checked;
  }
  CHECK(checked == 250);
}

TEST_CASE("every computed basis passes S-polynomial and source checks") {
  std::mt19937_64 rng(77);
  for (int it = 0; it < 40; ++it) {
    int nvars = 1 + static_cast<int>(rng() % 3);
    std::vector<Polynomial> gens;
    int ngens = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < ngens; ++i)
      gens.push_back(testhelpers::random_homogeneous(rng, nvars, 1 + rng() % 3, 4));
    auto gb = buchberger(gens);
    CHECK(verify_basis(gb));
    // autoreduced: no leading term divides another
    for (size_t i = 0; i < gb.generators.size(); ++i)
      for (size_t j = 0; j < gb.generators.size(); ++j)
        if (i != j)
          CHECK_FALSE(
              gb.generators[i].leading_term().mono.divides(gb.generators[j].leading_term().mono));
    // normal form idempotence on a random probe
    Polynomial probe = testhelpers::random_homogeneous(rng, nvars, 2 + rng() % 3, 4);
    Polynomial nf = normal_form(probe, gb);
    CHECK(normal_form(nf, gb) == nf);
  }
}

TEST_CASE("determinism: same input order gives identical bases") {
  std::vector<Polynomial> gens{P("t1^2+t2^2", 2), P("t1^2*t2^2", 2), P("t1^3*t2", 2)};
  auto a = buchberger(gens);
  auto b = buchberger(gens);
  REQUIRE(a.generators.size() == b.generators.size());
  for (size_t i = 0; i < a.generators.size(); ++i) CHECK(a.generators[i] == b.generators[i]);
}
