#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "homformal/cartanmodel.hpp"

using namespace cartanmodel;
using exactpoly::BigInt;
using exactpoly::Polynomial;
using exactpoly::Rational;
using exactpoly::parse_polynomial;
using liegroups::make_group;
using liegroups::TorusMap;

namespace {

Budget budget() { return Budget::seconds(60); }

CartanModel model_of(const std::string& g, const std::string& k, const std::string& recipe,
                     std::vector<std::pair<std::string, int>> params = {}) {
  auto G = make_group(g);
  auto K = make_group(k);
  auto emb = liegroups::parse_recipe(recipe, params);
  return build_model(G, K, emb);
}

std::vector<BigInt> pc(std::initializer_list<std::pair<int, int>> spec) {
  // {degree, coeff} pairs
  int top = 0;
  for (auto& [d, c] : spec) top = std::max(top, d);
  std::vector<BigInt> v(top + 1);
  for (auto& [d, c] : spec) v[d] = c;
  return v;
}

}  // namespace

TEST_CASE("build_model: Sp(2)/Sp(1) diagonal double block") {
  auto m = model_of("Sp(2)", "Sp(1)", "double-block(Sp; 1)");
  CHECK(m.fiber_degrees == std::vector<int>{3, 7});
  CHECK(m.images[0] == parse_polynomial("2*t1^2", 1));
  CHECK(m.images[1] == parse_polynomial("t1^4", 1));
  CHECK(m.corank == 1);
  CHECK(m.formal_dimension == 7);
}

TEST_CASE("build_model: SU(3)/SO(3) real form") {
  auto m = model_of("SU(3)", "SO(3)", "real-in-complex(3)");
  CHECK(m.fiber_degrees == std::vector<int>{3, 5});
  CHECK(m.images[0] == parse_polynomial("-t1^2", 1));
  CHECK(m.images[1].is_zero());
}

TEST_CASE("build_model: K = G identity embedding") {
  auto m = model_of("SO(5)", "SO(5)", "id(2)");
  CHECK(m.corank == 0);
  auto K = make_group("SO(5)");
  for (size_t i = 0; i < m.images.size(); ++i)
    CHECK(m.images[i] == K.invariant_generators[i]);
}

TEST_CASE("build_model rejects degree-only groups and rank mismatches") {
  auto E7 = make_group("E7");
  auto F4 = make_group("F4");
  CHECK_THROWS_WITH_AS(build_model(E7, F4, liegroups::embedding_identity(4)),
                       doctest::Contains("degree-only"), std::invalid_argument);
  auto SU3 = make_group("SU(3)");
  auto SO5 = make_group("SO(5)");
  CHECK_THROWS_WITH_AS(build_model(SU3, SO5, liegroups::embedding_identity(3)),
                       doctest::Contains("rank"), std::invalid_argument);
}

TEST_CASE("build_model enforces the source trace relation") {
  auto SU2 = make_group("SU(2)");
  auto T1 = make_group("T^1");
  // t1 -> s, t2 -> 0 does not sum to zero: not a subtorus of SU(2)
  CHECK_THROWS_WITH_AS(build_model(SU2, T1, TorusMap{{{1}, {0}}}),
                       doctest::Contains("trace"), std::invalid_argument);
  // t1 -> s, t2 -> -s is fine
  auto m = build_model(SU2, T1, TorusMap{{{1}, {-1}}});
  CHECK(m.images[0] == parse_polynomial("-t1^2", 1));
}

TEST_CASE("find_splitting: Sp(2)/Sp(1)") {
  auto m = model_of("Sp(2)", "Sp(1)", "double-block(Sp; 1)");
  auto w = find_splitting(m, budget());
  REQUIRE(w.has_value());
  CHECK(w->regular_subset == std::vector<int>{0});
  CHECK(w->redundant_order == std::vector<int>{1});
  CHECK(w->certificates[0].member);
  CHECK(w->reverify(m));
  // the lift is the constant-coefficient expression psi2 = 1/4 psi1^2
  REQUIRE(w->lifts[0].found);
  REQUIRE(w->lifts[0].combo.size() == 1);
  CHECK(w->lifts[0].combo[0].first == std::vector<int>{2});
  CHECK(w->lifts[0].combo[0].second == Rational(1, 4));
}

TEST_CASE("find_splitting: SO(8)/SO(4) has the Pfaffian-square redundancy") {
  auto m = model_of("SO(8)", "SO(4)", "double-block(SO; 4)");
  auto w = find_splitting(m, budget());
  REQUIRE(w.has_value());
  CHECK(w->regular_subset.size() == 2);
  CHECK(w->redundant_order.size() == 2);
  CHECK(w->reverify(m));
  // the degree-8 Pfaffian image is (s1 s2)^2, inside the ideal
  int pf_index = 3;
  CHECK(m.images[pf_index] == parse_polynomial("t1^2*t2^2", 2));
}

TEST_CASE("find_splitting: equal-rank SU(3)/T^2 takes every image") {
  auto m = model_of("SU(3)", "T^2", "matrix(r(1,0), r(0,1), r(-1,-1))");
  auto w = find_splitting(m, budget());
  REQUIRE(w.has_value());
  CHECK(w->regular_subset == std::vector<int>{0, 1});
  CHECK(w->redundant_order.empty());
}

TEST_CASE("check_formality: SU(3)/SO(3) is rationally S^5") {
  auto v = check_formality(model_of("SU(3)", "SO(3)", "real-in-complex(3)"), budget());
  CHECK(v.formal == Status::Yes);
  CHECK(v.poincare == pc({{0, 1}, {5, 1}}));
  CHECK(v.elliptic_poincare == pc({{0, 1}}));
}

TEST_CASE("check_formality: Sp(3)/SO(3) per the chosen coordinate convention") {
  auto v = check_formality(model_of("Sp(3)", "SO(3)", "real-in-quaternionic(3)"), budget());
  CHECK(v.formal == Status::Yes);
  // (1+q^7)(1+q^11)
  CHECK(v.poincare == pc({{0, 1}, {7, 1}, {11, 1}, {18, 1}}));
}

TEST_CASE("check_formality: Sp(4)/Sp(2) is free on degrees 11 and 15") {
  auto v = check_formality(model_of("Sp(4)", "Sp(2)", "double-block(Sp; 2)"), budget());
  CHECK(v.formal == Status::Yes);
  CHECK(v.poincare == pc({{0, 1}, {11, 1}, {15, 1}, {26, 1}}));
  CHECK(v.elliptic_poincare == pc({{0, 1}}));
}

TEST_CASE("equivariant routes: SU(4)/U(2) hits the zero-image theorem route") {
  // U(2) = Sp(2) cap S(U(2)U(2)) inside SU(4)
  auto m = model_of("SU(4)", "U(2)",
                    "compose(quaternionic-in-complex(2), complex-in-quaternionic(2))");
  REQUIRE(m.corank == 1);
  auto v = decide(m, budget());
  CHECK(v.formal == Status::Yes);
  CHECK(v.equivariantly_formal == Status::Yes);
  CHECK(v.route == Route::SplittingTheorem);
  // the odd Chern class restricts to zero
  CHECK(m.images[1].is_zero());
}

TEST_CASE("equivariant routes: SO(8)/Sp(2) has exterior cohomology") {
  auto m = model_of("SO(8)", "Sp(2)", "quaternionic-in-real(2)");
  auto v = decide(m, budget());
  CHECK(v.formal == Status::Yes);
  CHECK(v.equivariantly_formal == Status::Yes);
  CHECK(v.route == Route::FreeCohomologyCor02);
  CHECK(v.poincare == pc({{0, 1}, {7, 1}, {11, 1}, {18, 1}}));
}

TEST_CASE("equivariant routes: SO(8)/SO(4) needs the nested-membership route") {
  auto m = model_of("SO(8)", "SO(4)", "double-block(SO; 4)");
  auto v = decide(m, budget());
  CHECK(v.formal == Status::Yes);
  CHECK(v.equivariantly_formal == Status::Yes);
  CHECK(v.route == Route::SplittingCor01);
  // S^4 elliptic factor times odd spheres 7 and 11
  CHECK(v.elliptic_poincare == pc({{0, 1}, {4, 1}}));
  CHECK(v.poincare == pc({{0, 1}, {4, 1}, {7, 1}, {11, 2}, {15, 1}, {18, 1}, {22, 1}}));
}

TEST_CASE("equivariant routes: equal rank") {
  auto m = model_of("SU(3)", "T^2", "matrix(r(1,0), r(0,1), r(-1,-1))");
  auto v = decide(m, budget());
  CHECK(v.route == Route::EqualRank);
  CHECK(v.equivariantly_formal == Status::Yes);
  // chi = |W(SU(3))| = 6
  BigInt chi = 0;
  for (auto& c : v.poincare) chi += c;
  CHECK(chi == 6);
}

TEST_CASE("degree reasoning: E7/F4 yields exactly the two candidates") {
  auto v = degree_reasoning_check(make_group("E7").generator_degrees,
                                  make_group("F4").generator_degrees, {});
  CHECK(v.formal == Status::Yes);
  CHECK(v.equivariantly_formal == Status::Yes);
  REQUIRE(v.candidates.size() == 2);
  // spheres 19, 27, 35
  bool found_spheres = false, found_v12 = false;
  for (const auto& c : v.candidates) {
    if (c.elliptic_pairs.empty() && c.sphere_fiber_degrees == std::vector<int>{19, 27, 35})
      found_spheres = true;
    if (c.elliptic_pairs == std::vector<std::pair<int, int>>{{12, 3}} &&
        c.sphere_fiber_degrees == std::vector<int>{11, 19, 27})
      found_v12 = true;
  }
  CHECK(found_spheres);
  CHECK(found_v12);
  // the two candidates have different rational types, so no single Poincare
  CHECK(v.poincare.empty());
}

TEST_CASE("degree reasoning: E6/F4 is free on 9 and 17") {
  auto v = degree_reasoning_check(make_group("E6").generator_degrees,
                                  make_group("F4").generator_degrees, {});
  CHECK(v.formal == Status::Yes);
  REQUIRE(v.candidates.size() == 1);
  CHECK(v.candidates[0].sphere_fiber_degrees == std::vector<int>{9, 17});
  CHECK(v.candidates[0].elliptic_pairs.empty());
  CHECK(v.poincare == pc({{0, 1}, {9, 1}, {17, 1}, {26, 1}}));
}

TEST_CASE("degree reasoning: E6/Sp(4) matches the truncated-power description") {
  auto v = degree_reasoning_check(make_group("E6").generator_degrees,
                                  make_group("Sp(4)").generator_degrees, {});
  CHECK(v.formal == Status::Yes);
  REQUIRE(v.candidates.size() == 1);
  CHECK(v.candidates[0].elliptic_pairs == std::vector<std::pair<int, int>>{{8, 3}});
  CHECK(v.candidates[0].sphere_fiber_degrees == std::vector<int>{9, 17});
  // (1 + q^8 + q^16)(1+q^9)(1+q^17): palindromic with doubled middle terms
  CHECK(v.poincare == pc({{0, 1},
                          {8, 1},
                          {9, 1},
                          {16, 1},
                          {17, 2},
                          {25, 2},
                          {26, 1},
                          {33, 1},
                          {34, 1},
                          {42, 1}}));
}

TEST_CASE("degree reasoning: identical degree lists give corank 0") {
  auto v = degree_reasoning_check({4, 12}, {4, 12}, {});
  CHECK(v.formal == Status::Yes);
  REQUIRE(v.candidates.size() == 1);
  CHECK(v.candidates[0].sphere_fiber_degrees.empty());
}

TEST_CASE("degree reasoning: without the Killing fact E7/F4 stays inconclusive") {
  // dropping the pinned degree-4 assignment admits assignments whose leftover
  // degrees are reachable by decomposables, so degrees alone cannot decide
  DegreeFacts no_fact;
  no_fact.killing_form = false;
  auto v = degree_reasoning_check(make_group("E7").generator_degrees,
                                  make_group("F4").generator_degrees, no_fact);
  CHECK(v.formal == Status::NoWitnessFound);
  CHECK_FALSE(v.notes.empty());
}

TEST_CASE("borel model doubles the base") {
  auto m = model_of("Sp(2)", "Sp(1)", "double-block(Sp; 1)");
  auto b = build_borel_model(m);
  CHECK(b.base_vars == 1);
  CHECK(b.differentials[0] == parse_polynomial("2*t1^2 - 2*t2^2", 2));
  CHECK(b.differentials[1] == parse_polynomial("t1^4 - t2^4", 2));
  // d^2 = 0: differentials are polynomials, which are cycles
  for (const auto& d : b.differentials) {
    CHECK(d.is_homogeneous());
  }
}

TEST_CASE("borel model: corank-0 torus") {
  auto T1 = make_group("T^1");
  auto m = build_model(T1, T1, liegroups::embedding_identity(1));
  auto b = build_borel_model(m);
  CHECK(b.differentials[0] == parse_polynomial("t1 - t2", 2));
}

TEST_CASE("borel model: trivial K leaves the differential zero") {
  auto SU2 = make_group("SU(2)");
  auto K = make_group("T^0");
  auto m = build_model(SU2, K, TorusMap{{{}, {}}});
  auto b = build_borel_model(m);
  CHECK(b.base_vars == 0);
  CHECK(b.differentials[0].is_zero());
}

TEST_CASE("oracle: sphere model S^7") {
  PureDga s7{0, {}, {7}, {Polynomial(0)}};
  auto betti = dga_cohomology_upto(s7, 10);
  for (int d = 0; d <= 10; ++d) CHECK(betti[d] == ((d == 0 || d == 7) ? 1 : 0));
}

TEST_CASE("oracle: Sp(2)/Sp(1) cohomology matches 1 + q^7") {
  auto m = model_of("Sp(2)", "Sp(1)", "double-block(Sp; 1)");
  auto betti = dga_cohomology_upto(fiber_dga(m), 8);
  for (int d = 0; d <= 8; ++d) CHECK(betti[d] == ((d == 0 || d == 7) ? 1 : 0));
}

TEST_CASE("oracle: SU(3)/SO(3) is the rational S^5") {
  auto m = model_of("SU(3)", "SO(3)", "real-in-complex(3)");
  auto betti = dga_cohomology_upto(fiber_dga(m), 6);
  for (int d = 0; d <= 6; ++d) CHECK(betti[d] == ((d == 0 || d == 5) ? 1 : 0));
}

TEST_CASE("oracle agrees with the witness Poincare polynomial") {
  for (auto [g, k, recipe] :
       {std::tuple<const char*, const char*, const char*>{"SO(8)", "SO(4)",
                                                          "double-block(SO; 4)"},
        {"SO(8)", "Sp(2)", "quaternionic-in-real(2)"},
        {"Sp(3)", "SO(3)", "real-in-quaternionic(3)"}}) {
    auto m = model_of(g, k, recipe);
    auto v = decide(m, budget());
    REQUIRE(v.formal == Status::Yes);
    auto betti = dga_cohomology_upto(fiber_dga(m), m.formal_dimension);
    std::vector<BigInt> expect = v.poincare;
    expect.resize(m.formal_dimension + 1);
    for (int d = 0; d <= m.formal_dimension; ++d) CHECK(betti[d] == expect[d]);
  }
}

TEST_CASE("fiber surjectivity holds for the decided models") {
  for (auto [g, k, recipe] : {std::tuple<const char*, const char*, const char*>{
                                  "Sp(2)", "Sp(1)", "double-block(Sp; 1)"},
                              {"SU(3)", "SO(3)", "real-in-complex(3)"},
                              {"SU(3)", "T^2", "matrix(r(1,0), r(0,1), r(-1,-1))"}}) {
    auto m = model_of(g, k, recipe);
    CHECK(verify_fiber_surjectivity(m, m.formal_dimension));
  }
}

TEST_CASE("invariant-level surjectivity agrees with the torus-level oracle") {
  for (auto [g, k, recipe] : {std::tuple<const char*, const char*, const char*>{
                                  "Sp(2)", "Sp(1)", "double-block(Sp; 1)"},
                              {"SO(8)", "SO(4)", "double-block(SO; 4)"},
                              {"SU(3)", "SO(3)", "real-in-complex(3)"}}) {
    auto m = model_of(g, k, recipe);
    CHECK(verify_fiber_surjectivity_invariant(m, m.formal_dimension));
  }
}

TEST_CASE("negative control: a corrupted model fails surjectivity") {
  // base Q[s1,s2]; dv3 = s1^2, dv7 = s1^3 s2: the degree-8 image is not in the
  // ideal of the closed structure, and the isotropy-style lift cannot exist
  CartanModel m;
  m.base = make_group("T^2");
  m.total_label = "corrupted";
  m.fiber_degrees = {3, 7};
  m.images = {parse_polynomial("t1^2", 2), parse_polynomial("t1^3*t2", 2)};
  m.corank = 0;
  m.formal_dimension = 12;
  CHECK_FALSE(verify_fiber_surjectivity(m, 12));
}

TEST_CASE("verdict invariance under generator permutation and Weyl change") {
  auto m = model_of("SO(8)", "SO(4)", "double-block(SO; 4)");
  auto base_verdict = decide(m, budget());

  // permute the generator order
  CartanModel perm = m;
  std::swap(perm.images[0], perm.images[2]);
  std::swap(perm.fiber_degrees[0], perm.fiber_degrees[2]);
  auto v1 = decide(perm, budget());
  CHECK(v1.formal == base_verdict.formal);
  CHECK(v1.equivariantly_formal == base_verdict.equivariantly_formal);
  CHECK(v1.poincare == base_verdict.poincare);

  // act on K's coordinates by a legal Weyl element (swap + double sign flip)
  CartanModel acted = m;
  exactpoly::IntMatrix w{{0, -1}, {-1, 0}};
  for (auto& psi : acted.images) psi = exactpoly::substitute_linear(psi, w);
  auto v2 = decide(acted, budget());
  CHECK(v2.formal == base_verdict.formal);
  CHECK(v2.equivariantly_formal == base_verdict.equivariantly_formal);
  CHECK(v2.poincare == base_verdict.poincare);
}

TEST_CASE("resource bounds are reported, not silently truncated") {
  PureDga big{6, {2, 2, 2, 2, 2, 2}, {3, 5, 7, 9, 11, 13}, {}};
  big.images.assign(6, Polynomial(6));
  OracleLimits lim;
  lim.max_basis_per_degree = 10;
  CHECK_THROWS_AS(dga_cohomology_upto(big, 20, lim), ResourceBound);
}
