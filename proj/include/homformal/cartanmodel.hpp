#ifndef HOMFORMAL_CARTANMODEL_HPP
#define HOMFORMAL_CARTANMODEL_HPP

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "homformal/groebner.hpp"
#include "homformal/liegroups.hpp"

namespace cartanmodel {

using exactpoly::BigInt;
using exactpoly::Polynomial;
using exactpoly::Rational;
using liegroups::GroupDatum;
using liegroups::TorusMap;

struct ResourceBound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The pure model of G/K: polynomial base H*(BK) presented on K's reduced
// torus coordinates, one odd generator per H*(BG) generator, differential
// images psi_j obtained by restricting the invariant generators of G.
struct CartanModel {
  GroupDatum base;                 // K
  std::string total_label;         // G, for reports
  std::vector<int> fiber_degrees;  // odd; G degree minus one
  std::vector<Polynomial> images;  // in base.rank variables
  int corank = 0;
  int formal_dimension = 0;        // dim G - dim K

  int image_degree(int j) const { return fiber_degrees[j] + 1; }
};

CartanModel build_model(const GroupDatum& g, const GroupDatum& k, const TorusMap& emb);

// Constant-coefficient expression of a redundant image as a polynomial in
// earlier images; this is what makes the closed Borel lift telescope.
struct SubalgebraExpr {
  bool found = false;
  // (exponents over the earlier-image list, coefficient)
  std::vector<std::pair<std::vector<int>, Rational>> combo;
};

struct SplittingWitness {
  std::vector<int> regular_subset;   // ascending indices into images
  std::vector<int> redundant_order;  // certification order of the rest
  std::vector<groebner::MembershipCertificate> certificates;  // per redundant
  std::vector<SubalgebraExpr> lifts;                          // per redundant
  groebner::GroebnerBasis regular_basis;

  bool reverify(const CartanModel& m) const;
};

enum class Status { Yes, NoWitnessFound, NotApplicable };
enum class Route {
  EqualRank,
  SplittingTheorem,    // all redundant images vanish; kernel dim = corank
  SplittingCor01,      // nested membership of nonzero redundant images
  FreeCohomologyCor02, // H*(G/K) is a free algebra
  SharedTorusTransfer,
  DegreeReasoning,
  ProductReduction,
};
std::string route_name(Route r);
std::string status_name(Status s);

// One consistent degree assignment found by the degree-only prover.
struct DegreeCandidate {
  // per K generator: (index of the G generator hitting its pure power, power)
  std::vector<std::pair<int, int>> assignment;
  std::vector<int> sphere_fiber_degrees;          // leftovers with forced-zero image
  std::vector<std::pair<int, int>> elliptic_pairs;  // (K degree, power k >= 2)
  BigInt euler = 1;
  std::vector<BigInt> poincare;
};

struct Verdict {
  Status formal = Status::NotApplicable;
  Status equivariantly_formal = Status::NotApplicable;
  Route route = Route::SplittingCor01;
  std::optional<SplittingWitness> witness;
  std::vector<BigInt> poincare;           // of G/K; empty when unknown/ambiguous
  std::vector<BigInt> elliptic_poincare;  // of the positively elliptic factor
  std::vector<DegreeCandidate> candidates;  // degree-reasoning only
  std::vector<std::string> notes;
};

struct Budget {
  std::chrono::steady_clock::time_point deadline;
  static Budget seconds(double s) {
    return {std::chrono::steady_clock::now() +
            std::chrono::microseconds(static_cast<long long>(s * 1e6))};
  }
  bool expired() const { return std::chrono::steady_clock::now() > deadline; }
};

// Searches size-(rk K) subsets for a regular system (degree-matched subsets
// first, then lexicographic), then certifies the leftovers by nested ideal
// membership. Returns nothing when the search exhausts or the budget expires.
std::optional<SplittingWitness> find_splitting(const CartanModel& m, const Budget& budget);

// Formality via the splitting; fills poincare and the elliptic cross-checks.
Verdict check_formality(const CartanModel& m, const Budget& budget);

// Equivariant formality routes on top of an established splitting. The
// witness for nonzero redundant images is the constant-coefficient subalgebra
// expression (telescoping closed lift on the Borel model) or, failing that,
// membership of psi(u)-psi(w) in the doubled-ring difference ideal.
Verdict check_equivariant_formality(const CartanModel& m, const Verdict& formality,
                                    const Budget& budget);

// Full pipeline: build, formality, equivariant formality.
Verdict decide(const CartanModel& m, const Budget& budget);

struct DegreeFacts {
  // the degree-4 generator of H*(BG) restricts onto the degree-4 generator of
  // H*(BK) (pullback of the Killing form); always on for simple compact pairs
  bool killing_form = true;
  std::vector<std::pair<int, int>> forced;  // (K degree, G degree) extra pins
};

// Degree-only prover: enumerates injective pure-power assignments consistent
// with the degree lists; succeeds when every assignment splits with the
// leftover images forced to zero by degree impossibility.
Verdict degree_reasoning_check(const std::vector<int>& g_degrees,
                               const std::vector<int>& k_degrees, const DegreeFacts& facts);

// Doubled-base model of the Borel construction of the isotropy action:
// d(v_j) = psi_j(u) - psi_j(w) with u the fiber copy and w the base copy.
struct BorelModel {
  int base_vars = 0;  // rank K; the doubled ring has 2*base_vars variables
  std::vector<int> fiber_degrees;
  std::vector<Polynomial> differentials;  // in 2*base_vars variables
};

BorelModel build_borel_model(const CartanModel& m);

// A finitely generated pure differential algebra: graded polynomial ring
// tensor an exterior algebra with polynomial differential images.
struct PureDga {
  int poly_vars = 0;
  std::vector<int> poly_var_degrees;   // even; degree 2 for torus coordinates
  std::vector<int> generator_degrees;  // odd
  std::vector<Polynomial> images;
};

// Rewrites the images as polynomials in K's invariant generators (the honest
// H*(BK) presentation); SAGBI-style leading-term subtraction with a dense
// linear-algebra fallback.
std::vector<Polynomial> images_in_invariants(const CartanModel& m);

// The model of G/K over H*(BK) on invariant generator variables.
PureDga fiber_dga(const CartanModel& m);
// The same data over the torus ring: the model of G/T_K, which drives the
// surjectivity oracle (the K-action and its maximal-torus action agree).
PureDga torus_fiber_dga(const CartanModel& m);
PureDga borel_dga(const BorelModel& b);

struct OracleLimits {
  int max_total_degree = 40;
  long long max_basis_per_degree = 20000;
};

// Exact cohomology dimensions per degree 0..N by linear algebra on the graded
// pieces; the independent check behind every reported Poincare polynomial.
std::vector<BigInt> dga_cohomology_upto(const PureDga& dga, int n, const OracleLimits& lim = {});

// First-principles equivariant-formality check: restricts Borel cocycles to
// the fiber model and verifies surjectivity onto H*(fiber) degree by degree.
// Runs over the doubled torus ring (the maximal-torus reduction).
bool verify_fiber_surjectivity(const CartanModel& m, int n, const OracleLimits& lim = {});

// The same check over doubled invariant-generator variables, i.e. literally
// H*(BK) (x) H*(BK) (x) H*(G); equivalent and much smaller for large ranks.
bool verify_fiber_surjectivity_invariant(const CartanModel& m, int n,
                                         const OracleLimits& lim = {});

// Estimated largest per-degree basis size (to decide oracle applicability).
long long max_slice_dimension(const PureDga& dga, int n);

std::string format_poincare(const std::vector<BigInt>& coeffs);  // "1 + q^5"

}  // namespace cartanmodel

#endif
