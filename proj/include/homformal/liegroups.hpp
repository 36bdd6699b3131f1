#ifndef HOMFORMAL_LIEGROUPS_HPP
#define HOMFORMAL_LIEGROUPS_HPP

#include <optional>
#include <string>
#include <vector>

#include "homformal/polynomial.hpp"

namespace liegroups {

using exactpoly::BigInt;
using exactpoly::IntMatrix;
using exactpoly::Polynomial;

// One simple (or torus) factor of a compact group. S(U(a1)...U(ak)) is kept
// as a single factor since its determinant condition couples the blocks.
enum class FactorKind { SU, SO, Sp, U, SUProduct, Torus, E6, E7, E8, F4, G2 };

struct GroupFactor {
  FactorKind kind;
  int n = 0;               // the classical parameter / torus rank
  std::vector<int> blocks; // SUProduct block sizes
  bool spin_label = false; // parsed as Spin(n); data identical to SO(n)

  bool exceptional() const;
  int rank() const;
  int ambient_rank() const;   // torus coordinates before eliminating traces
  int dimension() const;
  BigInt weyl_order() const;
  std::string label() const;
};

// Weyl legality classes for signed permutations on an ambient block.
enum class WeylBlockType { PermOnly, AllSigns, EvenSigns, Fixed };

struct WeylBlock {
  int offset, size;
  WeylBlockType type;
};

// Compact group data: rank, generator degrees of H*(BG), and (for classical
// types) the Weyl-invariant generator polynomials in the reduced torus
// coordinates. Spin(n) carries SO(n) data; coverings are invisible here.
struct GroupDatum {
  std::string label;
  std::vector<GroupFactor> factors;
  int rank = 0;
  int ambient_rank = 0;
  std::vector<int> generator_degrees;            // cohomological, per generator
  bool explicit_mode = false;
  std::vector<Polynomial> invariant_generators;  // reduced coords (rank vars)
  std::vector<Polynomial> ambient_generators;    // ambient coords, same order

  struct TraceConstraint {
    std::vector<int> indices;  // ambient coordinate set summing to zero
    int eliminated;            // the member expressed through the others
  };
  std::vector<TraceConstraint> constraints;

  // substitution matrix: ambient variable -> linear form in reduced variables
  IntMatrix reduction;

  int dimension() const;
  BigInt weyl_order() const;
  std::vector<WeylBlock> weyl_blocks() const;
  bool is_trivial() const { return rank == 0; }
};

// Parses the ASCII grammar SU(n) | SO(n) | Sp(n) | U(n) | Spin(n) |
// S(U(a)U(b)...) | T^k | E6|E7|E8|F4|G2, products joined with 'x'.
// Throws std::invalid_argument with a descriptive message on unknown labels.
GroupDatum make_group(const std::string& label, int max_rank = 12);

// Integer matrix with rows indexed by the big group's ambient torus
// coordinates and columns by the subgroup's; row i is the image of the i-th
// coordinate restricted to the subgroup torus.
struct TorusMap {
  IntMatrix matrix;

  int source_rank() const { return static_cast<int>(matrix.size()); }
  int target_rank() const {
    return matrix.empty() ? 0 : static_cast<int>(matrix[0].size());
  }
};

TorusMap compose(const TorusMap& outer, const TorusMap& inner);

// Standard embedding constructors (see the catalog recipes).
TorusMap embedding_identity(int n);
TorusMap embedding_block(FactorKind family, const std::vector<int>& sizes);
TorusMap embedding_double_block(FactorKind family, int n);
TorusMap embedding_real_in_complex(int n);
TorusMap embedding_real_in_quaternionic(int n);
TorusMap embedding_quaternionic_in_real(int n);
TorusMap embedding_complex_in_real(int n);
TorusMap embedding_complex_in_quaternionic(int n);
TorusMap embedding_quaternionic_in_complex(int n);
TorusMap product_map(const std::vector<TorusMap>& maps);  // block diagonal
TorusMap double_into_product(const TorusMap& m);          // stack [m; m]

// Restricts a map's target coordinates to the subgroup's reduced coordinates.
TorusMap reduce_target(const TorusMap& m, const GroupDatum& target);

// Signed permutation of ambient torus coordinates: variable i maps to
// sign[i] * variable perm[i].
struct WeylElement {
  std::vector<int> perm;
  std::vector<int> sign;

  IntMatrix substitution() const;
  WeylElement inverse() const;
  bool legal_for(const GroupDatum& g) const;
  bool is_identity() const;
};

struct WeylSearchResult {
  std::optional<WeylElement> witness;
  long long candidates_tried = 0;
};

// Exhaustive search over the legal signed permutations of G for w with
// w . image(map1) = image(map2) as subspaces; lexicographically least witness.
// Maps must be given on the targets' reduced coordinates (full column rank).
// Throws BoundExceeded when the ambient rank exceeds the cap.
WeylSearchResult weyl_orbit_search(const GroupDatum& g, const TorusMap& map1,
                                   const TorusMap& map2, int rank_cap = 8);

struct BoundExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Embedding recipe language used by the catalog and the CLI, e.g.
//   compose(block(SU; 2n, 2m), product(quaternionic-in-complex(n),
//                                      quaternionic-in-complex(m)))
// Arguments are linear expressions in named integer parameters.
TorusMap parse_recipe(const std::string& text,
                      const std::vector<std::pair<std::string, int>>& params);

}  // namespace liegroups

#endif
