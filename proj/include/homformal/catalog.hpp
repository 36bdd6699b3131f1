#ifndef HOMFORMAL_CATALOG_HPP
#define HOMFORMAL_CATALOG_HPP

#include <string>
#include <vector>

#include "homformal/cartanmodel.hpp"
#include "homformal/report.hpp"

namespace catalog {

enum class Tag {
  Direct,
  EqualRank,
  SharedTorus,
  DegreeOnly,
  Torus,
  ProductCase5,
  ProductCase6,
  ProductCase7,
};
std::string tag_name(Tag t);

struct Instance {
  std::string g_label, k_label;
  std::string recipe;  // "-" when no torus-level model is built
  std::string sub_g, sub_k, sub_recipe;  // symmetric factor of a diagonal case
  std::vector<std::pair<std::string, int>> params;
};

struct CatalogEntry {
  std::string id;
  std::string label;
  Tag tag = Tag::Direct;
  std::string expected_route;
  std::string comment;

  // parameterized enumeration
  std::string g_tmpl, k_tmpl, recipe_tmpl;
  std::vector<std::string> param_names;
  std::string order;   // "", "nonincreasing", "a>=b"
  int min_value = 1;
  int maxsum = -1;
  std::string parity;  // "", "any", "at-most-one-odd", "both-odd", "not-both-odd",
                       // "at-least-three-odd", "pattern:o,e,..."
  struct Range {
    bool active = false;
    std::string name;
    int lo = 0, hi = -1, step = 1;
  } range;

  std::vector<Instance> fixed_instances;

  // shared-torus transfer data
  std::string target_g, target_k, target_recipe, target_kind;
  struct Leg {
    std::string ambient, recipe_a, recipe_b;
  };
  std::vector<Leg> legs;
  std::vector<std::string> facts;

  // all instances within the rank bound, in fixed lexicographic order
  std::vector<Instance> instances(int max_rank) const;
};

std::vector<CatalogEntry> parse_catalog(const std::string& text);
const char* default_catalog_text();

// substitutes parameter values into a label/recipe template, evaluating the
// arithmetic inside parentheses ("SU(a+b)" with a=b=2 gives "SU(4)")
std::string eval_template(const std::string& tmpl,
                          const std::vector<std::pair<std::string, int>>& params);

// The primitive checks an entry unfolds into for one instance.
struct PrimitiveCheck {
  enum class Kind {
    DirectModel,          // build + decide; carries the verdict
    EqualRankDegreeOnly,  // rank arithmetic + Euler count (no polynomial data)
    DegreeReasoning,      // degree-only prover on (g, k)
    WeylLeg,              // classical shared-torus witness search
    DeclaredFact,         // conjugacy fact recorded as data
    FreeFactorNote,       // structural free factor of a diagonal case
    SubCheck,             // symmetric factor of a diagonal case (direct)
    ConsistencyModel,     // direct model cross-check of a reduced verdict
  };
  Kind kind;
  std::string g, k, recipe;          // instantiated labels
  std::string ambient, recipe_b;     // Weyl leg data (recipe is the first map)
  std::string text;                  // facts / notes
};

std::vector<PrimitiveCheck> reduce_entry(const CatalogEntry& e, const Instance& inst);

struct RunOptions {
  int max_rank = 8;
  double budget_seconds = 60;       // per instance
  bool run_oracles = true;
  int oracle_max_dimension = 40;
  long long fiber_oracle_cap = 20000;
  long long borel_oracle_cap = 2600;
  int weyl_rank_cap = 8;
};

report::Report run_catalog(const std::vector<CatalogEntry>& entries, const RunOptions& opt);

}  // namespace catalog

#endif
