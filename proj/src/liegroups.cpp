#include "homformal/liegroups.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "homformal/linalg.hpp"

namespace liegroups {

using exactpoly::Monomial;
using exactpoly::Rational;

bool GroupFactor::exceptional() const {
  switch (kind) {
    case FactorKind::E6:
    case FactorKind::E7:
    case FactorKind::E8:
    case FactorKind::F4:
    case FactorKind::G2: return true;
    default: return false;
  }
}

int GroupFactor::rank() const {
  switch (kind) {
    case FactorKind::SU: return n - 1;
    case FactorKind::SO: return n / 2;
    case FactorKind::Sp: return n;
    case FactorKind::U: return n;
    case FactorKind::SUProduct:
      return std::accumulate(blocks.begin(), blocks.end(), 0) - 1;
    case FactorKind::Torus: return n;
    case FactorKind::E6: return 6;
    case FactorKind::E7: return 7;
    case FactorKind::E8: return 8;
    case FactorKind::F4: return 4;
    case FactorKind::G2: return 2;
  }
  return 0;
}

int GroupFactor::ambient_rank() const {
  switch (kind) {
    case FactorKind::SU: return n;
    case FactorKind::SUProduct: return std::accumulate(blocks.begin(), blocks.end(), 0);
    default: return rank();
  }
}

int GroupFactor::dimension() const {
  switch (kind) {
    case FactorKind::SU: return n * n - 1;
    case FactorKind::SO: return n * (n - 1) / 2;
    case FactorKind::Sp: return n * (2 * n + 1);
    case FactorKind::U: return n * n;
    case FactorKind::SUProduct: {
      int d = -1;
      for (int a : blocks) d += a * a;
      return d;
    }
    case FactorKind::Torus: return n;
    case FactorKind::E6: return 78;
    case FactorKind::E7: return 133;
    case FactorKind::E8: return 248;
    case FactorKind::F4: return 52;
    case FactorKind::G2: return 14;
  }
  return 0;
}

namespace {
BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}
BigInt pow2(int n) {
  BigInt p = 1;
  for (int i = 0; i < n; ++i) p *= 2;
  return p;
}
}  // namespace

BigInt GroupFactor::weyl_order() const {
  switch (kind) {
    case FactorKind::SU: return factorial(n);
    case FactorKind::U: return factorial(n);
    case FactorKind::SUProduct: {
      BigInt w = 1;
      for (int a : blocks) w *= factorial(a);
      return w;
    }
    case FactorKind::SO:
      if (n % 2 == 1) return pow2(n / 2) * factorial(n / 2);
      return n / 2 >= 1 ? pow2(n / 2 - 1) * factorial(n / 2) : BigInt(1);
    case FactorKind::Sp: return pow2(n) * factorial(n);
    case FactorKind::Torus: return 1;
    case FactorKind::E6: return 51840;
    case FactorKind::E7: return 2903040;
    case FactorKind::E8: return BigInt(696729600);
    case FactorKind::F4: return 1152;
    case FactorKind::G2: return 12;
  }
  return 1;
}

std::string GroupFactor::label() const {
  switch (kind) {
    case FactorKind::SU: return "SU(" + std::to_string(n) + ")";
    case FactorKind::SO:
      return (spin_label ? "Spin(" : "SO(") + std::to_string(n) + ")";
    case FactorKind::Sp: return "Sp(" + std::to_string(n) + ")";
    case FactorKind::U: return "U(" + std::to_string(n) + ")";
    case FactorKind::SUProduct: {
      std::string s = "S(";
      for (int a : blocks) s += "U(" + std::to_string(a) + ")";
      return s + ")";
    }
    case FactorKind::Torus: return "T^" + std::to_string(n);
    case FactorKind::E6: return "E6";
    case FactorKind::E7: return "E7";
    case FactorKind::E8: return "E8";
    case FactorKind::F4: return "F4";
    case FactorKind::G2: return "G2";
  }
  return "?";
}

int GroupDatum::dimension() const {
  int d = 0;
  for (const auto& f : factors) d += f.dimension();
  return d;
}

BigInt GroupDatum::weyl_order() const {
  BigInt w = 1;
  for (const auto& f : factors) w *= f.weyl_order();
  return w;
}

std::vector<WeylBlock> GroupDatum::weyl_blocks() const {
  std::vector<WeylBlock> out;
  int off = 0;
  for (const auto& f : factors) {
    switch (f.kind) {
      case FactorKind::SU:
        out.push_back({off, f.n, WeylBlockType::PermOnly});
        break;
      case FactorKind::U:
        out.push_back({off, f.n, WeylBlockType::PermOnly});
        break;
      case FactorKind::SUProduct: {
        int o = off;
        for (int a : f.blocks) {
          out.push_back({o, a, WeylBlockType::PermOnly});
          o += a;
        }
        break;
      }
      case FactorKind::SO:
        if (f.n % 2 == 1)
          out.push_back({off, f.n / 2, WeylBlockType::AllSigns});
        else if (f.n / 2 == 1)
          out.push_back({off, 1, WeylBlockType::Fixed});
        else if (f.n / 2 >= 2)
          out.push_back({off, f.n / 2, WeylBlockType::EvenSigns});
        break;
      case FactorKind::Sp:
        out.push_back({off, f.n, WeylBlockType::AllSigns});
        break;
      case FactorKind::Torus:
        out.push_back({off, f.n, WeylBlockType::Fixed});
        break;
      default:
        out.push_back({off, f.ambient_rank(), WeylBlockType::Fixed});
        break;
    }
    off += f.ambient_rank();
  }
  return out;
}

// ---------------------------------------------------------------- parsing

namespace {

struct LabelParser {
  const std::string& s;
  size_t i = 0;
  explicit LabelParser(const std::string& str) : s(str) {}

  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("unknown group label '" + s + "': " + why);
  }
  bool consume(const std::string& tok) {
    if (s.compare(i, tok.size(), tok) == 0) {
      i += tok.size();
      return true;
    }
    return false;
  }
  int number() {
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) fail("expected a number");
    return std::stoi(s.substr(start, i - start));
  }

  GroupFactor factor() {
    GroupFactor f;
    if (consume("SU(")) {
      f.kind = FactorKind::SU;
      f.n = number();
      if (!consume(")")) fail("expected ')'");
      if (f.n < 1) fail("SU parameter must be positive");
    } else if (consume("Spin(")) {
      f.kind = FactorKind::SO;
      f.spin_label = true;
      f.n = number();
      if (!consume(")")) fail("expected ')'");
      if (f.n < 1) fail("Spin parameter must be positive");
    } else if (consume("SO(")) {
      f.kind = FactorKind::SO;
      f.n = number();
      if (!consume(")")) fail("expected ')'");
      if (f.n < 1) fail("SO parameter must be positive");
    } else if (consume("Sp(")) {
      f.kind = FactorKind::Sp;
      f.n = number();
      if (!consume(")")) fail("expected ')'");
      if (f.n < 1) fail("Sp parameter must be positive");
    } else if (consume("U(")) {
      f.kind = FactorKind::U;
      f.n = number();
      if (!consume(")")) fail("expected ')'");
      if (f.n < 1) fail("U parameter must be positive");
    } else if (consume("S(")) {
      f.kind = FactorKind::SUProduct;
      while (consume("U(")) {
        int a = number();
        if (!consume(")")) fail("expected ')'");
        if (a < 1) fail("U block must be positive");
        f.blocks.push_back(a);
      }
      if (!consume(")")) fail("expected ')' closing S(...)");
      if (f.blocks.empty()) fail("S(...) needs at least one U block");
    } else if (consume("T^")) {
      f.kind = FactorKind::Torus;
      f.n = number();
      if (f.n < 0) fail("torus rank must be nonnegative");
    } else if (consume("T")) {
      f.kind = FactorKind::Torus;
      f.n = 1;
    } else if (consume("E6")) {
      f.kind = FactorKind::E6;
    } else if (consume("E7")) {
      f.kind = FactorKind::E7;
    } else if (consume("E8")) {
      f.kind = FactorKind::E8;
    } else if (consume("F4")) {
      f.kind = FactorKind::F4;
    } else if (consume("G2")) {
      f.kind = FactorKind::G2;
    } else {
      fail("unrecognized factor");
    }
    return f;
  }
};

std::vector<int> range_vars(int offset, int count) {
  std::vector<int> v(count);
  std::iota(v.begin(), v.end(), offset);
  return v;
}

}  // namespace

GroupDatum make_group(const std::string& raw_label, int max_rank) {
  std::string label;
  for (char c : raw_label)
    if (!std::isspace(static_cast<unsigned char>(c))) label += c;

  GroupDatum g;
  LabelParser p(label);
  while (true) {
    g.factors.push_back(p.factor());
    if (p.i >= label.size()) break;
    if (!p.consume("x")) p.fail("expected 'x' between factors");
  }

  g.rank = 0;
  g.ambient_rank = 0;
  g.explicit_mode = true;
  for (const auto& f : g.factors) {
    g.rank += f.rank();
    g.ambient_rank += f.ambient_rank();
    if (f.exceptional()) g.explicit_mode = false;
  }
  if (g.rank > max_rank)
    throw std::invalid_argument("group '" + label + "' exceeds the rank bound " +
                                std::to_string(max_rank));

  // trace constraints & eliminated coordinates
  int off = 0;
  std::vector<bool> eliminated(g.ambient_rank, false);
  for (const auto& f : g.factors) {
    int amb = f.ambient_rank();
    if (f.kind == FactorKind::SU || f.kind == FactorKind::SUProduct) {
      GroupDatum::TraceConstraint c;
      c.indices = range_vars(off, amb);
      c.eliminated = off + amb - 1;
      eliminated[c.eliminated] = true;
      g.constraints.push_back(c);
    }
    off += amb;
  }

  // reduction: ambient variable -> reduced slot, eliminated -> minus the rest
  std::vector<int> slot(g.ambient_rank, -1);
  int next = 0;
  for (int i = 0; i < g.ambient_rank; ++i)
    if (!eliminated[i]) slot[i] = next++;
  g.reduction.assign(g.ambient_rank, std::vector<long long>(g.rank, 0));
  for (int i = 0; i < g.ambient_rank; ++i)
    if (slot[i] >= 0) g.reduction[i][slot[i]] = 1;
  for (const auto& c : g.constraints)
    for (int i : c.indices)
      if (i != c.eliminated) g.reduction[c.eliminated][slot[i]] -= 1;

  // generators, ambient first
  off = 0;
  for (const auto& f : g.factors) {
    int amb = f.ambient_rank();
    auto add = [&](Polynomial poly, int degree) {
      g.ambient_generators.push_back(std::move(poly));
      g.generator_degrees.push_back(degree);
    };
    switch (f.kind) {
      case FactorKind::SU:
        for (int k = 2; k <= f.n; ++k)
          add(exactpoly::elementary_symmetric(g.ambient_rank, k, range_vars(off, f.n), false),
              2 * k);
        break;
      case FactorKind::U:
        for (int k = 1; k <= f.n; ++k)
          add(exactpoly::elementary_symmetric(g.ambient_rank, k, range_vars(off, f.n), false),
              2 * k);
        break;
      case FactorKind::SUProduct: {
        int o = off;
        for (size_t bi = 0; bi < f.blocks.size(); ++bi) {
          int a = f.blocks[bi];
          int kmin = (bi + 1 == f.blocks.size()) ? 2 : 1;
          for (int k = kmin; k <= a; ++k)
            add(exactpoly::elementary_symmetric(g.ambient_rank, k, range_vars(o, a), false),
                2 * k);
          o += a;
        }
        break;
      }
      case FactorKind::SO: {
        int m = f.n / 2;
        if (f.n % 2 == 1) {
          for (int k = 1; k <= m; ++k)
            add(exactpoly::elementary_symmetric(g.ambient_rank, k, range_vars(off, m), true),
                4 * k);
        } else {
          for (int k = 1; k + 1 <= m; ++k)
            add(exactpoly::elementary_symmetric(g.ambient_rank, k, range_vars(off, m), true),
                4 * k);
          if (m >= 1) add(exactpoly::top_class(g.ambient_rank, range_vars(off, m)), 2 * m);
        }
        break;
      }
      case FactorKind::Sp:
        for (int k = 1; k <= f.n; ++k)
          add(exactpoly::elementary_symmetric(g.ambient_rank, k, range_vars(off, f.n), true),
              4 * k);
        break;
      case FactorKind::Torus:
        for (int k = 0; k < f.n; ++k)
          add(exactpoly::Polynomial::variable(g.ambient_rank, off + k), 2);
        break;
      case FactorKind::E6:
        for (int d : {4, 10, 12, 16, 18, 24}) add(Polynomial(g.ambient_rank), d);
        break;
      case FactorKind::E7:
        for (int d : {4, 12, 16, 20, 24, 28, 36}) add(Polynomial(g.ambient_rank), d);
        break;
      case FactorKind::E8:
        for (int d : {4, 16, 24, 28, 36, 40, 48, 60}) add(Polynomial(g.ambient_rank), d);
        break;
      case FactorKind::F4:
        for (int d : {4, 12, 16, 24}) add(Polynomial(g.ambient_rank), d);
        break;
      case FactorKind::G2:
        for (int d : {4, 12}) add(Polynomial(g.ambient_rank), d);
        break;
    }
    off += amb;
  }

  if (g.explicit_mode) {
    for (const auto& ag : g.ambient_generators)
      g.invariant_generators.push_back(exactpoly::substitute_linear(ag, g.reduction));
  } else {
    g.ambient_generators.clear();
  }
  if (static_cast<int>(g.generator_degrees.size()) != g.rank)
    throw std::logic_error("generator count does not match rank for " + label);

  std::string canon;
  for (size_t i = 0; i < g.factors.size(); ++i) {
    if (i) canon += "x";
    canon += g.factors[i].label();
  }
  g.label = canon;
  return g;
}

// ----------------------------------------------------------- torus maps

TorusMap compose(const TorusMap& outer, const TorusMap& inner) {
  if (outer.target_rank() != inner.source_rank())
    throw std::invalid_argument("compose: dimension mismatch");
  int rows = outer.source_rank(), mid = outer.target_rank(), cols = inner.target_rank();
  IntMatrix m(rows, std::vector<long long>(cols, 0));
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < mid; ++k) {
      if (outer.matrix[i][k] == 0) continue;
      for (int j = 0; j < cols; ++j) m[i][j] += outer.matrix[i][k] * inner.matrix[k][j];
    }
  return {m};
}

TorusMap embedding_identity(int n) {
  IntMatrix m(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return {m};
}

TorusMap embedding_block(FactorKind family, const std::vector<int>& sizes) {
  int total = std::accumulate(sizes.begin(), sizes.end(), 0);
  auto amb = [&](int sz) { return family == FactorKind::SO ? sz / 2 : sz; };
  int src = amb(total);
  int dst = 0;
  for (int s : sizes) dst += amb(s);
  if (dst > src) throw std::invalid_argument("embedding_block: incompatible ranks");
  IntMatrix m(src, std::vector<long long>(dst, 0));
  // factor coordinates in order; leftover source coordinates (odd SO blocks
  // merging into extra rotation planes) map to zero
  for (int i = 0; i < dst; ++i) m[i][i] = 1;
  return {m};
}

TorusMap embedding_double_block(FactorKind family, int n) {
  if (family == FactorKind::Sp) {
    IntMatrix m(2 * n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) {
      m[i][i] = 1;
      m[n + i][i] = 1;
    }
    return {m};
  }
  if (family == FactorKind::SO) {
    int src = n;           // rank of SO(2n)
    int dst = n / 2;       // rank of SO(n)
    IntMatrix m(src, std::vector<long long>(dst, 0));
    for (int i = 0; i < dst; ++i) {
      m[i][i] = 1;
      m[dst + i][i] = 1;
    }
    return {m};
  }
  throw std::invalid_argument("embedding_double_block: unsupported family");
}

TorusMap embedding_real_in_complex(int n) {
  int m = n / 2;
  IntMatrix mat(n, std::vector<long long>(m, 0));
  for (int i = 0; i < m; ++i) {
    mat[2 * i][i] = 1;
    mat[2 * i + 1][i] = -1;
  }
  return {mat};
}

TorusMap embedding_real_in_quaternionic(int n) {
  // odd source coordinates feed successive target variables until the target
  // rank is exhausted; even coordinates and an odd leftover go to zero
  int m = n / 2;
  IntMatrix mat(n, std::vector<long long>(m, 0));
  for (int i = 0; i < m; ++i) mat[2 * i][i] = 1;
  return {mat};
}

TorusMap embedding_quaternionic_in_real(int n) {
  IntMatrix mat(2 * n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) {
    mat[2 * i][i] = 1;
    mat[2 * i + 1][i] = -1;
  }
  return {mat};
}

TorusMap embedding_complex_in_real(int n) { return embedding_identity(n); }
TorusMap embedding_complex_in_quaternionic(int n) { return embedding_identity(n); }

TorusMap embedding_quaternionic_in_complex(int n) {
  IntMatrix mat(2 * n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) {
    mat[i][i] = 1;
    mat[n + i][i] = -1;
  }
  return {mat};
}

TorusMap product_map(const std::vector<TorusMap>& maps) {
  int rows = 0, cols = 0;
  for (const auto& m : maps) {
    rows += m.source_rank();
    cols += m.target_rank();
  }
  IntMatrix out(rows, std::vector<long long>(cols, 0));
  int ro = 0, co = 0;
  for (const auto& m : maps) {
    for (int i = 0; i < m.source_rank(); ++i)
      for (int j = 0; j < m.target_rank(); ++j) out[ro + i][co + j] = m.matrix[i][j];
    ro += m.source_rank();
    co += m.target_rank();
  }
  return {out};
}

TorusMap double_into_product(const TorusMap& m) {
  IntMatrix out;
  out.reserve(2 * m.source_rank());
  for (const auto& r : m.matrix) out.push_back(r);
  for (const auto& r : m.matrix) out.push_back(r);
  return {out};
}

TorusMap reduce_target(const TorusMap& m, const GroupDatum& target) {
  if (m.target_rank() != target.ambient_rank)
    throw std::invalid_argument("reduce_target: ambient rank mismatch");
  TorusMap red;
  red.matrix = target.reduction;
  TorusMap wrapped{m.matrix};
  return compose(wrapped, red);
}

// ------------------------------------------------------------- Weyl group

IntMatrix WeylElement::substitution() const {
  int n = static_cast<int>(perm.size());
  IntMatrix m(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) m[i][perm[i]] = sign[i];
  return m;
}

WeylElement WeylElement::inverse() const {
  int n = static_cast<int>(perm.size());
  WeylElement w;
  w.perm.assign(n, 0);
  w.sign.assign(n, 1);
  for (int i = 0; i < n; ++i) {
    w.perm[perm[i]] = i;
    w.sign[perm[i]] = sign[i];
  }
  return w;
}

bool WeylElement::is_identity() const {
  for (size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<int>(i) || sign[i] != 1) return false;
  return true;
}

bool WeylElement::legal_for(const GroupDatum& g) const {
  if (static_cast<int>(perm.size()) != g.ambient_rank) return false;
  for (const auto& b : g.weyl_blocks()) {
    int minus = 0;
    for (int i = b.offset; i < b.offset + b.size; ++i) {
      if (perm[i] < b.offset || perm[i] >= b.offset + b.size) return false;
      if (sign[i] == -1) ++minus;
      if (sign[i] != 1 && sign[i] != -1) return false;
    }
    switch (b.type) {
      case WeylBlockType::PermOnly:
        if (minus) return false;
        break;
      case WeylBlockType::EvenSigns:
        if (minus % 2) return false;
        break;
      case WeylBlockType::Fixed:
        for (int i = b.offset; i < b.offset + b.size; ++i)
          if (perm[i] != i || sign[i] != 1) return false;
        break;
      case WeylBlockType::AllSigns: break;
    }
  }
  return true;
}

WeylSearchResult weyl_orbit_search(const GroupDatum& g, const TorusMap& map1,
                                   const TorusMap& map2, int rank_cap) {
  if (!g.explicit_mode)
    throw std::invalid_argument("weyl_orbit_search: ambient group must be classical");
  if (g.ambient_rank > rank_cap)
    throw BoundExceeded("weyl_orbit_search: ambient rank " + std::to_string(g.ambient_rank) +
                        " exceeds the search bound " + std::to_string(rank_cap));
  if (map1.source_rank() != g.ambient_rank || map2.source_rank() != g.ambient_rank)
    throw std::invalid_argument("weyl_orbit_search: map source rank mismatch");
  if (map1.target_rank() != map2.target_rank())
    throw std::invalid_argument("weyl_orbit_search: target rank mismatch");

  int amb = g.ambient_rank;
  int r = map1.target_rank();
  if (linalg::rank_int(map1.matrix) != r || linalg::rank_int(map2.matrix) != r)
    throw std::invalid_argument("weyl_orbit_search: maps must have full column rank");

  auto kernel = linalg::left_kernel_int(map2.matrix);
  std::vector<std::vector<long long>> e2;
  for (auto& row : kernel) {
    std::vector<long long> r2;
    for (auto& v : row) r2.push_back(static_cast<long long>(v));
    e2.push_back(std::move(r2));
  }

  WeylSearchResult result;
  auto blocks = g.weyl_blocks();

  // candidate check: sum_i e2[e][perm[i]] * sign[i] * b1[i][j] == 0
  auto matches = [&](const std::vector<int>& perm, const std::vector<int>& sign) {
    for (const auto& ke : e2) {
      for (int j = 0; j < r; ++j) {
        long long acc = 0;
        for (int i = 0; i < amb; ++i) acc += ke[perm[i]] * sign[i] * map1.matrix[i][j];
        if (acc != 0) return false;
      }
    }
    return true;
  };

  std::vector<int> perm(amb), sign(amb, 1);
  for (int i = 0; i < amb; ++i) perm[i] = i;

  // lexicographic enumeration: block permutations as nested odometers, then
  // sign patterns (+ before -) subject to the block's legality
  std::function<bool(size_t)> sign_block;
  std::function<bool(size_t)> perm_block = [&](size_t bi) -> bool {
    if (bi == blocks.size()) return sign_block(0);
    const auto& b = blocks[bi];
    if (b.type == WeylBlockType::Fixed || b.size <= 1) {
      return perm_block(bi + 1);
    }
    std::vector<int> ids(b.size);
    std::iota(ids.begin(), ids.end(), b.offset);
    do {
      for (int i = 0; i < b.size; ++i) perm[b.offset + i] = ids[i];
      if (perm_block(bi + 1)) return true;
    } while (std::next_permutation(ids.begin(), ids.end()));
    for (int i = 0; i < b.size; ++i) perm[b.offset + i] = b.offset + i;
    return false;
  };
  sign_block = [&](size_t bi) -> bool {
    if (bi == blocks.size()) {
      ++result.candidates_tried;
      if (matches(perm, sign)) {
        result.witness = WeylElement{perm, sign};
        return true;
      }
      return false;
    }
    const auto& b = blocks[bi];
    if (b.type == WeylBlockType::PermOnly || b.type == WeylBlockType::Fixed) {
      return sign_block(bi + 1);
    }
    for (long long mask = 0; mask < (1LL << b.size); ++mask) {
      int minus = __builtin_popcountll(mask);
      if (b.type == WeylBlockType::EvenSigns && (minus % 2)) continue;
      for (int i = 0; i < b.size; ++i)
        sign[b.offset + i] = (mask >> (b.size - 1 - i)) & 1 ? -1 : 1;
      if (sign_block(bi + 1)) return true;
    }
    for (int i = 0; i < b.size; ++i) sign[b.offset + i] = 1;
    return false;
  };

  perm_block(0);
  return result;
}

// ------------------------------------------------------- embedding recipes

namespace {

struct RecipeParser {
  const std::string& s;
  size_t i = 0;
  const std::vector<std::pair<std::string, int>>& params;

  RecipeParser(const std::string& str, const std::vector<std::pair<std::string, int>>& p)
      : s(str), params(p) {}

  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("malformed embedding recipe '" + s + "': " + why);
  }
  void ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool consume(char c) {
    ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }
  std::string ident() {
    ws();
    size_t start = i;
    while (i < s.size() && (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '-'))
      ++i;
    if (start == i) fail("expected an identifier");
    return s.substr(start, i - start);
  }

  int param_value(const std::string& name) {
    for (const auto& [k, v] : params)
      if (k == name) return v;
    fail("unknown parameter '" + name + "'");
  }

  // linear expressions over the parameters: 2a+2b, n+m, 4, -1, 2*n, ...
  int expr() {
    int total = 0;
    int sign = 1;
    ws();
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    while (true) {
      ws();
      int value = 1;
      bool have_coef = false;
      if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        value = std::stoi(s.substr(start, i - start));
        have_coef = true;
        if (i < s.size() && s[i] == '*') ++i;
      }
      ws();
      if (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) {
        size_t start = i;
        while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) ++i;
        value *= param_value(s.substr(start, i - start));
      } else if (!have_coef) {
        fail("expected a number or parameter");
      }
      total += sign * value;
      ws();
      if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        sign = s[i] == '+' ? 1 : -1;
        ++i;
        continue;
      }
      return total;
    }
  }

  FactorKind family() {
    std::string f = ident();
    if (f == "SO") return FactorKind::SO;
    if (f == "Sp") return FactorKind::Sp;
    if (f == "U") return FactorKind::U;
    if (f == "SU") return FactorKind::SUProduct;  // blocks inside SU(sum)
    fail("unknown block family '" + f + "'");
  }

  TorusMap term() {
    std::string name = ident();
    expect('(');
    TorusMap out;
    if (name == "id") {
      out = embedding_identity(expr());
    } else if (name == "block") {
      FactorKind fam = family();
      expect(';');
      std::vector<int> sizes{expr()};
      while (consume(',')) sizes.push_back(expr());
      out = embedding_block(fam == FactorKind::SUProduct ? FactorKind::U : fam, sizes);
    } else if (name == "double-block") {
      FactorKind fam = family();
      expect(';');
      out = embedding_double_block(fam, expr());
    } else if (name == "real-in-complex") {
      out = embedding_real_in_complex(expr());
    } else if (name == "real-in-quaternionic") {
      out = embedding_real_in_quaternionic(expr());
    } else if (name == "quaternionic-in-real") {
      out = embedding_quaternionic_in_real(expr());
    } else if (name == "complex-in-real") {
      out = embedding_complex_in_real(expr());
    } else if (name == "complex-in-quaternionic") {
      out = embedding_complex_in_quaternionic(expr());
    } else if (name == "quaternionic-in-complex") {
      out = embedding_quaternionic_in_complex(expr());
    } else if (name == "compose") {
      TorusMap a = term();
      expect(',');
      TorusMap b = term();
      out = compose(a, b);
    } else if (name == "product") {
      std::vector<TorusMap> parts{term()};
      while (consume(',')) parts.push_back(term());
      out = product_map(parts);
    } else if (name == "double") {
      out = double_into_product(term());
    } else if (name == "matrix") {
      IntMatrix m;
      while (true) {
        std::string r = ident();
        if (r != "r") fail("matrix rows are written r(...)");
        expect('(');
        std::vector<long long> row{static_cast<long long>(expr())};
        while (consume(',')) row.push_back(expr());
        expect(')');
        m.push_back(row);
        if (!consume(',')) break;
      }
      out = {m};
    } else {
      fail("unknown recipe kind '" + name + "'");
    }
    expect(')');
    return out;
  }
};

}  // namespace

TorusMap parse_recipe(const std::string& text,
                      const std::vector<std::pair<std::string, int>>& params) {
  RecipeParser p(text, params);
  TorusMap m = p.term();
  p.ws();
  if (p.i != text.size()) p.fail("trailing input");
  return m;
}

}  // namespace liegroups
