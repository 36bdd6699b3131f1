#ifndef HOMFORMAL_REPORT_HPP
#define HOMFORMAL_REPORT_HPP

#include <string>
#include <vector>

namespace report {

// One catalog instance's verdict row. All fields are canonical strings so the
// structured emission round-trips byte-for-byte.
struct InstanceRecord {
  std::string family;
  std::string space;    // "G/K"
  std::string tag;
  std::string expected_route;
  std::string route;
  std::string formal;          // yes | no-witness-found | not-applicable
  std::string equivariant;     // same values
  std::string poincare;        // "1 + q^5" or "-"
  std::string euler;           // "6" or "-"
  std::string oracle;          // cohomology oracle outcome
  std::string surjectivity;    // Borel surjectivity outcome
  std::string transfer;        // "-> G/K formal=yes ef=yes" or "-"
  std::string witness;         // compact witness summary or "-"
  std::string notes;           // "; "-joined
  long long time_ms = 0;
};

struct Report {
  std::string bounds;
  std::vector<InstanceRecord> records;

  int count_yes() const;
  int count_inconclusive() const;
  bool all_yes() const { return count_inconclusive() == 0 && !records.empty(); }

  std::string emit() const;               // canonical structured text
  static Report parse(const std::string& text);
  std::string table() const;              // human-readable summary
};

}  // namespace report

#endif
