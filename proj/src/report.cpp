#include "homformal/report.hpp"

#include <sstream>
#include <stdexcept>

namespace report {

int Report::count_yes() const {
  int n = 0;
  for (const auto& r : records)
    if (r.formal == "yes" && r.equivariant == "yes") ++n;
  return n;
}

int Report::count_inconclusive() const {
  int n = 0;
  for (const auto& r : records)
    if (r.formal != "yes" || r.equivariant != "yes") ++n;
  return n;
}

std::string Report::emit() const {
  std::ostringstream os;
  os << "homformal-report 1\n";
  os << "bounds: " << bounds << "\n";
  os << "instances: " << records.size() << "\n";
  os << "all-yes: " << (all_yes() ? "yes" : "no") << "\n";
  for (const auto& r : records) {
    os << "instance: " << r.space << "\n";
    os << "  family: " << r.family << "\n";
    os << "  tag: " << r.tag << "\n";
    os << "  expected-route: " << r.expected_route << "\n";
    os << "  route: " << r.route << "\n";
    os << "  formal: " << r.formal << "\n";
    os << "  equivariantly-formal: " << r.equivariant << "\n";
    os << "  poincare: " << r.poincare << "\n";
    os << "  euler: " << r.euler << "\n";
    os << "  oracle: " << r.oracle << "\n";
    os << "  surjectivity: " << r.surjectivity << "\n";
    os << "  transfer: " << r.transfer << "\n";
    os << "  witness: " << r.witness << "\n";
    os << "  notes: " << r.notes << "\n";
    os << "  time-ms: " << r.time_ms << "\n";
  }
  os << "end-report\n";
  return os.str();
}

namespace {

std::string expect_field(const std::string& line, const std::string& key) {
  std::string prefix = key + ": ";
  size_t at = line.find(prefix);
  if (at == std::string::npos)
    throw std::invalid_argument("report parse: expected '" + key + "' in '" + line + "'");
  return line.substr(at + prefix.size());
}

}  // namespace

Report Report::parse(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  Report rep;
  if (!std::getline(is, line) || line != "homformal-report 1")
    throw std::invalid_argument("report parse: bad header");
  std::getline(is, line);
  rep.bounds = expect_field(line, "bounds");
  std::getline(is, line);
  size_t n = std::stoul(expect_field(line, "instances"));
  std::getline(is, line);  // all-yes (recomputed)
  for (size_t i = 0; i < n; ++i) {
    InstanceRecord r;
    std::getline(is, line);
    r.space = expect_field(line, "instance");
    std::getline(is, line);
    r.family = expect_field(line, "family");
    std::getline(is, line);
    r.tag = expect_field(line, "tag");
    std::getline(is, line);
    r.expected_route = expect_field(line, "expected-route");
    std::getline(is, line);
    r.route = expect_field(line, "route");
    std::getline(is, line);
    r.formal = expect_field(line, "formal");
    std::getline(is, line);
    r.equivariant = expect_field(line, "equivariantly-formal");
    std::getline(is, line);
    r.poincare = expect_field(line, "poincare");
    std::getline(is, line);
    r.euler = expect_field(line, "euler");
    std::getline(is, line);
    r.oracle = expect_field(line, "oracle");
    std::getline(is, line);
    r.surjectivity = expect_field(line, "surjectivity");
    std::getline(is, line);
    r.transfer = expect_field(line, "transfer");
    std::getline(is, line);
    r.witness = expect_field(line, "witness");
    std::getline(is, line);
    r.notes = expect_field(line, "notes");
    std::getline(is, line);
    r.time_ms = std::stoll(expect_field(line, "time-ms"));
    rep.records.push_back(std::move(r));
  }
  std::getline(is, line);
  if (line != "end-report") throw std::invalid_argument("report parse: missing end marker");
  return rep;
}

std::string Report::table() const {
  std::ostringstream os;
  size_t w = 10;
  for (const auto& r : records) w = std::max(w, r.space.size());
  os << "space";
  os << std::string(w - 4, ' ') << "route                  formal  equivariant  time\n";
  for (const auto& r : records) {
    os << r.space << std::string(w + 1 - r.space.size(), ' ');
    std::string route = r.route;
    route.resize(22, ' ');
    os << route << " " << (r.formal == "yes" ? "yes    " : "NO     ") << " "
       << (r.equivariant == "yes" ? "yes        " : "NO         ") << "  " << r.time_ms
       << " ms\n";
  }
  os << records.size() << " instances, " << count_yes() << " verified formal + equivariantly formal, "
     << count_inconclusive() << " inconclusive\n";
  return os.str();
}

}  // namespace report
