#include "qdyn/report.hpp"

#include <sstream>

namespace qdyn {

CheckReport CheckReport::pass(const std::string& id) {
  CheckReport r;
  r.id = id;
  return r;
}

CheckReport CheckReport::fail(const std::string& id, const std::string& witness) {
  CheckReport r;
  r.id = id;
  r.status = "fail";
  r.witness = witness;
  return r;
}

nlohmann::json CheckReport::to_json() const {
  nlohmann::json j;
  j["id"] = id;
  j["backend"] = backend;
  j["parameters"] = parameters;
  j["status"] = status;
  if (residual) j["residual"] = *residual;
  if (tolerance) j["tolerance"] = *tolerance;
  if (precision_bits) j["precision_bits"] = *precision_bits;
  if (witness) j["witness"] = *witness;
  return j;
}

int SuiteReport::failed() const {
  int n = 0;
  for (const auto& c : checks)
    if (c.status == "fail") ++n;
  return n;
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json j;
  j["schema"] = "qdyn-report/1";
  j["suite"] = suite;
  j["params"] = params;
  j["checks"] = nlohmann::json::array();
  int pass = 0, fail = 0, skip = 0;
  for (const auto& c : checks) {
    j["checks"].push_back(c.to_json());
    if (c.status == "pass")
      ++pass;
    else if (c.status == "fail")
      ++fail;
    else
      ++skip;
  }
  j["passed"] = pass;
  j["failed"] = fail;
  j["skipped"] = skip;
  return j;
}

std::string SuiteReport::table() const {
  std::ostringstream os;
  os << "suite " << suite << "\n";
  for (const auto& c : checks) {
    os << "  " << (c.status == "pass" ? "PASS" : (c.status == "fail" ? "FAIL" : "SKIP")) << "  "
       << c.id;
    if (c.backend == "numeric" && c.residual) {
      std::ostringstream r;
      r.precision(3);
      r << std::scientific << *c.residual;
      os << "  residual=" << r.str();
    }
    if (c.runtime_ms > 0) os << "  (" << c.runtime_ms << " ms)";
    if (c.witness) os << "\n        witness: " << *c.witness;
    os << "\n";
  }
  os << "  " << (failed() == 0 ? "ALL PASS" : std::to_string(failed()) + " FAILED") << " ("
     << checks.size() << " checks)\n";
  return os.str();
}

}  // namespace qdyn
