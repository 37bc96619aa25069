#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace qdyn {

// Structured outcome of one relation or identity check.
//
// Exact-backend results carry no tolerance; numeric results carry tolerance,
// precision and the achieved residual.  runtime_ms is excluded from the JSON
// serialization so that identical invocations produce byte-identical reports;
// it appears in the human-readable table only.
struct CheckReport {
  std::string id;
  std::string backend = "exact";  // "exact" | "numeric"
  nlohmann::json parameters = nlohmann::json::object();
  std::string status = "pass";  // "pass" | "fail" | "skipped"
  std::optional<double> residual;
  std::optional<double> tolerance;
  std::optional<int> precision_bits;
  std::optional<std::string> witness;
  long runtime_ms = 0;

  bool passed() const { return status == "pass"; }
  static CheckReport pass(const std::string& id);
  static CheckReport fail(const std::string& id, const std::string& witness);
  CheckReport& with(const std::string& key, const nlohmann::json& v) {
    parameters[key] = v;
    return *this;
  }
  CheckReport& numeric(double res, double tol, int bits) {
    backend = "numeric";
    residual = res;
    tolerance = tol;
    precision_bits = bits;
    if (!(res < tol)) {
      status = "fail";
      if (!witness) witness = "residual " + std::to_string(res) + " above tolerance";
    }
    return *this;
  }

  nlohmann::json to_json() const;
};

struct SuiteReport {
  std::string suite;
  nlohmann::json params = nlohmann::json::object();
  std::vector<CheckReport> checks;

  int failed() const;
  bool all_passed() const { return failed() == 0; }
  nlohmann::json to_json() const;  // schema "qdyn-report/1"
  std::string table() const;      // human-readable, includes runtimes
};

}  // namespace qdyn
