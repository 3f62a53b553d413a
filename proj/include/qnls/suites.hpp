#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qnls/report.hpp"

// Named verification suites. Each runs a family of identities on seeded random
// inputs and reports one row per identity and particle number.
namespace qnls {

struct SuiteConfig {
  int n = 2;       // particle number for the operator suites
  int max_n = 3;   // upper particle number for suites that sweep N = 1..max_n
  double gamma = 1.0;
  double L = 10.0;
  std::uint64_t seed = 1;
  int points = 20;  // sample points per pointwise comparison
};

struct IdentityResult {
  std::string identity_id;
  std::string paper_ref;
  int n = 0;
  double gamma = 0.0;
  double L = 0.0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  int samples = 0;
  bool pass = false;
  std::string error;  // set when the check threw instead of producing a residual
};

struct UnknownSuiteError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// dAHA-axioms, wavefunction-routes, QNLS-eigen, ABA, nonsymmetric-YBA,
// Q-operator, appendix-A, appendix-B, oracle-crosscheck.
const std::vector<std::string>& suite_names();

// Case-insensitive lookup; throws UnknownSuiteError.
std::string canonical_suite_name(const std::string& name);

std::vector<IdentityResult> run_suite(const std::string& name, const SuiteConfig& cfg);

bool all_pass(const std::vector<IdentityResult>& rows);

void to_json(nlohmann::json& j, const IdentityResult& r);

}  // namespace qnls
