#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace qnls {

// Outcome of one residual check.
struct CheckResult {
  std::string check;
  std::string paper_ref;
  double max_residual = 0.0;
  int samples = 0;
  double tolerance = 0.0;
  bool pass = false;
};

// Builds a result; pass is max_residual < tolerance (NaN fails).
CheckResult make_check(std::string check, std::string paper_ref, double max_residual, int samples, double tolerance);

// Fails when the residual does not exceed the threshold; used for negative controls.
CheckResult make_negative_check(std::string check, std::string paper_ref, double residual, int samples,
                                double threshold);

struct Report {
  std::vector<CheckResult> checks;
  bool pass() const;
  void add(CheckResult c) { checks.push_back(std::move(c)); }
  void append(const Report& other);
};

void to_json(nlohmann::json& j, const CheckResult& c);
void to_json(nlohmann::json& j, const Report& r);

}  // namespace qnls
