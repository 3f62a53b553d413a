#include "qnls/report.hpp"

#include <algorithm>

namespace qnls {

CheckResult make_check(std::string check, std::string paper_ref, double max_residual, int samples, double tolerance) {
  return {std::move(check), std::move(paper_ref), max_residual, samples, tolerance, max_residual < tolerance};
}

CheckResult make_negative_check(std::string check, std::string paper_ref, double residual, int samples,
                                double threshold) {
  return {std::move(check), std::move(paper_ref), residual, samples, threshold, residual > threshold};
}

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

void Report::append(const Report& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }

void to_json(nlohmann::json& j, const CheckResult& c) {
  j = {{"check", c.check},         {"paper_ref", c.paper_ref}, {"max_residual", c.max_residual},
       {"samples", c.samples},     {"tolerance", c.tolerance}, {"pass", c.pass}};
}

void to_json(nlohmann::json& j, const Report& r) { j = {{"pass", r.pass()}, {"checks", r.checks}}; }

}  // namespace qnls
