#include "doctest.h"

#include "qnls/suites.hpp"

using namespace qnls;

TEST_CASE("suite names resolve case-insensitively") {
  CHECK(canonical_suite_name("aba") == "ABA");
  CHECK(canonical_suite_name("Daha-Axioms") == "dAHA-axioms");
  CHECK_THROWS_AS(canonical_suite_name("nope"), UnknownSuiteError);
}

TEST_CASE("every suite passes at the default configuration") {
  SuiteConfig cfg;
  cfg.points = 8;
  for (const auto& name : suite_names()) {
    const auto rows = run_suite(name, cfg);
    CHECK(!rows.empty());
    for (const auto& r : rows) {
      CAPTURE(name);
      CAPTURE(r.identity_id);
      CAPTURE(r.n);
      CAPTURE(r.max_residual);
      CAPTURE(r.error);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("suites are deterministic in the seed") {
  SuiteConfig cfg;
  cfg.points = 5;
  const auto a = run_suite("dAHA-axioms", cfg), b = run_suite("dAHA-axioms", cfg);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k].max_residual == b[k].max_residual);
}
