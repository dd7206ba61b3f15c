#include <doctest.h>

#include <cstdlib>

#include "qlab/instances.hpp"
#include "qlab/suite.hpp"

using namespace qlab;

namespace {

const std::filesystem::path source_dir = QLAB_SOURCE_DIR;

}  // namespace

TEST_CASE("bundled-only run passes") {
  SuiteOptions options;
  options.directories = {source_dir / "instances"};
  options.max_objects = 0;
  const auto report = run_suite(options);
  CHECK(report.ok());
  CHECK(report.count(CheckStatus::pass) > 100);
  CHECK(report.count(CheckStatus::fail) == 0);
}

TEST_CASE("suite reports are deterministic and sorted") {
  SuiteOptions options;
  options.directories = {source_dir / "instances"};
  options.threads = 4;
  const auto a = run_suite(options);
  options.threads = 1;
  const auto b = run_suite(options);
  CHECK(a.results == b.results);
  CHECK(std::is_sorted(a.results.begin(), a.results.end(), [](const CheckResult& x, const CheckResult& y) {
    return std::tie(x.instance, x.check) < std::tie(y.instance, y.check);
  }));
}

TEST_CASE("counterexample files fail to load") {
  SuiteOptions options;
  options.directories = {source_dir / "counterexamples"};
  options.max_objects = 0;
  const auto report = run_suite(options);
  CHECK_FALSE(report.ok());
  for (const auto& r : report.results) {
    CHECK(r.check == "file.loads");
    CHECK(r.status == CheckStatus::fail);
    CHECK_FALSE(r.witness.empty());
  }
}

TEST_CASE("an exceeded enumeration cap is a skip, not a failure") {
  const auto c = builtin_category("p1@qrel3");
  const auto facts = category_facts(c, 2);
  const auto results = category_checks(facts, 2);
  bool skipped = false;
  for (const auto& r : results) {
    CHECK(r.status != CheckStatus::fail);
    skipped = skipped || r.status == CheckStatus::skipped;
  }
  CHECK(skipped);
}

TEST_CASE("failing checks name their counterexample") {
  // A corrupted flag must be caught by the cross-checks.
  const auto q = builtin_quantaloid("q2");
  auto c = std::make_shared<const QCategory>(order_category(q, FinitePreorder::chain({"x", "y"}), "two@q2"));
  auto facts = category_facts(c, 1000);
  REQUIRE(facts.report.has_value());
  facts.report->cotensored = false;
  bool failed = false;
  for (const auto& r : category_checks(facts, 1000))
    if (r.status == CheckStatus::fail) {
      failed = true;
      CHECK_FALSE(r.witness.empty());
    }
  CHECK(failed);
}
