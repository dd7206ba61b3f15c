#pragma once

// The invariant catalog: every structural claim about completeness, adjunctions and the
// category/pseudofunctor/module correspondences, run as executable checks.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qlab/completion.hpp"
#include "qlab/qcategory.hpp"
#include "qlab/variation.hpp"

namespace qlab {

enum class CheckStatus { pass, fail, skipped };

std::string_view to_string(CheckStatus status);

struct CheckResult {
  std::string check;
  std::string instance;
  CheckStatus status = CheckStatus::pass;
  std::string witness;

  bool operator==(const CheckResult&) const = default;
};

/// Facts about one category that several checks share.
struct CategoryFacts {
  CategoryPtr category;
  /// Absent when the enumeration cap was hit.
  std::optional<CompletenessReport> report;
  bool skeletal = false;
};

CategoryFacts category_facts(const CategoryPtr& c, std::size_t cap);

std::vector<CheckResult> category_checks(const CategoryFacts& facts, std::size_t cap);
/// Checks over all functors A -> B (and B -> A where adjunctions are involved).
std::vector<CheckResult> functor_pair_checks(const CategoryFacts& a, const CategoryFacts& b, std::size_t cap);
std::vector<CheckResult> pseudofunctor_checks(const std::vector<Pseudofunctor2>& family,
                                              const std::string& instance, std::size_t cap);
std::vector<CheckResult> module_checks(const QModule& m, std::size_t cap);
std::vector<CheckResult> action_checks(const std::vector<QuantaleAction>& family, const std::string& instance);
std::vector<CheckResult> quantaloid_checks(const QuantaloidPtr& q);

struct SuiteOptions {
  /// Instance directories; every file in them is loaded and checked.
  std::vector<std::filesystem::path> directories;
  /// Largest categories in the exhaustive sweep; 0 disables all sweeps.
  std::size_t max_objects = 2;
  /// Largest fiber/carrier in the pseudofunctor and action sweeps.
  std::size_t max_carrier = 3;
  std::vector<std::string> sweep_bases = {"q2", "q3", "qrel3"};
  std::size_t cap = enumeration_cap();
  std::size_t threads = 0;  // 0 = hardware concurrency
};

struct SuiteReport {
  /// Sorted by instance, then check.
  std::vector<CheckResult> results;

  std::size_t count(CheckStatus status) const;
  bool ok() const { return count(CheckStatus::fail) == 0; }
};

SuiteReport run_suite(const SuiteOptions& options);

}  // namespace qlab
