#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pfk3 {

/// Outcome of one randomized property family.
struct PropertyResult {
  std::string name;
  size_t cases = 0;
  size_t failures = 0;
  std::string first_failure;
  bool ok() const { return cases > 0 && failures == 0; }
};

// Each suite runs `cases` randomized instances from a fixed seed.
PropertyResult ring_axioms(uint64_t seed, size_t cases);
PropertyResult groebner_properties(uint64_t seed, size_t cases);
PropertyResult schwarzian_properties(uint64_t seed, size_t cases);
/// L(f g) vanishes to at least `order` terms for random pairs of second-order equations.
PropertyResult tensor_oracle(uint64_t seed, size_t cases, size_t order);
PropertyResult psi_homogeneity(uint64_t seed, size_t cases);
PropertyResult w_dictionary(uint64_t seed, size_t cases);

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::vector<std::string> details;
  double seconds = 0;
};

struct SuiteOptions {
  uint64_t seed = 20240611;
  int jobs = 1;
  /// Case counts for the property suites (criterion 12).
  size_t algebra_cases = 1000;
  size_t ode_cases = 100;
};

inline constexpr int kCriterionCount = 12;

std::string criterion_title(int id);
/// Runs one criterion; exceptions are caught and reported as a failure.
CriterionResult run_criterion(int id, const SuiteOptions& opts);
/// Runs the given criteria (all when empty); results come back in the requested order.
std::vector<CriterionResult> run_suite(const SuiteOptions& opts, std::vector<int> ids = {});

}  // namespace pfk3
