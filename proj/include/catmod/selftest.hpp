#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "catmod/algebra.hpp"

namespace catmod {

struct SelftestOptions {
  std::vector<Prime> primes;
  std::uint64_t n_bound = 10'000;  // exhaustive oracle range
  std::uint64_t seed = 20170110;   // seeds the random oracle sample
  std::uint64_t random_samples = 1'000;
};

struct SelftestResult {
  std::string summary;  // pass/fail matrix, one row per prime
  bool all_passed = true;
};

/// Runs the oracle, coverage, decomposition, graph, family and density suites
/// for each prime. Output is a function of the options only.
SelftestResult run_selftest(const SelftestOptions& options);

}  // namespace catmod
