#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cubiclab {

struct CriterionResult
{
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
};

/// Titles of the acceptance criteria, indexed from 1.
std::vector<std::string> criterion_titles();

/// Run every criterion, or only `which`. Criterion i draws its random
/// samples from SplitMix64(criterion_seed(seed, i)).
std::vector<CriterionResult> run_acceptance(std::uint64_t seed, std::optional<int> which = std::nullopt);

std::uint64_t criterion_seed(std::uint64_t seed, int id);

} // namespace cubiclab
