#include "cubiclab/rng.hpp"
#include "cubiclab/verify.hpp"

#include <cstdio>

int main()
{
  const auto results = cubiclab::run_acceptance(cubiclab::default_seed());
  int failed = 0;
  for (const auto& r : results) {
    std::printf("%s %2d %s: %s\n", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(), r.detail.c_str());
    failed += r.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(results.size()) - failed, results.size());
  return failed == 0 ? 0 : 1;
}
