#include "cubiclab/rng.hpp"

#include <cstdlib>
#include <string>

namespace cubiclab {

std::uint64_t default_seed(std::uint64_t fallback)
{
  const char* env = std::getenv("CUBICLAB_SEED");
  if (env == nullptr || *env == '\0')
    return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  return (end != nullptr && *end == '\0') ? static_cast<std::uint64_t>(v) : fallback;
}

} // namespace cubiclab
