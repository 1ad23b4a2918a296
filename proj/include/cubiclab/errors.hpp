#pragma once

#include <stdexcept>
#include <string>

namespace cubiclab {

/// Base of every domain error raised by the library. `name()` is the stable
/// identifier reported by the CLI (e.g. "DegenerateParameter").
class CubicError : public std::runtime_error
{
public:
  CubicError(std::string name, const std::string& what)
    : std::runtime_error(what), name_(std::move(name))
  {
  }

  const std::string& name() const noexcept { return name_; }

private:
  std::string name_;
};

#define CUBICLAB_DEFINE_ERROR(Name)                                                 \
  class Name : public CubicError                                                    \
  {                                                                                 \
  public:                                                                           \
    explicit Name(const std::string& what) : CubicError(#Name, what) {}             \
  };

CUBICLAB_DEFINE_ERROR(DegenerateParameter)
CUBICLAB_DEFINE_ERROR(DomainError)
CUBICLAB_DEFINE_ERROR(RankError)
CUBICLAB_DEFINE_ERROR(NotOnHessian)
CUBICLAB_DEFINE_ERROR(NotOnCurve)
CUBICLAB_DEFINE_ERROR(NotOnBoundary)
CUBICLAB_DEFINE_ERROR(UnknownBranch)
CUBICLAB_DEFINE_ERROR(IdenticalPoints)
CUBICLAB_DEFINE_ERROR(NoConvergence)
CUBICLAB_DEFINE_ERROR(HypothesisFailed)
CUBICLAB_DEFINE_ERROR(AtInfinity)

#undef CUBICLAB_DEFINE_ERROR

} // namespace cubiclab
