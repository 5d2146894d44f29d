#pragma once

#include <stdexcept>
#include <string>

namespace rectsurf {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define RECTSURF_ERROR(Name)                \
  struct Name : Error {                     \
    using Error::Error;                     \
    Name() : Error(#Name) {}                \
  }

RECTSURF_ERROR(NonUnitDeterminant);
RECTSURF_ERROR(NotHyperbolic);
RECTSURF_ERROR(PointOnBoundary);
RECTSURF_ERROR(DegenerateInput);
RECTSURF_ERROR(ImaginaryLPrime);
RECTSURF_ERROR(UnsupportedCase);
RECTSURF_ERROR(NoIntersection);
RECTSURF_ERROR(WrongAngle);
RECTSURF_ERROR(InvalidTiling);
RECTSURF_ERROR(BadParity);
RECTSURF_ERROR(AngleConditionViolated);
RECTSURF_ERROR(ConvergenceFailure);
RECTSURF_ERROR(BranchUnsupported);
RECTSURF_ERROR(MeshFailure);
RECTSURF_ERROR(NotConverged);
RECTSURF_ERROR(DegenerateParameter);
RECTSURF_ERROR(DomainError);
RECTSURF_ERROR(NotBalanced);
RECTSURF_ERROR(MissingMarkers);
RECTSURF_ERROR(NotApplicable);
RECTSURF_ERROR(NoSolution);

#undef RECTSURF_ERROR

}  // namespace rectsurf
