#pragma once

#include <stdexcept>
#include <string>

namespace homog {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define HOMOG_DEFINE_ERROR(Name)                        \
    struct Name : Error {                               \
        using Error::Error;                             \
        Name() : Error(#Name) {}                        \
    }

HOMOG_DEFINE_ERROR(OutOfFiberBox);
HOMOG_DEFINE_ERROR(NotSuperlinear);
HOMOG_DEFINE_ERROR(InvalidWidth);
HOMOG_DEFINE_ERROR(UnboundedRegion);
HOMOG_DEFINE_ERROR(NonConvexSpec);
HOMOG_DEFINE_ERROR(NoConvergence);
HOMOG_DEFINE_ERROR(DimensionNot1);
HOMOG_DEFINE_ERROR(RootBracketingFailure);
HOMOG_DEFINE_ERROR(CFLViolation);
HOMOG_DEFINE_ERROR(UnstableBlowup);
HOMOG_DEFINE_ERROR(EmptyInput);
HOMOG_DEFINE_ERROR(NonUniformGrid);
HOMOG_DEFINE_ERROR(MinimumOnBoundary);
HOMOG_DEFINE_ERROR(InfeasibleWinding);
HOMOG_DEFINE_ERROR(NotCompactlySupported);
HOMOG_DEFINE_ERROR(QuadratureNotConverged);
HOMOG_DEFINE_ERROR(ExtensionNotVanishing);
HOMOG_DEFINE_ERROR(PlateauNotReached);
HOMOG_DEFINE_ERROR(DeltaTooLarge);
HOMOG_DEFINE_ERROR(CutoffOverlap);
HOMOG_DEFINE_ERROR(SufficiencyViolated);

#undef HOMOG_DEFINE_ERROR

}  // namespace homog
