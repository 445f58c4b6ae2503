#pragma once

#include <stdexcept>
#include <string>

namespace ahm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define AHM_DEFINE_ERROR(Name)                    \
    struct Name : Error {                         \
        using Error::Error;                       \
        Name() : Error(#Name) {}                  \
    }

AHM_DEFINE_ERROR(StencilOutOfDomain);
AHM_DEFINE_ERROR(NotHermitian);
AHM_DEFINE_ERROR(DimensionMismatch);
AHM_DEFINE_ERROR(NonFiniteState);
AHM_DEFINE_ERROR(SampleOutOfDomain);
AHM_DEFINE_ERROR(DegenerateMetric);
AHM_DEFINE_ERROR(SingularSystem);
AHM_DEFINE_ERROR(ZeroVector);
AHM_DEFINE_ERROR(EmptySampleSet);
AHM_DEFINE_ERROR(NonpositiveRadius);
AHM_DEFINE_ERROR(BlowUp);
AHM_DEFINE_ERROR(AtBasePoint);
AHM_DEFINE_ERROR(NearCutLocus);
AHM_DEFINE_ERROR(ShootingFailed);
AHM_DEFINE_ERROR(ImageOutOfTargetChart);
AHM_DEFINE_ERROR(FrameGaugeFailure);
AHM_DEFINE_ERROR(EigenvectorDegenerate);
AHM_DEFINE_ERROR(UnboundedObjective);
AHM_DEFINE_ERROR(ConfigError);

#undef AHM_DEFINE_ERROR

}  // namespace ahm
