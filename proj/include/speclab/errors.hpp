// speclab/errors.hpp
//
// Typed failures raised by the library. Verdict-valued operations return
// structs instead; these exceptions mark contract violations.

#pragma once

#include <stdexcept>
#include <string>

namespace speclab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define SPECLAB_DEFINE_ERROR(Name)                       \
  struct Name : Error {                                  \
    explicit Name(const std::string& what) : Error(what) {} \
  }

SPECLAB_DEFINE_ERROR(OddDimension);
SPECLAB_DEFINE_ERROR(NotSkew);
SPECLAB_DEFINE_ERROR(DimensionMismatch);
SPECLAB_DEFINE_ERROR(DegenerateForm);
SPECLAB_DEFINE_ERROR(NotSymmetric);
SPECLAB_DEFINE_ERROR(DegreeMismatch);
SPECLAB_DEFINE_ERROR(ClusteredSpectrum);
SPECLAB_DEFINE_ERROR(UnpairedEigenvalue);
SPECLAB_DEFINE_ERROR(MixedKernelVector);
SPECLAB_DEFINE_ERROR(NoKernel);
SPECLAB_DEFINE_ERROR(SingularGamma);
SPECLAB_DEFINE_ERROR(BadDegreePattern);
SPECLAB_DEFINE_ERROR(NonReduced);
SPECLAB_DEFINE_ERROR(WrongGroup);
SPECLAB_DEFINE_ERROR(NonRegularPoint);
SPECLAB_DEFINE_ERROR(DegeneratePairing);
SPECLAB_DEFINE_ERROR(BadLift);
SPECLAB_DEFINE_ERROR(MOutOfRange);
SPECLAB_DEFINE_ERROR(DegenerateCase);
SPECLAB_DEFINE_ERROR(ConfigError);
SPECLAB_DEFINE_ERROR(SingularMatrix);

#undef SPECLAB_DEFINE_ERROR

}  // namespace speclab
