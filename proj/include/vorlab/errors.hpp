// Error types used across the library. Each named condition from the
// module contracts gets its own exception class so callers can test for it.
#pragma once
#include <stdexcept>
#include <string>

namespace vorlab {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define VORLAB_ERROR(Name)                                                   \
    struct Name : Error {                                                    \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

VORLAB_ERROR(EvenNodeCount);
VORLAB_ERROR(BadParameter);
VORLAB_ERROR(ShapeMismatch);
VORLAB_ERROR(WeightOverflow);
VORLAB_ERROR(NonzeroTrace);
VORLAB_ERROR(SolverDivergence);
VORLAB_ERROR(LobesOverlap);
VORLAB_ERROR(RestrictionTooSmall);
VORLAB_ERROR(NearSingular);
VORLAB_ERROR(IterativeNoConvergence);
VORLAB_ERROR(CircleHitsSpectrum);
VORLAB_ERROR(SeriesDiverges);
VORLAB_ERROR(NoIsolatedEigenvalue);
VORLAB_ERROR(LayerUnderResolved);
VORLAB_ERROR(CFLViolated);
VORLAB_ERROR(BlowUp);
VORLAB_ERROR(WindowTooShort);
VORLAB_ERROR(ConfigError);

#undef VORLAB_ERROR

inline void require(bool cond, const std::string& what) {
    if (!cond) throw Error(what);
}

}  // namespace vorlab
