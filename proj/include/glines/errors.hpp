#pragma once

#include <stdexcept>
#include <string>

namespace glines {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define GLINES_DEFINE_ERROR(Name)                  \
  struct Name : Error {                            \
    using Error::Error;                            \
    explicit Name() : Error(#Name) {}              \
  }

GLINES_DEFINE_ERROR(NonPositiveSpan);
GLINES_DEFINE_ERROR(ZeroSteps);
GLINES_DEFINE_ERROR(OffGrid);
GLINES_DEFINE_ERROR(DegenerateInterval);
GLINES_DEFINE_ERROR(BadIndices);
GLINES_DEFINE_ERROR(DomainMismatch);
GLINES_DEFINE_ERROR(BundleStale);
GLINES_DEFINE_ERROR(TooFewPoints);
GLINES_DEFINE_ERROR(OutOfSpan);
GLINES_DEFINE_ERROR(LayerMissing);
GLINES_DEFINE_ERROR(ScheduleMismatch);
GLINES_DEFINE_ERROR(BadParams);
GLINES_DEFINE_ERROR(PositiveLogWeight);
GLINES_DEFINE_ERROR(AssumptionViolated);
GLINES_DEFINE_ERROR(NotFavorable);
GLINES_DEFINE_ERROR(OracleMissing);
GLINES_DEFINE_ERROR(BadOrdering);
GLINES_DEFINE_ERROR(ConfigParse);

#undef GLINES_DEFINE_ERROR

// Carries rejection diagnostics; see rejection.hpp.
struct MaxAttemptsExceeded : Error {
  long attempts = 0;
  double mean_weight = 0.0;  // running mean of exp(log_weight) over attempts
  MaxAttemptsExceeded(long n, double mw)
      : Error("MaxAttemptsExceeded after " + std::to_string(n) +
              " attempts, mean acceptance weight " + std::to_string(mw)),
        attempts(n),
        mean_weight(mw) {}
};

}  // namespace glines
