#pragma once

#include <stdexcept>
#include <string>

namespace qstats {

/// Base class for every error raised by the library. `code()` is the
/// machine-readable tag surfaced by the command-line front end.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    [[nodiscard]] const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define QSTATS_DEFINE_ERROR(Name, tag)                                   \
    class Name : public Error {                                          \
    public:                                                              \
        explicit Name(const std::string& what) : Error(tag, what) {}     \
    }

QSTATS_DEFINE_ERROR(InvalidArgument, "invalid-argument");
QSTATS_DEFINE_ERROR(DegenerateMode, "degenerate-mode");
QSTATS_DEFINE_ERROR(OrderTooLarge, "order-too-large");
QSTATS_DEFINE_ERROR(TruncationError, "truncation-error");
QSTATS_DEFINE_ERROR(NormalizationFailure, "normalization-failure");
QSTATS_DEFINE_ERROR(DivergenceError, "divergence");
QSTATS_DEFINE_ERROR(NonPositiveValue, "non-positive-value");
QSTATS_DEFINE_ERROR(WeightOverflow, "weight-overflow");
QSTATS_DEFINE_ERROR(NonPhysicalCovariance, "non-physical-covariance");
QSTATS_DEFINE_ERROR(AlphaOutOfRange, "alpha-out-of-range");
QSTATS_DEFINE_ERROR(DegenerateGroundState, "degenerate-ground-state");
QSTATS_DEFINE_ERROR(DimensionLimit, "dimension-limit");
QSTATS_DEFINE_ERROR(UnnormalizedState, "unnormalized-state");

#undef QSTATS_DEFINE_ERROR

}  // namespace qstats
