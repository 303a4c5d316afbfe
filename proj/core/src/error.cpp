#include "speedcheck/error.hpp"

namespace speedcheck {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::EmptySample: return "EmptySample";
    case Errc::ZeroVariance: return "ZeroVariance";
    case Errc::UnsupportedSampleSize: return "UnsupportedSampleSize";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::MismatchedInput: return "MismatchedInput";
    case Errc::NothingToAggregate: return "NothingToAggregate";
    case Errc::InvalidTiming: return "InvalidTiming";
    case Errc::GuardViolated: return "GuardViolated";
    case Errc::LaunchFailed: return "LaunchFailed";
    case Errc::BenchmarkFailed: return "BenchmarkFailed";
    case Errc::RunTimedOut: return "RunTimedOut";
    case Errc::ParseError: return "ParseError";
  }
  return "UnknownError";
}

}  // namespace speedcheck
