#pragma once

#include <stdexcept>
#include <string>

namespace speedcheck {

enum class Errc {
  EmptySample,
  ZeroVariance,
  UnsupportedSampleSize,
  InvalidArgument,
  MismatchedInput,
  NothingToAggregate,
  InvalidTiming,
  GuardViolated,
  LaunchFailed,
  BenchmarkFailed,
  RunTimedOut,
  ParseError,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Raised when a benchmark child process exits nonzero. run_index is 1-based.
class BenchmarkFailedError : public Error {
 public:
  BenchmarkFailedError(int run_index, int exit_status, const std::string& message)
      : Error(Errc::BenchmarkFailed, message),
        run_index_(run_index),
        exit_status_(exit_status) {}

  int run_index() const noexcept { return run_index_; }
  int exit_status() const noexcept { return exit_status_; }

 private:
  int run_index_;
  int exit_status_;
};

class RunTimedOutError : public Error {
 public:
  RunTimedOutError(int run_index, const std::string& message)
      : Error(Errc::RunTimedOut, message), run_index_(run_index) {}

  int run_index() const noexcept { return run_index_; }

 private:
  int run_index_;
};

}  // namespace speedcheck
