#pragma once

#include <functional>
#include <string>
#include <vector>

#include "speedcheck/timing.hpp"

namespace speedcheck {

// How to execute one benchmark variant: the command is spawned runs
// times, each as a fresh process, strictly one after another.
struct RunPlan {
  std::string benchmark_id;
  std::string variant;
  std::vector<std::string> command;  // argv, resolved through PATH
  int runs = 30;
  double cooldown_seconds = 0.0;  // slept between consecutive runs
  std::string working_dir;        // empty: inherit
  double timeout_seconds = 3600.0;  // per run, must be positive
};

// Called after each completed run with the 1-based index, the measured
// wall-clock seconds and the capture timestamp of that run.
using RunObserver =
    std::function<void(int run_index, double seconds, const std::string& captured_at)>;

// Capture host metadata: hostname, OS, processor model, the size and an
// order-independent fingerprint of the process environment, and the
// 1-minute load average.
EnvironmentRecord capture_environment();

// Execute the plan. Each run spawns a fresh process image and measures
// wall-clock time on the monotonic clock from just before the spawn to
// child exit, recorded with microsecond resolution. Runs are strictly
// sequential. A nonzero child exit aborts the plan (BenchmarkFailed); a
// run exceeding the timeout is killed (RunTimedOut); a command that
// cannot be spawned raises LaunchFailed.
TimingSample execute_plan(const RunPlan& plan, const RunObserver& on_run = {});

// Advisory warnings about plans whose runs may not be independent or
// numerous enough for the downstream statistics.
std::vector<std::string> warn_independence(const RunPlan& plan);

// Host-wide advisory lock serializing plan execution: concurrent plans
// perturb each other's measurements. Callers that accept the
// interference may simply not take the lock.
class HostLock {
 public:
  HostLock();
  ~HostLock();

  HostLock(const HostLock&) = delete;
  HostLock& operator=(const HostLock&) = delete;

  bool try_acquire();
  void release();

 private:
  int fd_ = -1;
  bool held_ = false;
};

}  // namespace speedcheck
