#include "speedcheck/harness.hpp"

#include <fcntl.h>
#include <spawn.h>
#include <sys/file.h>
#include <sys/utsname.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <thread>

extern char** environ;

namespace speedcheck {

namespace {

std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Snap to the 6-decimal grid the timing files use, so values survive a
// serialize/parse round trip unchanged.
double snap_seconds(double seconds) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", seconds);
  return std::strtod(buf, nullptr);
}

std::string read_cpu_model() {
  std::ifstream cpuinfo("/proc/cpuinfo");
  std::string line;
  while (std::getline(cpuinfo, line)) {
    if (line.rfind("model name", 0) == 0) {
      const std::size_t colon = line.find(':');
      if (colon != std::string::npos) {
        std::size_t start = line.find_first_not_of(" \t", colon + 1);
        if (start != std::string::npos) return line.substr(start);
      }
    }
  }
  utsname un{};
  if (uname(&un) == 0) return un.machine;
  return "unknown";
}

std::uint64_t fnv1a64(std::uint64_t h, const char* data, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) {
    h ^= static_cast<unsigned char>(data[i]);
    h *= 1099511628211ULL;
  }
  return h;
}

struct SpawnOutcome {
  int exit_status = 0;
  double seconds = 0.0;
  bool timed_out = false;
};

// Spawn argv, wait for it with a timeout, and measure wall-clock time
// around spawn and exit on the monotonic clock.
SpawnOutcome spawn_and_wait(const std::vector<std::string>& argv,
                            const std::string& working_dir, double timeout_seconds) {
  std::vector<char*> raw;
  raw.reserve(argv.size() + 1);
  for (const std::string& arg : argv) raw.push_back(const_cast<char*>(arg.c_str()));
  raw.push_back(nullptr);

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  if (!working_dir.empty()) {
    posix_spawn_file_actions_addchdir_np(&actions, working_dir.c_str());
  }

  const auto start = std::chrono::steady_clock::now();
  pid_t pid = -1;
  const int spawn_rc =
      posix_spawnp(&pid, raw[0], &actions, nullptr, raw.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  if (spawn_rc != 0) {
    throw Error(Errc::LaunchFailed, "cannot launch '" + argv[0] +
                                        "': " + std::strerror(spawn_rc));
  }

  // Poll for exit with exponential backoff capped at 1 ms, which bounds
  // the extra latency added to the measurement.
  SpawnOutcome outcome;
  std::chrono::microseconds backoff(100);
  for (;;) {
    int status = 0;
    const pid_t reaped = waitpid(pid, &status, WNOHANG);
    const auto elapsed = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - start);
    if (reaped == pid) {
      outcome.seconds = elapsed.count();
      outcome.exit_status =
          WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
      return outcome;
    }
    if (reaped < 0) {
      throw Error(Errc::LaunchFailed,
                  std::string("waitpid failed: ") + std::strerror(errno));
    }
    if (elapsed.count() > timeout_seconds) {
      kill(pid, SIGKILL);
      waitpid(pid, &status, 0);
      outcome.timed_out = true;
      outcome.seconds = elapsed.count();
      return outcome;
    }
    std::this_thread::sleep_for(backoff);
    backoff = std::min(backoff * 2, std::chrono::microseconds(1000));
  }
}

double calibrate_spawn_overhead() {
  try {
    const SpawnOutcome outcome = spawn_and_wait({"true"}, "", 10.0);
    if (!outcome.timed_out && outcome.exit_status == 0) {
      return snap_seconds(outcome.seconds);
    }
  } catch (const Error&) {
    // No no-op binary available; record nothing.
  }
  return 0.0;
}

void validate(const RunPlan& plan) {
  if (plan.benchmark_id.empty() || plan.variant.empty()) {
    throw Error(Errc::InvalidArgument, "plan needs a benchmark id and a variant");
  }
  if (plan.command.empty()) {
    throw Error(Errc::InvalidArgument, "plan has no command");
  }
  if (plan.runs < 1) {
    throw Error(Errc::InvalidArgument, "plan needs at least one run");
  }
  if (!(plan.timeout_seconds > 0.0)) {
    throw Error(Errc::InvalidArgument, "per-run timeout must be positive");
  }
  if (plan.cooldown_seconds < 0.0) {
    throw Error(Errc::InvalidArgument, "cooldown must not be negative");
  }
}

}  // namespace

EnvironmentRecord capture_environment() {
  EnvironmentRecord record;

  char host[256] = {};
  if (gethostname(host, sizeof host - 1) == 0) record.host = host;

  utsname un{};
  if (uname(&un) == 0) {
    record.os = std::string(un.sysname) + " " + un.release;
  }
  record.cpu_model = read_cpu_model();
  record.captured_at = iso8601_utc_now();

  std::vector<std::string_view> entries;
  std::size_t bytes = 0;
  for (char** e = environ; e != nullptr && *e != nullptr; ++e) {
    entries.emplace_back(*e);
    bytes += std::strlen(*e);
  }
  std::sort(entries.begin(), entries.end());
  std::uint64_t h = 1469598103934665603ULL;
  for (std::string_view entry : entries) {
    h = fnv1a64(h, entry.data(), entry.size());
    h = fnv1a64(h, "\n", 1);
  }
  record.env_bytes = bytes;
  char hex[32];
  std::snprintf(hex, sizeof hex, "fnv1a64:%016" PRIx64, h);
  record.env_hash = hex;

  double loads[1] = {0.0};
  if (getloadavg(loads, 1) == 1) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", loads[0]);
    record.load1 = std::strtod(buf, nullptr);
  }
  return record;
}

TimingSample execute_plan(const RunPlan& plan, const RunObserver& on_run) {
  validate(plan);

  EnvironmentRecord environment = capture_environment();
  environment.spawn_overhead_seconds = calibrate_spawn_overhead();

  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(plan.runs));
  for (int run = 1; run <= plan.runs; ++run) {
    const std::string stamp = iso8601_utc_now();
    const SpawnOutcome outcome =
        spawn_and_wait(plan.command, plan.working_dir, plan.timeout_seconds);
    if (outcome.timed_out) {
      throw RunTimedOutError(run, "run " + std::to_string(run) + " of '" +
                                      plan.benchmark_id + "' exceeded " +
                                      std::to_string(plan.timeout_seconds) + " s");
    }
    if (outcome.exit_status != 0) {
      throw BenchmarkFailedError(
          run, outcome.exit_status,
          "run " + std::to_string(run) + " of '" + plan.benchmark_id +
              "' exited with status " + std::to_string(outcome.exit_status));
    }
    const double seconds = snap_seconds(outcome.seconds);
    times.push_back(seconds);
    if (on_run) on_run(run, seconds, stamp);
    if (plan.cooldown_seconds > 0.0 && run < plan.runs) {
      std::this_thread::sleep_for(std::chrono::duration<double>(plan.cooldown_seconds));
    }
  }

  TimingSample sample;
  sample.benchmark_id = plan.benchmark_id;
  sample.variant = plan.variant;
  sample.times = stats::Sample(std::move(times));
  sample.metadata = environment;
  return sample;
}

std::vector<std::string> warn_independence(const RunPlan& plan) {
  std::vector<std::string> warnings;
  if (plan.cooldown_seconds == 0.0) {
    warnings.push_back(warning::kBackToBackRuns);
  }
  if (plan.runs < kDefaultMinRuns) {
    warnings.push_back(warning::kLowRunCount);
  }
  return warnings;
}

HostLock::HostLock() {
  char path[128];
  std::snprintf(path, sizeof path, "/tmp/speedcheck-%u.lock",
                static_cast<unsigned>(getuid()));
  fd_ = ::open(path, O_CREAT | O_RDWR | O_CLOEXEC, 0600);
}

HostLock::~HostLock() {
  release();
  if (fd_ >= 0) ::close(fd_);
}

bool HostLock::try_acquire() {
  if (fd_ < 0) return true;  // lock file unavailable; do not block execution
  if (held_) return true;
  held_ = ::flock(fd_, LOCK_EX | LOCK_NB) == 0;
  return held_;
}

void HostLock::release() {
  if (held_ && fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    held_ = false;
  }
}

}  // namespace speedcheck
