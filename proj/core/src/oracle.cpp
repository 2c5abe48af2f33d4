// Copyright 2026 The abc-fuzz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "abcfuzz/oracle.hpp"

#include <fcntl.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <sstream>
#include <thread>
#include <utility>

#include "abcfuzz/errors.hpp"
#include "abcfuzz/text.hpp"

extern char** environ;

namespace abcfuzz {

namespace {

std::vector<std::string> split_command(const std::string& command) {
  std::istringstream in{command};
  std::vector<std::string> words;
  for (std::string word; in >> word;) {
    words.push_back(std::move(word));
  }
  return words;
}

std::string serialize(const Particle& p) {
  std::string out;
  for (const double x : p.values()) {
    out += format_double(x);
    out += '\n';
  }
  return out;
}

class FileDescriptor {
 public:
  explicit FileDescriptor(int fd = -1) noexcept : fd_{fd} {}
  FileDescriptor(const FileDescriptor&) = delete;
  FileDescriptor& operator=(const FileDescriptor&) = delete;
  FileDescriptor(FileDescriptor&& other) noexcept : fd_{std::exchange(other.fd_, -1)} {}
  FileDescriptor& operator=(FileDescriptor&&) = delete;
  ~FileDescriptor() { reset(); }

  [[nodiscard]] int get() const noexcept { return fd_; }
  void reset() noexcept {
    if (fd_ >= 0) {
      ::close(fd_);
      fd_ = -1;
    }
  }

 private:
  int fd_;
};

std::string errno_message(const std::string& what, int err) { return what + ": " + std::strerror(err); }

/// Pipe whose buffer already holds the whole payload, so the child can be
/// started after the write end is closed and no SIGPIPE can reach us.
FileDescriptor make_stdin_pipe(const std::string& payload) {
  int fds[2];
  if (::pipe2(fds, O_CLOEXEC) != 0) {
    throw EnvironmentError(errno_message("pipe", errno));
  }
  FileDescriptor read_end{fds[0]};
  FileDescriptor write_end{fds[1]};

  const auto size = static_cast<long>(payload.size());
  if (::fcntl(write_end.get(), F_GETPIPE_SZ) < size && ::fcntl(write_end.get(), F_SETPIPE_SZ, size) < size) {
    throw EnvironmentError("particle of " + std::to_string(payload.size()) + " bytes does not fit in a pipe buffer");
  }
  std::size_t written = 0;
  while (written < payload.size()) {
    const auto n = ::write(write_end.get(), payload.data() + written, payload.size() - written);
    if (n < 0) {
      if (errno == EINTR) {
        continue;
      }
      throw EnvironmentError(errno_message("write to oracle pipe", errno));
    }
    written += static_cast<std::size_t>(n);
  }
  return read_end;
}

}  // namespace

OracleVerdict range_oracle_evaluate(const Particle& p, const RangeOracleConfig& cfg) {
  if (cfg.dimension >= p.dims()) {
    throw UsageError("oracle dimension " + std::to_string(cfg.dimension) + " is out of range for a particle of " +
                     std::to_string(p.dims()) + " dimensions");
  }
  const double x = p[cfg.dimension];
  return OracleVerdict{cfg.low <= x && x <= cfg.high};
}

OracleVerdict external_oracle_evaluate(const Particle& p, const ExternalOracleConfig& cfg) {
  cfg.validate();
  const auto words = split_command(cfg.command);
  std::vector<char*> argv;
  argv.reserve(words.size() + 1);
  for (const auto& w : words) {
    argv.push_back(const_cast<char*>(w.c_str()));
  }
  argv.push_back(nullptr);

  FileDescriptor child_stdin = make_stdin_pipe(serialize(p));

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, child_stdin.get(), STDIN_FILENO);
  pid_t pid = 0;
  const int rc = ::posix_spawnp(&pid, argv[0], &actions, nullptr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  child_stdin.reset();
  if (rc != 0) {
    throw EnvironmentError(errno_message("cannot start oracle '" + words.front() + "'", rc));
  }

  using clock = std::chrono::steady_clock;
  const auto deadline = clock::now() + std::chrono::duration<double>(cfg.timeout_seconds);
  auto pause = std::chrono::microseconds{50};
  int status = 0;
  while (true) {
    const pid_t done = ::waitpid(pid, &status, WNOHANG);
    if (done == pid) {
      break;
    }
    if (done < 0 && errno != EINTR) {
      throw EnvironmentError(errno_message("waitpid", errno));
    }
    if (clock::now() >= deadline) {
      ::kill(pid, SIGKILL);
      ::waitpid(pid, &status, 0);
      throw TimeoutError("oracle '" + words.front() + "' exceeded its " + format_double(cfg.timeout_seconds) +
                         " s timeout");
    }
    std::this_thread::sleep_for(pause);
    pause = std::min(pause * 2, std::chrono::microseconds{5000});
  }
  return OracleVerdict{WIFEXITED(status) && WEXITSTATUS(status) == 0};
}

RangeOracle::RangeOracle(RangeOracleConfig cfg) : cfg_{cfg} { cfg_.validate(); }

std::string RangeOracle::describe() const {
  return "range[" + format_double(cfg_.low) + ", " + format_double(cfg_.high) + "] on x" +
         std::to_string(cfg_.dimension);
}

OracleVerdict RangeOracle::do_evaluate(const Particle& p) const { return range_oracle_evaluate(p, cfg_); }

ExternalOracle::ExternalOracle(ExternalOracleConfig cfg) : cfg_{std::move(cfg)} { cfg_.validate(); }

std::string ExternalOracle::describe() const { return "exec:" + cfg_.command; }

OracleVerdict ExternalOracle::do_evaluate(const Particle& p) const { return external_oracle_evaluate(p, cfg_); }

std::unique_ptr<Oracle> make_oracle(const OracleSpec& spec) {
  if (spec.kind == OracleKind::kExternal) {
    return std::make_unique<ExternalOracle>(spec.external);
  }
  return std::make_unique<RangeOracle>(spec.range);
}

std::size_t count_passing(const ParticleSet& set, const Oracle& oracle) {
  return static_cast<std::size_t>(
      std::count_if(set.begin(), set.end(), [&](const Particle& p) { return oracle.evaluate(p).passed; }));
}

double pass_rate(const ParticleSet& set, const Oracle& oracle) {
  if (set.empty()) {
    throw UsageError("pass_rate of an empty particle set");
  }
  return static_cast<double>(count_passing(set, oracle)) / static_cast<double>(set.size());
}

}  // namespace abcfuzz
