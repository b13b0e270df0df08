#include <trfds/subprocess_oracle.hpp>

#include <trfds/errors.hpp>

#include <cerrno>
#include <cmath>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <mutex>

#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace trfds {

namespace {

void ignore_sigpipe_once() {
  // A dying child must surface as a write error, not a fatal signal.
  static std::once_flag flag;
  std::call_once(flag, [] {
    struct sigaction sa{};
    if (sigaction(SIGPIPE, nullptr, &sa) == 0 && sa.sa_handler == SIG_DFL) {
      sa.sa_handler = SIG_IGN;
      sigaction(SIGPIPE, &sa, nullptr);
    }
  });
}

void write_all(int fd, const char* data, size_t len, const std::string& cmd) {
  size_t off = 0;
  while (off < len) {
    const ssize_t n = ::write(fd, data + off, len - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw OracleProtocolError("oracle process not accepting input: " + cmd);
    }
    off += static_cast<size_t>(n);
  }
}

} // namespace

SubprocessOracle::SubprocessOracle(std::string command, double timeout_seconds)
    : command_(std::move(command)), timeout_seconds_(timeout_seconds) {
  ignore_sigpipe_once();

  int in_pipe[2];   // parent -> child stdin
  int out_pipe[2];  // child stdout -> parent
  if (::pipe(in_pipe) != 0) throw OracleProtocolError("pipe() failed");
  if (::pipe(out_pipe) != 0) {
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    throw OracleProtocolError("pipe() failed");
  }

  pid_ = ::fork();
  if (pid_ < 0) throw OracleProtocolError("fork() failed");
  if (pid_ == 0) {
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    ::close(out_pipe[0]);
    ::close(out_pipe[1]);
    ::execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
}

SubprocessOracle::~SubprocessOracle() {
  if (to_child_ >= 0) ::close(to_child_);
  if (from_child_ >= 0) ::close(from_child_);
  if (pid_ > 0) {
    int status = 0;
    if (::waitpid(pid_, &status, WNOHANG) == 0) {
      ::kill(pid_, SIGKILL);
      ::waitpid(pid_, &status, 0);
    }
  }
}

std::string SubprocessOracle::read_line() {
  for (;;) {
    const auto pos = buffer_.find('\n');
    if (pos != std::string::npos) {
      std::string line = buffer_.substr(0, pos);
      buffer_.erase(0, pos + 1);
      return line;
    }
    struct pollfd pfd{from_child_, POLLIN, 0};
    const int timeout_ms = static_cast<int>(timeout_seconds_ * 1000.0);
    const int rc = ::poll(&pfd, 1, timeout_ms);
    if (rc == 0)
      throw OracleProtocolError("oracle response timed out after " +
                                std::to_string(timeout_seconds_) + " s: " + command_);
    if (rc < 0) {
      if (errno == EINTR) continue;
      throw OracleProtocolError("poll() failed on oracle pipe");
    }
    char chunk[4096];
    const ssize_t n = ::read(from_child_, chunk, sizeof(chunk));
    if (n < 0) {
      if (errno == EINTR) continue;
      throw OracleProtocolError("read() failed on oracle pipe");
    }
    if (n == 0) throw OracleProtocolError("oracle process exited: " + command_);
    buffer_.append(chunk, static_cast<size_t>(n));
  }
}

double SubprocessOracle::operator()(const Vector& x) {
  std::string request;
  char num[64];
  for (Index i = 0; i < x.size(); ++i) {
    std::snprintf(num, sizeof(num), "%.17g", x[i]);
    if (i > 0) request += ' ';
    request += num;
  }
  request += '\n';
  write_all(to_child_, request.data(), request.size(), command_);

  const std::string line = read_line();
  const char* begin = line.c_str();
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(begin, &end);
  while (end && *end != '\0' && std::isspace(static_cast<unsigned char>(*end))) ++end;
  if (end == begin || (end && *end != '\0') || errno == ERANGE || !std::isfinite(value))
    throw OracleProtocolError("oracle returned a non-numeric value: '" + line + "'");
  return value;
}

Problem::Objective subprocess_oracle(std::string command, double timeout_seconds) {
  auto oracle = std::make_shared<SubprocessOracle>(std::move(command), timeout_seconds);
  return [oracle](const Vector& x) { return (*oracle)(x); };
}

} // namespace trfds
