#pragma once

#include <trfds/problem.hpp>
#include <trfds/types.hpp>

#include <memory>
#include <string>

namespace trfds {

/// Objective oracle backed by an external program speaking a line
/// protocol: each request writes one line of space-separated decimal
/// coordinates to the child's stdin, and the child answers with one
/// decimal objective value per line on stdout.
///
/// The child is spawned once (via /bin/sh -c) and kept alive for the
/// oracle's lifetime; every evaluate performs one request/response round
/// trip. Non-numeric or non-finite responses, child exit, and response
/// timeouts raise OracleProtocolError.
class SubprocessOracle {
public:
  explicit SubprocessOracle(std::string command, double timeout_seconds = 60.0);
  ~SubprocessOracle();

  SubprocessOracle(const SubprocessOracle&) = delete;
  SubprocessOracle& operator=(const SubprocessOracle&) = delete;

  double operator()(const Vector& x);

  const std::string& command() const { return command_; }

private:
  std::string read_line();

  std::string command_;
  double timeout_seconds_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

/// Wraps a subprocess oracle as a Problem objective. The returned functor
/// owns the child process; copies share it.
Problem::Objective subprocess_oracle(std::string command, double timeout_seconds = 60.0);

} // namespace trfds
