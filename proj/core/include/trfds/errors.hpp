#pragma once

#include <stdexcept>
#include <string>

namespace trfds {

/// Evaluation request at a point outside an unrelaxable feasible set.
/// Reaching this from inside the solver indicates a solver bug.
class InfeasibleEvaluationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Violation of the external oracle line protocol (bad response, process
/// death, timeout).
class OracleProtocolError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Adaptive ODE integration failed (blow-up or stepsize underflow).
class IntegrationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

} // namespace trfds
