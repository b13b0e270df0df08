#pragma once

#include <trfds/feasible_set.hpp>
#include <trfds/types.hpp>

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace trfds {

/// One objective-oracle invocation.
struct OracleRecord {
  Vector point;
  double value;
  bool feasible;
};

/// Ordered history of every objective invocation. `count()` is exact:
/// it equals the number of times the oracle was called, no more, no less.
struct OracleTranscript {
  std::vector<OracleRecord> records;
  long count() const { return static_cast<long>(records.size()); }
};

/// A black-box minimization problem: all the solver may do is ask for
/// f(x). Immutable after construction except for the evaluation
/// transcript, which is internally synchronized.
class Problem {
public:
  using Objective = std::function<double(const Vector&)>;
  using Gradient = std::function<Vector(const Vector&)>;

  struct Init {
    Index dimension = 0;
    Objective objective;
    Gradient exact_gradient;  // optional; diagnostics/tests only
    FeasibleSet feasible_set = FeasibleSet::all_space();
    bool unrelaxable = false;
    Vector x0;
    std::string name = "problem";
    std::optional<double> lipschitz;    // known L of the gradient
    std::optional<double> f_star;       // known optimal value
    std::optional<double> pl_constant;  // known Polyak-Lojasiewicz mu
  };

  /// Builds the problem; an infeasible x0 is orthogonally projected onto
  /// the feasible set.
  explicit Problem(Init init);

  Problem(Problem&&) noexcept = default;
  Problem& operator=(Problem&&) noexcept = default;

  /// Calls the oracle and appends to the transcript. Throws
  /// InfeasibleEvaluationError when the problem is unrelaxable and x is
  /// outside the feasible set, and std::invalid_argument on a dimension
  /// mismatch.
  double evaluate(const Vector& x) const;

  Index dimension() const { return n_; }
  const FeasibleSet& feasible_set() const { return set_; }
  bool unrelaxable() const { return unrelaxable_; }
  const Vector& x0() const { return x0_; }
  const std::string& name() const { return name_; }
  std::optional<double> lipschitz() const { return lipschitz_; }
  std::optional<double> f_star() const { return f_star_; }
  std::optional<double> pl_constant() const { return pl_constant_; }

  bool has_exact_gradient() const { return static_cast<bool>(exact_gradient_); }
  /// Exact gradient oracle for diagnostics. Throws when absent. Calls are
  /// not recorded in the transcript and do not count as evaluations.
  Vector exact_gradient(const Vector& x) const;

  long eval_count() const;
  OracleTranscript transcript() const;

private:
  Index n_ = 0;
  Objective objective_;
  Gradient exact_gradient_;
  FeasibleSet set_;
  bool unrelaxable_ = false;
  Vector x0_;
  std::string name_;
  std::optional<double> lipschitz_, f_star_, pl_constant_;

  struct TranscriptState {
    mutable std::mutex mutex;
    OracleTranscript transcript;
  };
  std::unique_ptr<TranscriptState> state_;
};

} // namespace trfds
