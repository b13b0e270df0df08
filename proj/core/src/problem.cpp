#include <trfds/problem.hpp>

#include <trfds/errors.hpp>

#include <utility>

namespace trfds {

Problem::Problem(Init init)
    : n_(init.dimension),
      objective_(std::move(init.objective)),
      exact_gradient_(std::move(init.exact_gradient)),
      set_(std::move(init.feasible_set)),
      unrelaxable_(init.unrelaxable),
      x0_(std::move(init.x0)),
      name_(std::move(init.name)),
      lipschitz_(init.lipschitz),
      f_star_(init.f_star),
      pl_constant_(init.pl_constant),
      state_(std::make_unique<TranscriptState>()) {
  require(n_ >= 1, "problem dimension must be positive");
  require(static_cast<bool>(objective_), "problem needs an objective oracle");
  require(x0_.size() == n_, "x0 dimension mismatch");
  require(set_.matches_dimension(n_), "feasible set dimension mismatch");
  if (!set_.contains(x0_)) x0_ = set_.project(x0_);
}

double Problem::evaluate(const Vector& x) const {
  if (x.size() != n_) throw std::invalid_argument("evaluate: dimension mismatch");
  const bool feasible = set_.contains(x);
  if (unrelaxable_ && !feasible)
    throw InfeasibleEvaluationError("evaluate: infeasible point on an unrelaxable problem (" + name_ + ")");
  const double value = objective_(x);
  {
    std::lock_guard<std::mutex> lock(state_->mutex);
    state_->transcript.records.push_back({x, value, feasible});
  }
  return value;
}

Vector Problem::exact_gradient(const Vector& x) const {
  if (!exact_gradient_)
    throw std::invalid_argument("problem '" + name_ + "' has no exact gradient oracle");
  if (x.size() != n_) throw std::invalid_argument("exact_gradient: dimension mismatch");
  return exact_gradient_(x);
}

long Problem::eval_count() const {
  std::lock_guard<std::mutex> lock(state_->mutex);
  return state_->transcript.count();
}

OracleTranscript Problem::transcript() const {
  std::lock_guard<std::mutex> lock(state_->mutex);
  return state_->transcript;
}

} // namespace trfds
