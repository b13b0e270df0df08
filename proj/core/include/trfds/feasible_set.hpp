#pragma once

#include <trfds/types.hpp>

namespace trfds {

/// Tagged descriptor of the feasible set: the whole space, a Euclidean
/// ball, or a box (bounds may be +/-inf, but each lower bound must be
/// strictly below its upper bound).
class FeasibleSet {
public:
  enum class Kind { AllSpace, Ball, Box };

  static FeasibleSet all_space();
  static FeasibleSet ball(Vector center, double radius);
  static FeasibleSet box(Vector lower, Vector upper);

  Kind kind() const { return kind_; }

  // Ball accessors (valid only for Kind::Ball).
  const Vector& center() const { return center_; }
  double radius() const { return radius_; }

  // Box accessors (valid only for Kind::Box).
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }

  /// Euclidean projection onto the set. Idempotent and nonexpansive.
  Vector project(const Vector& x) const;

  /// Membership test. Box membership is exact componentwise comparison;
  /// the ball allows a 1e-12 relative slack so that projected points on
  /// the sphere are not rejected by rounding.
  bool contains(const Vector& x) const;

  /// True when the set constrains at most `n`-dimensional vectors of the
  /// given length (AllSpace matches any dimension).
  bool matches_dimension(Index n) const;

private:
  FeasibleSet() = default;

  Kind kind_ = Kind::AllSpace;
  Vector center_, lower_, upper_;
  double radius_ = 0.0;
};

} // namespace trfds
