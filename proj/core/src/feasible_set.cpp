#include <trfds/feasible_set.hpp>

#include <trfds/errors.hpp>

#include <cmath>

namespace trfds {

FeasibleSet FeasibleSet::all_space() {
  FeasibleSet s;
  s.kind_ = Kind::AllSpace;
  return s;
}

FeasibleSet FeasibleSet::ball(Vector center, double radius) {
  require(radius > 0.0, "ball radius must be positive");
  require(center.allFinite(), "ball center must be finite");
  FeasibleSet s;
  s.kind_ = Kind::Ball;
  s.center_ = std::move(center);
  s.radius_ = radius;
  return s;
}

FeasibleSet FeasibleSet::box(Vector lower, Vector upper) {
  require(lower.size() == upper.size(), "box bounds must share a dimension");
  for (Index i = 0; i < lower.size(); ++i) {
    require(lower[i] < upper[i], "box requires lower < upper componentwise");
    require(!std::isnan(lower[i]) && !std::isnan(upper[i]), "box bounds must not be NaN");
  }
  FeasibleSet s;
  s.kind_ = Kind::Box;
  s.lower_ = std::move(lower);
  s.upper_ = std::move(upper);
  return s;
}

Vector FeasibleSet::project(const Vector& x) const {
  switch (kind_) {
    case Kind::AllSpace:
      return x;
    case Kind::Ball: {
      require(x.size() == center_.size(), "dimension mismatch in project");
      Vector d = x - center_;
      const double nrm = d.norm();
      if (nrm <= radius_) return x;
      return center_ + (radius_ / nrm) * d;
    }
    case Kind::Box: {
      require(x.size() == lower_.size(), "dimension mismatch in project");
      return x.cwiseMax(lower_).cwiseMin(upper_);
    }
  }
  return x;
}

bool FeasibleSet::contains(const Vector& x) const {
  switch (kind_) {
    case Kind::AllSpace:
      return true;
    case Kind::Ball: {
      require(x.size() == center_.size(), "dimension mismatch in contains");
      return (x - center_).norm() <= radius_ * (1.0 + 1e-12);
    }
    case Kind::Box: {
      require(x.size() == lower_.size(), "dimension mismatch in contains");
      for (Index i = 0; i < x.size(); ++i)
        if (x[i] < lower_[i] || x[i] > upper_[i]) return false;
      return true;
    }
  }
  return true;
}

bool FeasibleSet::matches_dimension(Index n) const {
  switch (kind_) {
    case Kind::AllSpace: return true;
    case Kind::Ball: return center_.size() == n;
    case Kind::Box: return lower_.size() == n;
  }
  return false;
}

} // namespace trfds
