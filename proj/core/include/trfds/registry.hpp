#pragma once

#include <trfds/problem.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace trfds {

/// Names of all built-in problems, in registration order.
std::vector<std::string> registry_names();

/// Builds a fresh instance of a built-in problem (each instance has its
/// own transcript). Throws std::invalid_argument for unknown names.
Problem make_problem(const std::string& name);

/// Same, but with the feasible set replaced (x0 re-projected). Used for
/// the box-constrained benchmark variants.
Problem make_problem(const std::string& name, FeasibleSet set, bool unrelaxable);

/// f(x) = sum x_i^2 from x0 = (1,...,1). L = 2, mu = 2, f* = 0.
Problem make_sphere(Index n);

/// Convex quadratic f(x) = 0.5 x^T A x with A = Q diag(eigenvalues) Q^T
/// for a seeded random orthogonal Q. L = max eigenvalue, mu = min
/// eigenvalue, f* = 0 at the origin.
Problem make_quadratic(const std::string& name, const Vector& eigenvalues, std::uint64_t seed);

/// The 2-D Rosenbrock function from (-1.2, 1).
Problem make_rosenbrock();

/// Names of the built-in More-Wild least-squares subset.
std::vector<std::string> more_wild_names();

} // namespace trfds
