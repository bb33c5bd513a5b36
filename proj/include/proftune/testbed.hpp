#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace proftune {

using Objective = std::function<double(std::span<const double>)>;

/// A bound-constrained analytic test problem.
///
/// `reference_minimum` is documentation only; the training pipeline always
/// computes its own best value by running the solver.
struct Problem {
  std::string name;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> start;
  Objective objective;
  std::optional<double> reference_minimum;

  std::size_t dimension() const { return start.size(); }
};

struct ProblemSuite {
  std::string name;
  std::vector<Problem> problems;

  std::size_t size() const { return problems.size(); }
};

/// Returns f_p(x). Throws std::invalid_argument on a dimension mismatch.
/// No clipping is applied; the caller guarantees feasibility.
double evaluate(const Problem& problem, std::span<const double> x);

/// Registered suites: "default" (22 problems, n in [2, 12]) and "smoke"
/// (4 problems, n <= 3). Problem order inside a suite is the registry order
/// and never changes. Throws std::invalid_argument for unknown names.
ProblemSuite builtin_suite(std::string_view name);

std::vector<std::string> builtin_suite_names();

/// Throws std::invalid_argument if the problem breaks a structural invariant
/// (bound ordering, start inside the box, finite start value).
void validate(const Problem& problem);

}  // namespace proftune
