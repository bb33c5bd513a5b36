#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "proftune/params.hpp"
#include "proftune/testbed.hpp"

namespace proftune {

struct SolverSettings {
  double epsilon = 1e-12;              // stop once the mesh drops below this
  std::int64_t max_evaluations = 10000;
  std::uint64_t seed = 0;
};

void validate(const SolverSettings& s);

enum class Termination { MeshConverged, BudgetExhausted };

std::string_view to_string(Termination t);
Termination termination_from_string(std::string_view s);

struct Breakpoint {
  std::int64_t evaluation;  // 1-based
  double best;

  bool operator==(const Breakpoint&) const = default;
};

/// Best-so-far objective value as a step function of the evaluation count.
/// A breakpoint is recorded each time the best value strictly decreases.
struct RunTrace {
  std::string problem;
  std::uint64_t config_fingerprint = 0;
  std::uint64_t seed = 0;
  std::vector<Breakpoint> breakpoints;
  std::int64_t total_evaluations = 0;
  Termination termination = Termination::BudgetExhausted;

  double final_best() const { return breakpoints.back().best; }

  bool operator==(const RunTrace&) const = default;
};

/// Throws std::invalid_argument if the breakpoint list is malformed.
void validate(const RunTrace& trace);

/// Evaluation count to reach a cut-off, or nullopt when it was never reached.
using EvalCount = std::optional<std::int64_t>;

/// Randomized direct search on a variable-meshsize grid.
///
/// Each iteration polls the 2n directions +-b_k of a random orthonormal basis,
/// scaled per coordinate by mesh * (upper - lower) / 10 and projected onto the
/// box. The inertia direction (normalized mean of the last `q.inertia`
/// successful steps) leads the basis when it exists. A candidate is accepted
/// as soon as f(x) - f(y) >= eta * mesh^2; the mesh then grows to
/// min(alpha * mesh, gamma * delta), otherwise it shrinks by beta after a full
/// unsuccessful poll. The run stops once mesh < epsilon or the evaluation
/// budget is spent.
///
/// The random stream depends only on (settings.seed, problem.name), so two
/// configurations see the same sequence of poll bases.
RunTrace solve(const Problem& problem, const ParamConfig& q, const SolverSettings& settings);

/// Smallest evaluation index whose best-so-far value is <= cutoff.
EvalCount evals_to_target(const RunTrace& trace, double cutoff);

/// Text record: a `problem,config_hash,seed,total_evals,termination` line,
/// then one `eval_index,best_f` line per breakpoint (best_f with %.17g).
void write_trace(std::ostream& os, const RunTrace& trace);
std::string format_trace(const RunTrace& trace);
/// Throws std::invalid_argument on any malformed or inconsistent content.
RunTrace parse_trace(std::string_view text);

}  // namespace proftune
