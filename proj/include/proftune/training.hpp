#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "proftune/meta_solve.hpp"
#include "proftune/params.hpp"
#include "proftune/profiles.hpp"
#include "proftune/solver.hpp"
#include "proftune/testbed.hpp"

namespace proftune {

enum class Strategy { Average, Robust, DataProfile, PerfProfile };

std::string_view to_string(Strategy s);
/// Accepts "average", "robust", "data-profile" / "data", "perf-profile" / "perf".
Strategy strategy_from_string(std::string_view s);
/// Profile strategies are maximized; average and robust are minimized.
bool is_maximized(Strategy s);

struct Window {
  double lo;
  double hi;

  bool operator==(const Window&) const = default;
};

struct CutoffEntry {
  std::string problem;
  std::size_t dimension;
  double f_start;
  double f_star;
  double cutoff;
};

/// Per-problem targets, frozen for a whole training session.
struct CutoffTable {
  double chi;
  std::vector<CutoffEntry> entries;
};

/// c = f_star + chi * (f_start - f_star).
double cutoff_value(double f_start, double f_star, double chi);

using MeasureRow = std::vector<EvalCount>;

using RunProvider =
    std::function<RunTrace(const Problem&, const ParamConfig&, const SolverSettings&)>;

/// Runs the solver directly, no caching.
RunProvider direct_runs();

/// Fans a configuration out over a suite. Runs may execute on up to `jobs`
/// threads; results always come back in suite order.
struct Executor {
  RunProvider runs = direct_runs();
  int jobs = 1;

  std::vector<RunTrace> run_suite(const ProblemSuite& suite, const ParamConfig& q,
                                  const SolverSettings& settings) const;
};

/// Runs q0 once per problem and records f_start, f_star = final best value,
/// and the cut-off. Any run failure propagates.
CutoffTable compute_cutoffs(const ProblemSuite& suite, const ParamConfig& q0, double chi,
                            const SolverSettings& settings, const Executor& exec = {});

/// t_p = evaluations needed to reach the cut-off c_p, nullopt if never.
MeasureRow measure_config(const ProblemSuite& suite, const ParamConfig& q,
                          const CutoffTable& cutoffs, const SolverSettings& settings,
                          const Executor& exec = {});

/// Single-solver (or multi-solver) table over the cut-off problems.
MeasureTable measure_table(const CutoffTable& cutoffs, const std::vector<std::string>& labels,
                           const std::vector<MeasureRow>& rows);

/// Total evaluations over the suite; each failure is charged `budget`.
double phi_average(const MeasureRow& row, std::int64_t budget);

/// Area under the data profile of `row` over the window.
double phi_data(const MeasureRow& row, const CutoffTable& cutoffs, Window window);

/// Area between the performance profiles of q and q0, computed pairwise on
/// the two-solver table {q, q0}. Zero when the rows are identical.
double phi_perf(const MeasureRow& row_q, const MeasureRow& row_q0, const CutoffTable& cutoffs,
                Window window);

/// [0.95 q_i, 1.05 q_i] for continuous coordinates, {q_i} for inertia,
/// intersected with `space`.
ParamSpace robust_box(const ParamConfig& q, const ParamSpace& space);

struct RobustOptions {
  std::int64_t inner_trial_cap = 20;
  double epsilon = 1e-1;
  std::uint64_t seed = 0;
};

/// Approximate max of phi_average over robust_box(q); q itself is always the
/// first inner trial, so the result is >= phi_average(q).
double phi_robust(const ProblemSuite& suite, const ParamConfig& q, const CutoffTable& cutoffs,
                  const ParamSpace& space, const SolverSettings& settings,
                  const RobustOptions& options, const Executor& exec = {});

struct TrainingSpec {
  Strategy strategy = Strategy::Average;
  std::string suite = "default";
  ParamConfig q0 = default_config();
  ParamSpace space = default_space();
  double chi = 1e-4;
  Window data_window{0.0, 2000.0};
  Window perf_window{1.0, 20.0};
  std::int64_t trial_cap = 200;
  double eps_run = 1e-12;    // cut-off and measurement runs
  double eps_train = 1e-2;   // outer parameter search
  double eps_inner = 1e-1;   // inner robust maximization
  std::int64_t inner_trial_cap = 20;
  std::int64_t budget = 10000;
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument when windows, chi, caps or tolerances are out
/// of range, or q0 lies outside the space.
void validate(const TrainingSpec& spec);

struct TrainingResult {
  Strategy strategy = Strategy::Average;
  std::string suite;
  Window data_window{0.0, 2000.0};
  Window perf_window{1.0, 20.0};
  double chi = 1e-4;
  std::uint64_t seed = 0;
  ParamConfig q0;
  ParamConfig trained;
  double objective_q0 = 0.0;
  double objective_trained = 0.0;
  /// Relative reduction for average/robust, raw area increase for profiles.
  double gain = 0.0;
  /// Objective values in their natural sign.
  std::vector<Trial> trials;

  bool operator==(const TrainingResult&) const = default;
};

/// Computes cut-offs once from q0, then minimizes the chosen objective
/// (negated for the profile strategies) with meta_solve from q0.
TrainingResult train(const TrainingSpec& spec, const Executor& exec = {});
TrainingResult train(const TrainingSpec& spec, const ProblemSuite& suite,
                     const Executor& exec = {});

/// The window that scores a profile strategy.
Window strategy_window(const TrainingResult& result);

/// Session document: `key=value` lines, then a trial table headed by
/// `trial,alpha,beta,gamma,delta,eta,inertia,objective`.
void write_session(std::ostream& os, const TrainingResult& result);
TrainingResult parse_session(std::string_view text);

/// CSV `problem,n,f_start,f_star,c_p`.
void write_cutoffs(std::ostream& os, const CutoffTable& table);
CutoffTable parse_cutoffs(std::string_view text);

}  // namespace proftune
