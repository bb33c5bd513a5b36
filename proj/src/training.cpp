#include "proftune/training.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>

#include "proftune/text.hpp"

namespace proftune {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Average: return "average";
    case Strategy::Robust: return "robust";
    case Strategy::DataProfile: return "data-profile";
    case Strategy::PerfProfile: return "perf-profile";
  }
  return "?";
}

Strategy strategy_from_string(std::string_view s) {
  if (s == "average") return Strategy::Average;
  if (s == "robust") return Strategy::Robust;
  if (s == "data-profile" || s == "data") return Strategy::DataProfile;
  if (s == "perf-profile" || s == "perf") return Strategy::PerfProfile;
  throw std::invalid_argument("unknown strategy '" + std::string(s) +
                              "' (valid: average, robust, data, perf)");
}

bool is_maximized(Strategy s) {
  return s == Strategy::DataProfile || s == Strategy::PerfProfile;
}

double cutoff_value(double f_start, double f_star, double chi) {
  return f_star + chi * (f_start - f_star);
}

RunProvider direct_runs() {
  return [](const Problem& p, const ParamConfig& q, const SolverSettings& s) {
    return solve(p, q, s);
  };
}

std::vector<RunTrace> Executor::run_suite(const ProblemSuite& suite, const ParamConfig& q,
                                          const SolverSettings& settings) const {
  const std::size_t n = suite.size();
  std::vector<RunTrace> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = runs(suite.problems[i], q, settings);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(std::max(jobs, 1), n);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

CutoffTable compute_cutoffs(const ProblemSuite& suite, const ParamConfig& q0, double chi,
                            const SolverSettings& settings, const Executor& exec) {
  if (!(chi >= 0.0 && chi <= 1.0)) throw std::invalid_argument("chi must lie in [0, 1]");
  const auto traces = exec.run_suite(suite, q0, settings);
  CutoffTable table{chi, {}};
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const double f_start = traces[i].breakpoints.front().best;
    const double f_star = traces[i].final_best();
    table.entries.push_back({suite.problems[i].name, suite.problems[i].dimension(), f_start,
                             f_star, cutoff_value(f_start, f_star, chi)});
  }
  return table;
}

MeasureRow measure_config(const ProblemSuite& suite, const ParamConfig& q,
                          const CutoffTable& cutoffs, const SolverSettings& settings,
                          const Executor& exec) {
  if (cutoffs.entries.size() != suite.size())
    throw std::invalid_argument("cut-off table does not cover the suite");
  const auto traces = exec.run_suite(suite, q, settings);
  MeasureRow row(suite.size());
  for (std::size_t i = 0; i < suite.size(); ++i)
    row[i] = evals_to_target(traces[i], cutoffs.entries[i].cutoff);
  return row;
}

MeasureTable measure_table(const CutoffTable& cutoffs, const std::vector<std::string>& labels,
                           const std::vector<MeasureRow>& rows) {
  MeasureTable table;
  table.solvers = labels;
  for (const auto& e : cutoffs.entries) table.problems.push_back({e.problem, e.dimension});
  table.t.assign(cutoffs.entries.size(), {});
  for (std::size_t p = 0; p < cutoffs.entries.size(); ++p)
    for (const auto& row : rows) {
      if (row.size() != cutoffs.entries.size())
        throw std::invalid_argument("measure row does not cover the cut-off table");
      table.t[p].push_back(row[p]);
    }
  return table;
}

double phi_average(const MeasureRow& row, std::int64_t budget) {
  double total = 0.0;
  for (const auto& t : row) total += static_cast<double>(t ? *t : budget);
  return total;
}

double phi_data(const MeasureRow& row, const CutoffTable& cutoffs, Window window) {
  if (!(window.lo >= 0.0 && window.lo < window.hi))
    throw std::invalid_argument("data window must satisfy 0 <= lo < hi");
  const auto table = measure_table(cutoffs, {"q"}, {row});
  return staircase_area(data_profile(table, "q"), window.lo, window.hi);
}

double phi_perf(const MeasureRow& row_q, const MeasureRow& row_q0, const CutoffTable& cutoffs,
                Window window) {
  if (!(window.lo >= 1.0 && window.lo < window.hi))
    throw std::invalid_argument("performance window must satisfy 1 <= lo < hi");
  const auto table = measure_table(cutoffs, {"q", "q0"}, {row_q, row_q0});
  const double a = staircase_area(performance_profile(table, "q"), window.lo, window.hi);
  const double a0 = staircase_area(performance_profile(table, "q0"), window.lo, window.hi);
  return a - a0;
}

ParamSpace robust_box(const ParamConfig& q, const ParamSpace& space) {
  const auto center = q.to_array();
  const auto slo = space.lower.to_array(), shi = space.upper.to_array();
  auto lo = center, hi = center;
  for (std::size_t i = 0; i < kParamCount; ++i) {
    if (i == kIntegerCoordinate) continue;
    // min/max with the center keeps it inside despite the global clip.
    lo[i] = std::min(std::max(0.95 * center[i], slo[i]), center[i]);
    hi[i] = std::max(std::min(1.05 * center[i], shi[i]), center[i]);
  }
  return ParamSpace{ParamConfig::from_array(lo), ParamConfig::from_array(hi)};
}

double phi_robust(const ProblemSuite& suite, const ParamConfig& q, const CutoffTable& cutoffs,
                  const ParamSpace& space, const SolverSettings& settings,
                  const RobustOptions& options, const Executor& exec) {
  const ParamSpace box = robust_box(q, space);
  auto negated = [&](const ParamConfig& c) {
    return -phi_average(measure_config(suite, c, cutoffs, settings, exec),
                        settings.max_evaluations);
  };
  MetaOptions meta;
  meta.trial_cap = options.inner_trial_cap;
  meta.epsilon = options.epsilon;
  meta.seed = options.seed;
  const auto result = meta_solve(negated, box, q, meta);
  return -result.best_value;
}

void validate(const TrainingSpec& spec) {
  auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  validate(spec.q0);
  validate(spec.space);
  if (!spec.space.contains(spec.q0)) fail("q0 lies outside the parameter space");
  if (!(spec.chi >= 0.0 && spec.chi <= 1.0)) fail("chi must lie in [0, 1]");
  if (!(spec.data_window.lo >= 0.0 && spec.data_window.lo < spec.data_window.hi))
    fail("data window must satisfy 0 <= nu_min < nu_max");
  if (!(spec.perf_window.lo >= 1.0 && spec.perf_window.lo < spec.perf_window.hi))
    fail("performance window must satisfy 1 <= tau_min < tau_max");
  if (spec.trial_cap < 1) fail("trial cap must be >= 1");
  if (spec.inner_trial_cap < 1) fail("inner trial cap must be >= 1");
  if (!(spec.eps_run > 0.0 && spec.eps_train > 0.0 && spec.eps_inner > 0.0))
    fail("epsilon values must be > 0");
  if (spec.budget < 1) fail("run budget must be >= 1");
}

TrainingResult train(const TrainingSpec& spec, const Executor& exec) {
  return train(spec, builtin_suite(spec.suite), exec);
}

TrainingResult train(const TrainingSpec& spec, const ProblemSuite& suite, const Executor& exec) {
  validate(spec);
  const SolverSettings run_settings{spec.eps_run, spec.budget, spec.seed};
  const CutoffTable cutoffs = compute_cutoffs(suite, spec.q0, spec.chi, run_settings, exec);

  MeasureRow row_q0;
  if (spec.strategy == Strategy::PerfProfile)
    row_q0 = measure_config(suite, spec.q0, cutoffs, run_settings, exec);

  const RobustOptions robust{spec.inner_trial_cap, spec.eps_inner, text::mix64(spec.seed + 1)};

  // Natural-sign objective; meta_solve sees the negation for profile strategies.
  auto natural = [&](const ParamConfig& q) -> double {
    switch (spec.strategy) {
      case Strategy::Average:
        return phi_average(measure_config(suite, q, cutoffs, run_settings, exec), spec.budget);
      case Strategy::Robust:
        return phi_robust(suite, q, cutoffs, spec.space, run_settings, robust, exec);
      case Strategy::DataProfile:
        return phi_data(measure_config(suite, q, cutoffs, run_settings, exec), cutoffs,
                        spec.data_window);
      case Strategy::PerfProfile:
        return phi_perf(measure_config(suite, q, cutoffs, run_settings, exec), row_q0, cutoffs,
                        spec.perf_window);
    }
    return 0.0;
  };
  const double sign = is_maximized(spec.strategy) ? -1.0 : 1.0;
  auto minimized = [&](const ParamConfig& q) { return sign * natural(q); };

  MetaOptions meta;
  meta.trial_cap = spec.trial_cap;
  meta.epsilon = spec.eps_train;
  meta.seed = spec.seed;
  const MetaResult found = meta_solve(minimized, spec.space, spec.q0, meta);

  TrainingResult r;
  r.strategy = spec.strategy;
  r.suite = suite.name;
  r.data_window = spec.data_window;
  r.perf_window = spec.perf_window;
  r.chi = spec.chi;
  r.seed = spec.seed;
  r.q0 = spec.q0;
  r.trained = found.best;
  r.objective_q0 = sign * found.trials.front().value;
  r.objective_trained = sign * found.best_value;
  for (const auto& t : found.trials) r.trials.push_back({t.q, sign * t.value});
  if (is_maximized(spec.strategy)) {
    r.gain = r.objective_trained - r.objective_q0;
  } else {
    r.gain = r.objective_q0 > 0.0 ? (r.objective_q0 - r.objective_trained) / r.objective_q0 : 0.0;
  }
  return r;
}

Window strategy_window(const TrainingResult& result) {
  return result.strategy == Strategy::PerfProfile ? result.perf_window : result.data_window;
}

namespace {

std::string join_config(const ParamConfig& q) {
  std::string s;
  for (double v : q.to_array()) {
    if (!s.empty()) s += ',';
    s += text::shortest(v);
  }
  return s;
}

ParamConfig parse_config(std::string_view s) {
  const auto f = text::split(s, ',');
  if (f.size() != kParamCount) throw std::invalid_argument("configuration needs 6 values");
  std::array<double, kParamCount> v{};
  for (std::size_t i = 0; i < kParamCount; ++i) v[i] = text::parse_double(f[i]);
  return ParamConfig::from_array(v);
}

Window parse_window(std::string_view s) {
  const auto f = text::split(s, ',');
  if (f.size() != 2) throw std::invalid_argument("window needs 2 values");
  return {text::parse_double(f[0]), text::parse_double(f[1])};
}

}  // namespace

void write_session(std::ostream& os, const TrainingResult& r) {
  os << "strategy=" << to_string(r.strategy) << '\n'
     << "suite=" << r.suite << '\n'
     << "data_window=" << text::shortest(r.data_window.lo) << ','
     << text::shortest(r.data_window.hi) << '\n'
     << "perf_window=" << text::shortest(r.perf_window.lo) << ','
     << text::shortest(r.perf_window.hi) << '\n'
     << "chi=" << text::shortest(r.chi) << '\n'
     << "seed=" << r.seed << '\n'
     << "q0=" << join_config(r.q0) << '\n'
     << "trained=" << join_config(r.trained) << '\n'
     << "objective_q0=" << text::shortest(r.objective_q0) << '\n'
     << "objective_trained=" << text::shortest(r.objective_trained) << '\n'
     << "gain=" << text::shortest(r.gain) << '\n'
     << "gain_kind=" << (is_maximized(r.strategy) ? "raw-area-increase" : "relative-reduction")
     << '\n'
     << "trials_used=" << r.trials.size() << '\n'
     << "trial,alpha,beta,gamma,delta,eta,inertia,objective\n";
  for (std::size_t i = 0; i < r.trials.size(); ++i)
    os << i << ',' << join_config(r.trials[i].q) << ',' << text::shortest(r.trials[i].value)
       << '\n';
}

TrainingResult parse_session(std::string_view body) {
  TrainingResult r;
  std::size_t expected_trials = 0;
  bool in_table = false;
  bool have_strategy = false, have_q0 = false, have_trained = false;
  for (auto raw : text::split(body, '\n')) {
    const auto line = text::trim(raw);
    if (line.empty()) continue;
    if (in_table) {
      const auto f = text::split(line, ',');
      if (f.size() != kParamCount + 2) throw std::invalid_argument("malformed trial row");
      if (text::parse_int(f[0]) != static_cast<std::int64_t>(r.trials.size()))
        throw std::invalid_argument("trial rows out of order");
      std::array<double, kParamCount> v{};
      for (std::size_t i = 0; i < kParamCount; ++i) v[i] = text::parse_double(f[i + 1]);
      r.trials.push_back({ParamConfig::from_array(v), text::parse_double(f[kParamCount + 1])});
      continue;
    }
    if (line.starts_with("trial,")) {
      in_table = true;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("malformed session line");
    const auto key = line.substr(0, eq);
    const auto val = line.substr(eq + 1);
    if (key == "strategy") {
      r.strategy = strategy_from_string(val);
      have_strategy = true;
    } else if (key == "suite") {
      r.suite = std::string(val);
    } else if (key == "data_window") {
      r.data_window = parse_window(val);
    } else if (key == "perf_window") {
      r.perf_window = parse_window(val);
    } else if (key == "chi") {
      r.chi = text::parse_double(val);
    } else if (key == "seed") {
      r.seed = text::parse_uint(val);
    } else if (key == "q0") {
      r.q0 = parse_config(val);
      have_q0 = true;
    } else if (key == "trained") {
      r.trained = parse_config(val);
      have_trained = true;
    } else if (key == "objective_q0") {
      r.objective_q0 = text::parse_double(val);
    } else if (key == "objective_trained") {
      r.objective_trained = text::parse_double(val);
    } else if (key == "gain") {
      r.gain = text::parse_double(val);
    } else if (key == "trials_used") {
      expected_trials = static_cast<std::size_t>(text::parse_int(val));
    }
    // gain_kind is derived from the strategy; unknown keys are ignored.
  }
  if (!have_strategy || !have_q0 || !have_trained)
    throw std::invalid_argument("session is missing strategy, q0 or trained configuration");
  if (r.trials.size() != expected_trials)
    throw std::invalid_argument("session trial count does not match trials_used");
  return r;
}

void write_cutoffs(std::ostream& os, const CutoffTable& table) {
  os << "problem,n,f_start,f_star,c_p\n";
  for (const auto& e : table.entries)
    os << e.problem << ',' << e.dimension << ',' << text::shortest(e.f_start) << ','
       << text::shortest(e.f_star) << ',' << text::shortest(e.cutoff) << '\n';
}

CutoffTable parse_cutoffs(std::string_view body) {
  // chi is not part of the file; it is implied by the rows.
  CutoffTable table{std::numeric_limits<double>::quiet_NaN(), {}};
  bool header = true;
  for (auto raw : text::split(body, '\n')) {
    const auto line = text::trim(raw);
    if (line.empty()) continue;
    if (header) {
      if (line != "problem,n,f_start,f_star,c_p")
        throw std::invalid_argument("cut-off file has an unexpected header");
      header = false;
      continue;
    }
    const auto f = text::split(line, ',');
    if (f.size() != 5) throw std::invalid_argument("cut-off row needs 5 fields");
    const auto n = text::parse_int(f[1]);
    if (n < 1) throw std::invalid_argument("cut-off row has invalid dimension");
    table.entries.push_back({std::string(f[0]), static_cast<std::size_t>(n),
                             text::parse_double(f[2]), text::parse_double(f[3]),
                             text::parse_double(f[4])});
  }
  if (header) throw std::invalid_argument("empty cut-off file");
  return table;
}

}  // namespace proftune
