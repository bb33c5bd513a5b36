#include "proftune/solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "poll_basis.hpp"
#include "proftune/text.hpp"

namespace proftune {

void validate(const SolverSettings& s) {
  if (!(s.epsilon > 0.0)) throw std::invalid_argument("solver settings: epsilon must be > 0");
  if (s.max_evaluations < 1)
    throw std::invalid_argument("solver settings: max_evaluations must be >= 1");
}

std::string_view to_string(Termination t) {
  return t == Termination::MeshConverged ? "mesh-converged" : "budget-exhausted";
}

Termination termination_from_string(std::string_view s) {
  if (s == "mesh-converged") return Termination::MeshConverged;
  if (s == "budget-exhausted") return Termination::BudgetExhausted;
  throw std::invalid_argument("unknown termination '" + std::string(s) + "'");
}

void validate(const RunTrace& trace) {
  const auto& bp = trace.breakpoints;
  if (bp.empty()) throw std::invalid_argument("trace has no breakpoints");
  if (bp.front().evaluation != 1)
    throw std::invalid_argument("trace must start at evaluation 1");
  for (std::size_t i = 1; i < bp.size(); ++i) {
    if (bp[i].evaluation <= bp[i - 1].evaluation)
      throw std::invalid_argument("trace evaluation indices not strictly increasing");
    if (!(bp[i].best < bp[i - 1].best))
      throw std::invalid_argument("trace best values not strictly decreasing");
  }
  if (trace.total_evaluations < bp.back().evaluation)
    throw std::invalid_argument("trace total_evaluations below last breakpoint");
}

RunTrace solve(const Problem& problem, const ParamConfig& raw_q, const SolverSettings& settings) {
  validate(raw_q);
  validate(settings);
  const ParamConfig q = canonical(raw_q);
  const std::size_t n = problem.dimension();

  detail::GaussianSource rng(
      text::mix64(settings.seed ^ text::fnv1a(problem.name)));

  std::vector<double> scale(n);
  for (std::size_t i = 0; i < n; ++i) scale[i] = (problem.upper[i] - problem.lower[i]) / 10.0;

  RunTrace trace;
  trace.problem = problem.name;
  trace.config_fingerprint = fingerprint(q);
  trace.seed = settings.seed;

  std::vector<double> x = problem.start;
  double fx = evaluate(problem, x);
  std::int64_t evals = 1;
  double best = fx;
  trace.breakpoints.push_back({1, fx});

  double mesh = q.delta;
  const double mesh_cap = q.gamma * q.delta;
  std::deque<std::vector<double>> steps;
  std::vector<double> y(n);

  auto finish = [&](Termination t) {
    trace.total_evaluations = evals;
    trace.termination = t;
    return trace;
  };

  for (;;) {
    if (mesh < settings.epsilon) return finish(Termination::MeshConverged);

    const auto basis = detail::random_orthonormal_basis(rng, n, detail::inertia_direction(steps));
    bool success = false;
    for (std::size_t k = 0; k < n && !success; ++k) {
      for (double sign : {1.0, -1.0}) {
        bool moved = false;
        for (std::size_t i = 0; i < n; ++i) {
          y[i] = std::clamp(x[i] + sign * mesh * scale[i] * basis[k][i], problem.lower[i],
                            problem.upper[i]);
          moved = moved || y[i] != x[i];
        }
        if (!moved) continue;
        if (evals >= settings.max_evaluations) return finish(Termination::BudgetExhausted);

        const double fy = evaluate(problem, y);
        ++evals;
        if (fy < best) {
          best = fy;
          trace.breakpoints.push_back({evals, fy});
        }
        if (fx - fy >= q.eta * mesh * mesh) {
          std::vector<double> step(n);
          for (std::size_t i = 0; i < n; ++i) step[i] = (y[i] - x[i]) / scale[i];
          steps.push_back(std::move(step));
          if (steps.size() > static_cast<std::size_t>(q.inertia)) steps.pop_front();
          x = y;
          fx = fy;
          success = true;
          break;
        }
      }
    }
    mesh = success ? std::min(q.alpha * mesh, mesh_cap) : q.beta * mesh;
  }
}

EvalCount evals_to_target(const RunTrace& trace, double cutoff) {
  for (const auto& bp : trace.breakpoints)
    if (bp.best <= cutoff) return bp.evaluation;
  return std::nullopt;
}

void write_trace(std::ostream& os, const RunTrace& trace) {
  os << trace.problem << ',' << text::hex64(trace.config_fingerprint) << ',' << trace.seed << ','
     << trace.total_evaluations << ',' << to_string(trace.termination) << '\n';
  for (const auto& bp : trace.breakpoints)
    os << bp.evaluation << ',' << text::digits17(bp.best) << '\n';
}

std::string format_trace(const RunTrace& trace) {
  std::ostringstream os;
  write_trace(os, trace);
  return os.str();
}

RunTrace parse_trace(std::string_view body) {
  std::vector<std::string_view> lines;
  for (auto line : text::split(body, '\n'))
    if (!text::trim(line).empty()) lines.push_back(line);
  if (lines.size() < 2) throw std::invalid_argument("trace record too short");

  const auto head = text::split(lines[0], ',');
  if (head.size() != 5) throw std::invalid_argument("trace header needs 5 fields");
  RunTrace t;
  t.problem = std::string(text::trim(head[0]));
  if (t.problem.empty()) throw std::invalid_argument("trace header has empty problem name");
  t.config_fingerprint = text::parse_hex64(head[1]);
  t.seed = text::parse_uint(head[2]);
  t.total_evaluations = text::parse_int(head[3]);
  t.termination = termination_from_string(text::trim(head[4]));

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = text::split(lines[i], ',');
    if (f.size() != 2) throw std::invalid_argument("trace breakpoint needs 2 fields");
    t.breakpoints.push_back({text::parse_int(f[0]), text::parse_double(f[1])});
  }
  validate(t);
  return t;
}

}  // namespace proftune
