#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "proftune/solver.hpp"

using namespace proftune;

namespace {

Problem sphere2() { return builtin_suite("smoke").problems.at(0); }

// Independent check: plain compass search with halving steps.
double compass_search(const Problem& p, double tol, int budget) {
  std::vector<double> x = p.start;
  double fx = evaluate(p, x);
  double step = 1.0;
  int evals = 1;
  while (step >= tol && evals < budget) {
    bool moved = false;
    for (std::size_t i = 0; i < x.size() && !moved; ++i)
      for (double s : {step, -step}) {
        auto y = x;
        y[i] = std::clamp(y[i] + s, p.lower[i], p.upper[i]);
        const double fy = evaluate(p, y);
        ++evals;
        if (fy < fx) {
          x = y;
          fx = fy;
          moved = true;
          break;
        }
      }
    if (!moved) step *= 0.5;
  }
  return fx;
}

RunTrace trace_of(std::vector<Breakpoint> bps) {
  RunTrace t;
  t.problem = "p";
  t.breakpoints = std::move(bps);
  t.total_evaluations = t.breakpoints.back().evaluation;
  return t;
}

}  // namespace

TEST_CASE("sphere converges below 1e-6 with q0") {
  const SolverSettings s{1e-6, 10000, 0};
  const auto t = solve(sphere2(), default_config(), s);
  CHECK(t.termination == Termination::MeshConverged);
  CHECK(t.final_best() <= 1e-6);
  CHECK(t.total_evaluations <= 10000);
  CHECK(compass_search(sphere2(), 1e-6, 10000) <= 1e-6);
}

TEST_CASE("budget of one evaluates only the start point") {
  for (const auto& p : builtin_suite("default").problems) {
    const auto t = solve(p, default_config(), SolverSettings{1e-12, 1, 3});
    REQUIRE(t.breakpoints.size() == 1);
    CHECK(t.breakpoints[0] == Breakpoint{1, evaluate(p, p.start)});
    CHECK(t.total_evaluations == 1);
    CHECK(t.termination == Termination::BudgetExhausted);
  }
}

TEST_CASE("identical inputs give identical traces") {
  const auto p = builtin_suite("default").problems.at(8);
  const SolverSettings s{1e-9, 3000, 42};
  CHECK(solve(p, default_config(), s) == solve(p, default_config(), s));
  CHECK(format_trace(solve(p, default_config(), s)) == format_trace(solve(p, default_config(), s)));
}

TEST_CASE("canonically equal configurations share a run") {
  ParamConfig a = default_config();
  ParamConfig b = a;
  b.beta += 1e-15;
  const auto p = sphere2();
  CHECK(fingerprint(a) == fingerprint(b));
  CHECK(solve(p, a, {}) == solve(p, b, {}));
}

TEST_CASE("trace invariants hold on every problem and several configurations") {
  std::mt19937_64 rng(7);
  const auto space = default_space();
  std::vector<ParamConfig> configs{default_config(), space.lower, space.upper};
  for (int k = 0; k < 4; ++k) {
    auto lo = space.lower.to_array(), hi = space.upper.to_array();
    std::array<double, kParamCount> v{};
    for (std::size_t i = 0; i < kParamCount; ++i)
      v[i] = std::uniform_real_distribution<double>(lo[i], hi[i])(rng);
    configs.push_back(ParamConfig::from_array(v));
  }
  for (const auto& q : configs)
    for (const auto& p : builtin_suite("default").problems) {
      CAPTURE(p.name);
      CAPTURE(describe(q));
      const SolverSettings s{1e-8, 4000, 11};
      const auto t = solve(p, q, s);
      CHECK_NOTHROW(validate(t));
      CHECK(t.total_evaluations <= s.max_evaluations);
      CHECK(t.breakpoints.front().best == evaluate(p, p.start));
      if (t.termination == Termination::BudgetExhausted) CHECK(t.total_evaluations == 4000);
    }
}

TEST_CASE("decreasing epsilon never worsens the final value") {
  for (const auto& p : builtin_suite("default").problems) {
    CAPTURE(p.name);
    double prev = INFINITY;
    for (double eps : {1e-1, 1e-3, 1e-6, 1e-9, 1e-12}) {
      const auto t = solve(p, default_config(), SolverSettings{eps, 5000, 5});
      CHECK(t.final_best() <= prev);
      prev = t.final_best();
    }
  }
}

TEST_CASE("invalid settings and parameters are rejected") {
  const auto p = sphere2();
  CHECK_THROWS_AS(solve(p, default_config(), SolverSettings{0.0, 10, 0}), std::invalid_argument);
  CHECK_THROWS_AS(solve(p, default_config(), SolverSettings{1e-3, 0, 0}), std::invalid_argument);
  ParamConfig q = default_config();
  q.beta = 1.0;
  CHECK_THROWS_AS(solve(p, q, {}), std::invalid_argument);
  q = default_config();
  q.inertia = 0;
  CHECK_THROWS_AS(solve(p, q, {}), std::invalid_argument);
}

TEST_CASE("evals_to_target examples") {
  const auto t = trace_of({{1, 10.0}, {3, 5.0}, {7, 1e-5}});
  CHECK(evals_to_target(t, 1e-3) == 7);
  CHECK(evals_to_target(trace_of({{1, 10.0}}), 20.0) == 1);
  CHECK(!evals_to_target(trace_of({{1, 10.0}, {3, 5.0}}), 1.0).has_value());
}

TEST_CASE("evals_to_target is non-increasing in the cut-off") {
  std::mt19937_64 rng(99);
  for (const auto& p : builtin_suite("default").problems) {
    const auto t = solve(p, default_config(), SolverSettings{1e-10, 3000, 1});
    std::vector<double> cuts;
    for (const auto& bp : t.breakpoints) cuts.push_back(bp.best);
    for (int k = 0; k < 50; ++k)
      cuts.push_back(std::uniform_real_distribution<double>(t.final_best() - 1.0,
                                                            t.breakpoints[0].best + 1.0)(rng));
    std::sort(cuts.begin(), cuts.end());
    auto as_num = [](EvalCount e) { return e ? double(*e) : INFINITY; };
    for (std::size_t i = 1; i < cuts.size(); ++i)
      CHECK(as_num(evals_to_target(t, cuts[i - 1])) >= as_num(evals_to_target(t, cuts[i])));
  }
}

TEST_CASE("trace text round-trips and rejects corruption") {
  const auto p = builtin_suite("smoke").problems.at(1);
  const auto t = solve(p, default_config(), SolverSettings{1e-10, 2000, 9});
  const auto body = format_trace(t);
  CHECK(body.substr(0, body.find('\n')).find("rosenbrock2,") == 0);
  CHECK(parse_trace(body) == t);

  CHECK_THROWS(parse_trace(""));
  CHECK_THROWS(parse_trace(body.substr(0, body.size() / 2) + "x,y\n"));
  CHECK_THROWS(parse_trace("p,00,1,5,mesh-converged\n2,1\n"));          // must start at 1
  CHECK_THROWS(parse_trace("p,00,1,5,mesh-converged\n1,1\n3,2\n"));     // increasing best
  CHECK_THROWS(parse_trace("p,00,1,5,sideways\n1,1\n"));                // termination
}
