#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "proftune/meta_solve.hpp"

using namespace proftune;

namespace {

// Convex quadratic in scaled coordinates z_i = (q_i - l_i) / (u_i - l_i);
// its minimizer z* lies partly outside [0,1] so projection matters.
struct ScaledQuadratic {
  ParamSpace space = default_space();
  std::array<double, kParamCount> target{0.3, 0.7, -0.2, 0.55, 1.3, 0.4};
  std::array<double, kParamCount> weight{1.0, 2.0, 0.5, 1.5, 1.0, 0.1};

  std::array<double, kParamCount> scaled(const ParamConfig& q) const {
    const auto v = q.to_array(), lo = space.lower.to_array(), hi = space.upper.to_array();
    std::array<double, kParamCount> z{};
    for (std::size_t i = 0; i < kParamCount; ++i) z[i] = (v[i] - lo[i]) / (hi[i] - lo[i]);
    return z;
  }
  double operator()(const ParamConfig& q) const {
    const auto z = scaled(q);
    double s = 0.0;
    for (std::size_t i = 0; i < kParamCount; ++i)
      s += weight[i] * (z[i] - target[i]) * (z[i] - target[i]);
    return s;
  }
};

}  // namespace

TEST_CASE("a cap of one returns q0") {
  int calls = 0;
  const auto r = meta_solve([&](const ParamConfig&) { ++calls; return 1.0; }, default_space(),
                            default_config(), MetaOptions{1, 1e-2, 0, default_config()});
  CHECK(calls == 1);
  CHECK(r.best == default_config());
  CHECK(r.best_value == 1.0);
  REQUIRE(r.trials.size() == 1);
}

TEST_CASE("the result never exceeds the starting value") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 10; ++k) {
    ScaledQuadratic f;
    for (auto& t : f.target) t = std::uniform_real_distribution<double>(-0.5, 1.5)(rng);
    const auto r = meta_solve(f, f.space, default_config(), MetaOptions{60, 1e-2, std::uint64_t(k)});
    CHECK(r.best_value <= f(default_config()));
    CHECK(r.trials.front().q == default_config());
    CHECK(r.trials.size() <= 60);
    CHECK(f(r.best) == r.best_value);
  }
}

TEST_CASE("quadratic minimizer found within 0.1 scaled units") {
  const ScaledQuadratic f;
  const auto r = meta_solve(f, f.space, default_config(), MetaOptions{200, 1e-2, 0});
  auto proj = f.target;
  for (auto& z : proj) z = std::clamp(z, 0.0, 1.0);
  const auto z = f.scaled(r.best);
  for (std::size_t i = 0; i < kParamCount; ++i) {
    CAPTURE(i);
    CHECK(std::abs(z[i] - proj[i]) <= 0.1);
  }

  // Randomized oracle with 1e5 uniform samples over the box.
  std::mt19937_64 rng(17);
  const auto lo = f.space.lower.to_array(), hi = f.space.upper.to_array();
  double oracle = INFINITY;
  for (int k = 0; k < 100000; ++k) {
    std::array<double, kParamCount> v{};
    for (std::size_t i = 0; i < kParamCount; ++i)
      v[i] = std::uniform_real_distribution<double>(lo[i], hi[i])(rng);
    oracle = std::min(oracle, f(ParamConfig::from_array(v)));
  }
  CHECK(r.best_value <= oracle + 1e-2);
}

TEST_CASE("inertia stays an integer inside its bounds") {
  const ScaledQuadratic f;
  const auto r = meta_solve(f, f.space, default_config(), MetaOptions{150, 1e-3, 5});
  for (const auto& t : r.trials) {
    CHECK(f.space.contains(t.q));
    CHECK(t.q.inertia >= f.space.lower.inertia);
    CHECK(t.q.inertia <= f.space.upper.inertia);
  }
}

TEST_CASE("distinct trials only") {
  const ScaledQuadratic f;
  const auto r = meta_solve(f, f.space, default_config(), MetaOptions{200, 1e-3, 2});
  for (std::size_t i = 0; i < r.trials.size(); ++i)
    for (std::size_t j = i + 1; j < r.trials.size(); ++j)
      CHECK(fingerprint(r.trials[i].q) != fingerprint(r.trials[j].q));
}

TEST_CASE("same seed, same trials") {
  const ScaledQuadratic f;
  const auto a = meta_solve(f, f.space, default_config(), MetaOptions{80, 1e-2, 9});
  const auto b = meta_solve(f, f.space, default_config(), MetaOptions{80, 1e-2, 9});
  CHECK(a.trials == b.trials);
}

TEST_CASE("exceptions: q0 propagates, others score +inf") {
  CHECK_THROWS_AS(meta_solve([](const ParamConfig&) -> double { throw std::runtime_error("x"); },
                             default_space(), default_config(), MetaOptions{}),
                  std::runtime_error);

  const ParamConfig q0 = default_config();
  const auto r = meta_solve(
      [&](const ParamConfig& q) -> double {
        if (fingerprint(q) == fingerprint(q0)) return 1.0;
        throw std::runtime_error("x");
      },
      default_space(), q0, MetaOptions{30, 1e-2, 0});
  CHECK(r.best == q0);
  CHECK(r.best_value == 1.0);
  for (std::size_t i = 1; i < r.trials.size(); ++i) CHECK(std::isinf(r.trials[i].value));
}

TEST_CASE("ties keep the earliest trial") {
  const auto r = meta_solve([](const ParamConfig&) { return 0.0; }, default_space(),
                            default_config(), MetaOptions{40, 1e-2, 0});
  CHECK(r.best == r.trials.front().q);
}

TEST_CASE("zero-width coordinates do not move") {
  ParamSpace space = default_space();
  space.lower.alpha = space.upper.alpha = 1.5;
  space.lower.inertia = space.upper.inertia = 10;
  const ScaledQuadratic f;
  const auto r = meta_solve([&](const ParamConfig& q) { return f(q); }, space, default_config(),
                            MetaOptions{80, 1e-2, 0});
  for (const auto& t : r.trials) {
    CHECK(t.q.alpha == 1.5);
    CHECK(t.q.inertia == 10);
  }
}
