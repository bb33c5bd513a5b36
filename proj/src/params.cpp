#include "proftune/params.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "proftune/text.hpp"

namespace proftune {

std::array<double, kParamCount> ParamConfig::to_array() const {
  return {alpha, beta, gamma, delta, eta, static_cast<double>(inertia)};
}

ParamConfig ParamConfig::from_array(const std::array<double, kParamCount>& v) {
  return ParamConfig{v[0], v[1], v[2], v[3], v[4], static_cast<int>(std::lround(v[5]))};
}

void validate(const ParamConfig& q) {
  auto fail = [&](const char* what) {
    throw std::invalid_argument(std::string("invalid parameter configuration: ") + what +
                                " (" + describe(q) + ")");
  };
  if (!(q.alpha >= 1.0)) fail("alpha must be >= 1");
  if (!(q.beta > 0.0 && q.beta < 1.0)) fail("beta must lie in (0, 1)");
  if (!(q.gamma >= 1.0)) fail("gamma must be >= 1");
  if (!(q.delta > 0.0) || !std::isfinite(q.delta)) fail("delta must be > 0");
  if (!(q.eta > 0.0) || !std::isfinite(q.eta)) fail("eta must be > 0");
  if (q.inertia < 1) fail("inertia must be >= 1");
}

bool ParamSpace::contains(const ParamConfig& q) const {
  const auto lo = lower.to_array(), hi = upper.to_array(), v = q.to_array();
  for (std::size_t i = 0; i < kParamCount; ++i)
    if (v[i] < lo[i] || v[i] > hi[i]) return false;
  return true;
}

ParamConfig ParamSpace::clamp(const ParamConfig& q) const {
  const auto lo = lower.to_array(), hi = upper.to_array();
  auto v = q.to_array();
  for (std::size_t i = 0; i < kParamCount; ++i) v[i] = std::clamp(v[i], lo[i], hi[i]);
  return ParamConfig::from_array(v);
}

void validate(const ParamSpace& space) {
  const auto lo = space.lower.to_array(), hi = space.upper.to_array();
  for (std::size_t i = 0; i < kParamCount; ++i)
    if (!(lo[i] <= hi[i]))
      throw std::invalid_argument(std::string("parameter space: lower > upper for ") +
                                  kParamNames[i]);
}

ParamConfig default_config() { return ParamConfig{}; }

ParamSpace default_space() {
  return ParamSpace{ParamConfig{1.0, 0.01, 1.0, 0.25, 1e-4, 5},
                    ParamConfig{2.0, 0.95, 10.0, 10.0, 0.5, 30}};
}

ParamConfig canonical(const ParamConfig& q) {
  auto v = q.to_array();
  for (auto& x : v) x = text::round_significant(x, 12);
  return ParamConfig::from_array(v);
}

std::uint64_t fingerprint(const ParamConfig& q) {
  std::string s;
  char buf[40];
  for (double v : canonical(q).to_array()) {
    std::snprintf(buf, sizeof buf, "%.11e;", v);
    s += buf;
  }
  return text::fnv1a(s);
}

std::string describe(const ParamConfig& q) {
  std::string s;
  const auto v = q.to_array();
  for (std::size_t i = 0; i < kParamCount; ++i) {
    if (i) s += ' ';
    s += kParamNames[i];
    s += '=';
    s += text::shortest(v[i]);
  }
  return s;
}

}  // namespace proftune
