#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "proftune/params.hpp"

namespace proftune {

using ConfigObjective = std::function<double(const ParamConfig&)>;

struct MetaOptions {
  std::int64_t trial_cap = 200;
  double epsilon = 1e-2;
  std::uint64_t seed = 0;
  /// Parameters of the search itself; the defaults are q0.
  ParamConfig search = default_config();
};

struct Trial {
  ParamConfig q;
  double value;

  bool operator==(const Trial&) const = default;
};

struct MetaResult {
  ParamConfig best;
  double best_value;
  std::vector<Trial> trials;  // in evaluation order, q0 first
};

/// Minimizes `objective` over the mixed-integer box `space` from `q0`.
///
/// The five continuous coordinates are polled along a random orthonormal
/// basis with the same mesh rules as `solve` (step mesh * width / 10), except
/// that sufficient decrease is eta * (mesh / 10)^2, the squared step length in
/// box-width units. The integer coordinate is polled with step max(1, round(m)), where m starts at
/// max(1, round(width / 4)) and shrinks by beta on unsuccessful iterations.
/// Zero-width coordinates stay fixed. At most `trial_cap` distinct
/// configurations are evaluated; repeated points reuse their value.
///
/// An exception at q0 propagates. An exception at any other trial scores that
/// trial +inf. Ties for the best value go to the earliest trial.
MetaResult meta_solve(const ConfigObjective& objective, const ParamSpace& space,
                      const ParamConfig& q0, const MetaOptions& options);

}  // namespace proftune
