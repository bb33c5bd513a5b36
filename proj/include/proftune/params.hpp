#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace proftune {

inline constexpr std::size_t kParamCount = 6;

/// Algorithmic parameters of the direct-search solver.
struct ParamConfig {
  double alpha = 1.5;        // grid expansion factor
  double beta = 1.0 / 3.0;   // grid shrinking factor
  double gamma = 5.0;        // maximum grid expansion, as a multiple of the initial mesh
  double delta = 1.0;        // initial mesh size
  double eta = 0.1;          // sufficient-decrease fraction
  int inertia = 10;          // successful steps averaged into the inertia direction

  std::array<double, kParamCount> to_array() const;
  /// The last entry is rounded to the nearest integer.
  static ParamConfig from_array(const std::array<double, kParamCount>& v);

  bool operator==(const ParamConfig&) const = default;
};

/// Coordinate names in array order.
inline constexpr std::array<const char*, kParamCount> kParamNames{
    "alpha", "beta", "gamma", "delta", "eta", "inertia"};

/// Index of the only integer-valued coordinate (inertia).
inline constexpr std::size_t kIntegerCoordinate = 5;

/// Throws std::invalid_argument unless alpha >= 1, 0 < beta < 1, gamma >= 1,
/// delta > 0, eta > 0 and inertia >= 1.
void validate(const ParamConfig& q);

/// Box of admissible configurations.
struct ParamSpace {
  ParamConfig lower;
  ParamConfig upper;

  bool contains(const ParamConfig& q) const;
  ParamConfig clamp(const ParamConfig& q) const;
};

void validate(const ParamSpace& space);

/// Starting configuration q0: (1.5, 1/3, 5, 1, 0.1, 10).
ParamConfig default_config();

/// Training bounds l = (1, 0.01, 1, 0.25, 1e-4, 5), u = (2, 0.95, 10, 10, 0.5, 30).
ParamSpace default_space();

/// Rounds every coordinate to 12 significant digits. All solver runs and
/// fingerprints work on the canonical form, so two configurations that agree
/// to 12 digits are the same configuration.
ParamConfig canonical(const ParamConfig& q);

/// Stable 64-bit hash of the canonical configuration.
std::uint64_t fingerprint(const ParamConfig& q);

/// "alpha=1.5 beta=0.333... ..." for logs and tables.
std::string describe(const ParamConfig& q);

}  // namespace proftune
