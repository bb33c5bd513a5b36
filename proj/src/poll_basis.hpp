#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <vector>

namespace proftune::detail {

// Gaussian deviates from mt19937_64 through Box-Muller. std::normal_distribution
// is implementation-defined, which would make traces differ between standard
// libraries.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (spare_) {
      const double v = *spare_;
      spare_.reset();
      return v;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(t);
    return r * std::cos(t);
  }

 private:
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

using Basis = std::vector<std::vector<double>>;

// Orthonormal basis from a seeded Gaussian matrix. When `lead` is given it
// becomes the first basis vector and the rest complete it. Draws exactly n*n
// deviates per call unless a column degenerates.
inline Basis random_orthonormal_basis(GaussianSource& rng, std::size_t n,
                                      const std::optional<std::vector<double>>& lead) {
  Basis cols(n, std::vector<double>(n));
  for (auto& c : cols)
    for (auto& v : c) v = rng.next();
  if (lead) cols[0] = *lead;

  auto dot = [n](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
  };
  for (std::size_t k = 0; k < n; ++k) {
    for (int attempt = 0;; ++attempt) {
      auto& c = cols[k];
      // Two passes of modified Gram-Schmidt.
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t j = 0; j < k; ++j) {
          const double p = dot(cols[j], c);
          for (std::size_t i = 0; i < n; ++i) c[i] -= p * cols[j][i];
        }
      const double norm = std::sqrt(dot(c, c));
      if (norm > 1e-10) {
        for (auto& v : c) v /= norm;
        break;
      }
      for (auto& v : c) v = rng.next();
    }
  }
  return cols;
}

// Normalized average of the remembered successful steps, if it is nonzero.
inline std::optional<std::vector<double>> inertia_direction(
    const std::deque<std::vector<double>>& steps) {
  if (steps.empty()) return std::nullopt;
  std::vector<double> avg(steps.front().size(), 0.0);
  for (const auto& s : steps)
    for (std::size_t i = 0; i < avg.size(); ++i) avg[i] += s[i];
  double norm = 0.0;
  for (double v : avg) norm += v * v;
  norm = std::sqrt(norm);
  if (!(norm > 1e-300)) return std::nullopt;
  for (auto& v : avg) v /= norm;
  return avg;
}

}  // namespace proftune::detail
