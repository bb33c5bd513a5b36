#include "proftune/testbed.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace proftune {
namespace {

using std::numbers::pi;

std::vector<double> filled(std::size_t n, double v) { return std::vector<double>(n, v); }

Problem make(std::string name, std::vector<double> lower, std::vector<double> upper,
             std::vector<double> start, Objective f, std::optional<double> fmin) {
  return Problem{std::move(name), std::move(lower), std::move(upper),
                 std::move(start), std::move(f), fmin};
}

Problem uniform_box(std::string name, std::size_t n, double lo, double hi,
                    std::vector<double> start, Objective f, std::optional<double> fmin) {
  return make(std::move(name), filled(n, lo), filled(n, hi), std::move(start), std::move(f),
              fmin);
}

double sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double rosenbrock(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = 1.0 - x[i];
    s += 100.0 * a * a + b * b;
  }
  return s;
}

double six_hump_camel(std::span<const double> x) {
  const double u = x[0], v = x[1];
  const double u2 = u * u, v2 = v * v;
  return (4.0 - 2.1 * u2 + u2 * u2 / 3.0) * u2 + u * v + (-4.0 + 4.0 * v2) * v2;
}

double beale(std::span<const double> x) {
  const double u = x[0], v = x[1];
  const double a = 1.5 - u + u * v;
  const double b = 2.25 - u + u * v * v;
  const double c = 2.625 - u + u * v * v * v;
  return a * a + b * b + c * c;
}

double booth(std::span<const double> x) {
  const double a = x[0] + 2.0 * x[1] - 7.0;
  const double b = 2.0 * x[0] + x[1] - 5.0;
  return a * a + b * b;
}

double himmelblau(std::span<const double> x) {
  const double a = x[0] * x[0] + x[1] - 11.0;
  const double b = x[0] + x[1] * x[1] - 7.0;
  return a * a + b * b;
}

template <std::size_t N>
double hartmann(std::span<const double> x, const std::array<std::array<double, N>, 4>& a,
                const std::array<std::array<double, N>, 4>& p) {
  static constexpr std::array<double, 4> weight{1.0, 1.2, 3.0, 3.2};
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    double inner = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      const double d = x[j] - p[i][j];
      inner += a[i][j] * d * d;
    }
    s -= weight[i] * std::exp(-inner);
  }
  return s;
}

double hartmann3(std::span<const double> x) {
  static constexpr std::array<std::array<double, 3>, 4> a{{
      {3.0, 10.0, 30.0}, {0.1, 10.0, 35.0}, {3.0, 10.0, 30.0}, {0.1, 10.0, 35.0}}};
  static constexpr std::array<std::array<double, 3>, 4> p{{{0.3689, 0.1170, 0.2673},
                                                          {0.4699, 0.4387, 0.7470},
                                                          {0.1091, 0.8732, 0.5547},
                                                          {0.0381, 0.5743, 0.8828}}};
  return hartmann<3>(x, a, p);
}

double hartmann6(std::span<const double> x) {
  static constexpr std::array<std::array<double, 6>, 4> a{{{10.0, 3.0, 17.0, 3.5, 1.7, 8.0},
                                                          {0.05, 10.0, 17.0, 0.1, 8.0, 14.0},
                                                          {3.0, 3.5, 1.7, 10.0, 17.0, 8.0},
                                                          {17.0, 8.0, 0.05, 10.0, 0.1, 14.0}}};
  static constexpr std::array<std::array<double, 6>, 4> p{
      {{0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
       {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
       {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
       {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}}};
  return hartmann<6>(x, a, p);
}

double levy(std::span<const double> x) {
  const std::size_t n = x.size();
  auto w = [&](std::size_t i) { return 1.0 + (x[i] - 1.0) / 4.0; };
  const double s0 = std::sin(pi * w(0));
  double s = s0 * s0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double wi = w(i);
    const double si = std::sin(pi * wi + 1.0);
    s += (wi - 1.0) * (wi - 1.0) * (1.0 + 10.0 * si * si);
  }
  const double wn = w(n - 1);
  const double sn = std::sin(2.0 * pi * wn);
  return s + (wn - 1.0) * (wn - 1.0) * (1.0 + sn * sn);
}

double powell_singular(std::span<const double> x) {
  const double a = x[0] + 10.0 * x[1];
  const double b = x[2] - x[3];
  const double c = x[1] - 2.0 * x[2];
  const double d = x[0] - x[3];
  return a * a + 5.0 * b * b + c * c * c * c + 10.0 * d * d * d * d;
}

double wood(std::span<const double> x) {
  const double a = x[1] - x[0] * x[0];
  const double b = 1.0 - x[0];
  const double c = x[3] - x[2] * x[2];
  const double d = 1.0 - x[2];
  const double e = x[1] - 1.0;
  const double g = x[3] - 1.0;
  return 100.0 * a * a + b * b + 90.0 * c * c + d * d + 10.1 * (e * e + g * g) +
         19.8 * e * g;
}

double styblinski_tang(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v * v * v - 16.0 * v * v + 5.0 * v;
  return 0.5 * s;
}

double zakharov(std::span<const double> x) {
  double sq = 0.0, lin = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sq += x[i] * x[i];
    lin += 0.5 * static_cast<double>(i + 1) * x[i];
  }
  const double l2 = lin * lin;
  return sq + l2 + l2 * l2;
}

double trid(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += (x[i] - 1.0) * (x[i] - 1.0);
    if (i > 0) s -= x[i] * x[i - 1];
  }
  return s;
}

double sum_of_powers(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]), double(i + 2));
  return s;
}

// Schwefel 1.2: a rotated, coupled quadratic.
double cumulative_quadratic(std::span<const double> x) {
  double s = 0.0, partial = 0.0;
  for (double v : x) {
    partial += v;
    s += partial * partial;
  }
  return s;
}

// Weights span four decades, condition number 1e4.
double ill_conditioned_quadratic(std::span<const double> x) {
  const double n1 = static_cast<double>(x.size() - 1);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    s += std::pow(10.0, 4.0 * static_cast<double>(i) / n1) * x[i] * x[i];
  return s;
}

double weighted_separable_quadratic(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double k = static_cast<double>(i + 1);
    const double d = x[i] - 1.0 / k;
    s += k * d * d;
  }
  return s;
}

double dixon_price(std::span<const double> x) {
  double s = (x[0] - 1.0) * (x[0] - 1.0);
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double d = 2.0 * x[i] * x[i] - x[i - 1];
    s += static_cast<double>(i + 1) * d * d;
  }
  return s;
}

// Unconstrained minimizer at x = 2 lies outside the [-1, 1] box.
double shifted_quadratic(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += (v - 2.0) * (v - 2.0);
  return s;
}

// Exponential coupling of the first half of the variables plus a linear
// term pushing every variable to its upper bound.
double explin(std::span<const double> x) {
  const std::size_t m = x.size() / 2;
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i) s += std::exp(0.1 * x[i] * x[i + 1]);
  for (std::size_t i = 0; i < x.size(); ++i) s -= 10.0 * static_cast<double>(i + 1) * x[i];
  return s;
}

Problem p_sphere2() {
  return uniform_box("sphere2", 2, -5.0, 5.0, {1.0, 1.0}, sphere, 0.0);
}
Problem p_rosenbrock2() {
  return uniform_box("rosenbrock2", 2, -2.0, 2.0, {-1.2, 1.0}, rosenbrock, 0.0);
}
Problem p_camel() {
  return make("six_hump_camel", {-3.0, -2.0}, {3.0, 2.0}, {-1.0, 1.0}, six_hump_camel,
              -1.0316284534898774);
}
Problem p_hartmann3() {
  return uniform_box("hartmann3", 3, 0.0, 1.0, {0.2, 0.2, 0.2}, hartmann3, -3.86278214782076);
}

ProblemSuite smoke_suite() {
  return {"smoke", {p_sphere2(), p_rosenbrock2(), p_camel(), p_hartmann3()}};
}

ProblemSuite default_suite() {
  ProblemSuite s{"default", {}};
  auto& v = s.problems;
  v.push_back(p_sphere2());
  v.push_back(p_rosenbrock2());
  v.push_back(p_camel());
  v.push_back(uniform_box("beale", 2, -4.5, 4.5, {1.0, 1.0}, beale, 0.0));
  v.push_back(uniform_box("booth", 2, -10.0, 10.0, {0.0, 0.0}, booth, 0.0));
  v.push_back(uniform_box("himmelblau", 2, -5.0, 5.0, {0.0, 0.0}, himmelblau, 0.0));
  v.push_back(p_hartmann3());
  v.push_back(uniform_box("levy3", 3, -10.0, 10.0, {-4.0, 2.0, 6.0}, levy, 0.0));
  v.push_back(
      uniform_box("rosenbrock4", 4, -2.0, 2.0, {-1.2, 1.0, -1.2, 1.0}, rosenbrock, 0.0));
  v.push_back(uniform_box("powell_singular4", 4, -4.0, 5.0, {3.0, -1.0, 0.0, 1.0},
                          powell_singular, 0.0));
  v.push_back(uniform_box("wood4", 4, -10.0, 10.0, {-3.0, -1.0, -3.0, -1.0}, wood, 0.0));
  v.push_back(uniform_box("styblinski_tang4", 4, -5.0, 5.0, filled(4, 0.0), styblinski_tang,
                          -156.66466281508568));
  v.push_back(uniform_box("zakharov5", 5, -5.0, 10.0, filled(5, 1.0), zakharov, 0.0));
  v.push_back(uniform_box("trid6", 6, -36.0, 36.0, filled(6, 0.0), trid, -50.0));
  v.push_back(uniform_box("hartmann6", 6, 0.0, 1.0, filled(6, 0.5), hartmann6,
                          -3.32236801141551));
  v.push_back(uniform_box("sum_of_powers6", 6, -1.0, 1.0, filled(6, 0.5), sum_of_powers, 0.0));
  v.push_back(uniform_box("cumulative_quadratic8", 8, -10.0, 10.0, filled(8, 1.0),
                          cumulative_quadratic, 0.0));
  v.push_back(uniform_box("ill_conditioned_quadratic8", 8, -4.0, 4.0, filled(8, 1.0),
                          ill_conditioned_quadratic, 0.0));
  v.push_back(uniform_box("weighted_quadratic10", 10, -2.0, 2.0, filled(10, 0.0),
                          weighted_separable_quadratic, 0.0));
  v.push_back(uniform_box("dixon_price10", 10, -10.0, 10.0, filled(10, 1.0), dixon_price, 0.0));
  v.push_back(uniform_box("bound_quadratic12", 12, -1.0, 1.0, filled(12, 0.0),
                          shifted_quadratic, 12.0));
  v.push_back(uniform_box("explin12", 12, 0.0, 10.0, filled(12, 0.0), explin, std::nullopt));
  return s;
}

}  // namespace

double evaluate(const Problem& problem, std::span<const double> x) {
  if (x.size() != problem.dimension())
    throw std::invalid_argument("evaluate: problem '" + problem.name + "' expects " +
                                std::to_string(problem.dimension()) + " variables, got " +
                                std::to_string(x.size()));
  return problem.objective(x);
}

void validate(const Problem& problem) {
  const std::size_t n = problem.dimension();
  if (n == 0) throw std::invalid_argument(problem.name + ": empty start point");
  if (problem.lower.size() != n || problem.upper.size() != n)
    throw std::invalid_argument(problem.name + ": bound vectors have wrong length");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(problem.lower[i] < problem.upper[i]))
      throw std::invalid_argument(problem.name + ": lower >= upper at coordinate " +
                                  std::to_string(i));
    if (problem.start[i] < problem.lower[i] || problem.start[i] > problem.upper[i])
      throw std::invalid_argument(problem.name + ": start point outside bounds");
  }
  if (!std::isfinite(evaluate(problem, problem.start)))
    throw std::invalid_argument(problem.name + ": objective not finite at start point");
}

std::vector<std::string> builtin_suite_names() { return {"default", "smoke"}; }

ProblemSuite builtin_suite(std::string_view name) {
  if (name == "default") return default_suite();
  if (name == "smoke") return smoke_suite();
  std::string valid;
  for (const auto& s : builtin_suite_names()) valid += (valid.empty() ? "" : ", ") + s;
  throw std::invalid_argument("unknown suite '" + std::string(name) + "' (valid: " + valid +
                              ")");
}

}  // namespace proftune
