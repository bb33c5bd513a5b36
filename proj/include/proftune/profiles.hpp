#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace proftune {

struct ProblemInfo {
  std::string name;
  std::size_t dimension;
};

/// Evaluation counts t[p][s]; nullopt marks a failed run.
struct MeasureTable {
  std::vector<ProblemInfo> problems;
  std::vector<std::string> solvers;
  std::vector<std::vector<std::optional<std::int64_t>>> t;

  std::size_t solver_index(std::string_view solver) const;
};

/// Throws std::invalid_argument on shape mismatches or counts < 1.
void validate(const MeasureTable& table);

enum class ProfileKind { Performance, Data };

/// Right-continuous staircase. The value is 0 left of the first breakpoint
/// and `values[i]` on [xs[i], xs[i+1]).
struct ProfileCurve {
  ProfileKind kind = ProfileKind::Data;
  std::vector<double> xs;
  std::vector<double> values;

  double at(double x) const;
};

/// r[p][s] = t[p][s] / min_s t[p][s]; +inf for failures and all-fail rows.
std::vector<std::vector<double>> performance_ratios(const MeasureTable& table);

/// p_s(tau) = |{p : r[p][s] <= tau}| / |P|.
ProfileCurve performance_profile(const MeasureTable& table, std::string_view solver);

/// d_s(nu) = |{p : t[p][s] <= nu (n_p + 1)}| / |P|.
ProfileCurve data_profile(const MeasureTable& table, std::string_view solver);

/// Exact integral of the staircase over [a, b]. Throws if a >= b.
double staircase_area(const ProfileCurve& curve, double a, double b);

/// Restriction to [a, b]: the value at `a` becomes the first breakpoint and
/// breakpoints beyond `b` are dropped.
ProfileCurve clip(const ProfileCurve& curve, double a, double b);

enum class CurveFormat { Csv, Svg };

struct NamedCurve {
  std::string label;
  ProfileCurve curve;
};

/// Single curve: `x,value` header and one row per breakpoint.
void emit_curve(std::ostream& os, const ProfileCurve& curve, CurveFormat format);

/// Several curves on shared axes. CSV has one row per distinct abscissa and
/// a `value_<label>` column per curve, headed by `axis_name`. SVG draws one
/// step polyline per curve over [a, b].
void emit_curves(std::ostream& os, const std::vector<NamedCurve>& curves, CurveFormat format,
                 std::string_view axis_name, double a, double b);

}  // namespace proftune
