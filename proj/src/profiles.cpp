#include "proftune/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "proftune/text.hpp"

namespace proftune {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Turns per-problem thresholds into the cumulative staircase.
ProfileCurve staircase(ProfileKind kind, std::vector<double> thresholds, std::size_t n_problems) {
  ProfileCurve c;
  c.kind = kind;
  std::sort(thresholds.begin(), thresholds.end());
  const double denom = static_cast<double>(n_problems);
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (i + 1 < thresholds.size() && thresholds[i + 1] == thresholds[i]) continue;
    c.xs.push_back(thresholds[i]);
    c.values.push_back(static_cast<double>(i + 1) / denom);
  }
  return c;
}

// Smallest double nu with nu * (n + 1) >= t in floating point, so the jump
// sits exactly where the defining test `t <= nu (n + 1)` first holds.
double budget_threshold(std::int64_t t, std::size_t n) {
  const double scale = static_cast<double>(n + 1);
  const double target = static_cast<double>(t);
  double nu = target / scale;
  while (nu * scale < target) nu = std::nextafter(nu, kInf);
  for (;;) {
    const double below = std::nextafter(nu, -kInf);
    if (below * scale >= target) nu = below;
    else break;
  }
  return nu;
}

}  // namespace

std::size_t MeasureTable::solver_index(std::string_view solver) const {
  for (std::size_t s = 0; s < solvers.size(); ++s)
    if (solvers[s] == solver) return s;
  throw std::invalid_argument("unknown solver '" + std::string(solver) + "'");
}

void validate(const MeasureTable& table) {
  if (table.t.size() != table.problems.size())
    throw std::invalid_argument("measure table: row count differs from problem count");
  for (const auto& row : table.t) {
    if (row.size() != table.solvers.size())
      throw std::invalid_argument("measure table: row width differs from solver count");
    for (const auto& v : row)
      if (v && *v < 1) throw std::invalid_argument("measure table: counts must be >= 1");
  }
}

double ProfileCurve::at(double x) const {
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  if (it == xs.begin()) return 0.0;
  return values[static_cast<std::size_t>(it - xs.begin()) - 1];
}

std::vector<std::vector<double>> performance_ratios(const MeasureTable& table) {
  validate(table);
  std::vector<std::vector<double>> r(table.problems.size());
  for (std::size_t p = 0; p < table.problems.size(); ++p) {
    const auto& row = table.t[p];
    std::optional<std::int64_t> best;
    for (const auto& v : row)
      if (v && (!best || *v < *best)) best = v;
    r[p].resize(row.size(), kInf);
    if (!best) continue;
    for (std::size_t s = 0; s < row.size(); ++s)
      if (row[s]) r[p][s] = static_cast<double>(*row[s]) / static_cast<double>(*best);
  }
  return r;
}

ProfileCurve performance_profile(const MeasureTable& table, std::string_view solver) {
  const std::size_t s = table.solver_index(solver);
  const auto r = performance_ratios(table);
  std::vector<double> finite;
  for (const auto& row : r)
    if (std::isfinite(row[s])) finite.push_back(row[s]);
  return staircase(ProfileKind::Performance, std::move(finite), table.problems.size());
}

ProfileCurve data_profile(const MeasureTable& table, std::string_view solver) {
  validate(table);
  const std::size_t s = table.solver_index(solver);
  std::vector<double> thresholds;
  for (std::size_t p = 0; p < table.problems.size(); ++p)
    if (const auto& v = table.t[p][s]) thresholds.push_back(budget_threshold(*v, table.problems[p].dimension));
  return staircase(ProfileKind::Data, std::move(thresholds), table.problems.size());
}

double staircase_area(const ProfileCurve& curve, double a, double b) {
  if (!(a < b)) throw std::invalid_argument("staircase_area: window must satisfy a < b");
  double area = 0.0;
  for (std::size_t i = 0; i < curve.xs.size(); ++i) {
    const double left = std::max(curve.xs[i], a);
    const double right = std::min(i + 1 < curve.xs.size() ? curve.xs[i + 1] : kInf, b);
    if (right > left) area += curve.values[i] * (right - left);
  }
  return area;
}

ProfileCurve clip(const ProfileCurve& curve, double a, double b) {
  ProfileCurve out;
  out.kind = curve.kind;
  out.xs.push_back(a);
  out.values.push_back(curve.at(a));
  for (std::size_t i = 0; i < curve.xs.size(); ++i)
    if (curve.xs[i] > a && curve.xs[i] <= b) {
      out.xs.push_back(curve.xs[i]);
      out.values.push_back(curve.values[i]);
    }
  return out;
}

namespace {

struct Frame {
  double a, b;
  static constexpr double width = 640, height = 400, margin = 50;
  double px(double x) const { return margin + (x - a) / (b - a) * (width - 2 * margin); }
  double py(double y) const { return height - margin - y * (height - 2 * margin); }
};

void write_svg(std::ostream& os, const std::vector<NamedCurve>& curves, std::string_view axis,
               double a, double b) {
  static constexpr const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                           "#9467bd", "#8c564b"};
  const Frame f{a, b};
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Frame::width << "\" height=\""
     << Frame::height << "\" viewBox=\"0 0 " << Frame::width << ' ' << Frame::height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<line x1=\"" << f.px(a) << "\" y1=\"" << f.py(0) << "\" x2=\"" << f.px(b) << "\" y2=\""
     << f.py(0) << "\" stroke=\"black\"/>\n"
     << "<line x1=\"" << f.px(a) << "\" y1=\"" << f.py(0) << "\" x2=\"" << f.px(a) << "\" y2=\""
     << f.py(1) << "\" stroke=\"black\"/>\n"
     << "<text x=\"" << f.px(a) << "\" y=\"" << Frame::height - 20 << "\" font-size=\"12\">"
     << text::shortest(a) << "</text>\n"
     << "<text x=\"" << f.px(b) - 30 << "\" y=\"" << Frame::height - 20
     << "\" font-size=\"12\">" << text::shortest(b) << "</text>\n"
     << "<text x=\"" << Frame::width / 2 << "\" y=\"" << Frame::height - 10
     << "\" font-size=\"12\">" << axis << "</text>\n"
     << "<text x=\"10\" y=\"" << f.py(1) << "\" font-size=\"12\">1</text>\n"
     << "<text x=\"10\" y=\"" << f.py(0) << "\" font-size=\"12\">0</text>\n";
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const auto& curve = curves[c].curve;
    const char* color = colors[c % std::size(colors)];
    double y = curve.at(a);
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\""
       << f.px(a) << ',' << f.py(y);
    for (std::size_t i = 0; i < curve.xs.size(); ++i) {
      const double x = curve.xs[i];
      if (x <= a || x > b) continue;
      os << ' ' << f.px(x) << ',' << f.py(y);
      y = curve.values[i];
      os << ' ' << f.px(x) << ',' << f.py(y);
    }
    os << ' ' << f.px(b) << ',' << f.py(y) << "\"/>\n";
    os << "<text x=\"" << Frame::width - 140 << "\" y=\"" << 20 + 16 * c << "\" fill=\"" << color
       << "\" font-size=\"12\">" << curves[c].label << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace

void emit_curve(std::ostream& os, const ProfileCurve& curve, CurveFormat format) {
  if (format == CurveFormat::Csv) {
    os << "x,value\n";
    for (std::size_t i = 0; i < curve.xs.size(); ++i)
      os << text::shortest(curve.xs[i]) << ',' << text::shortest(curve.values[i]) << '\n';
    return;
  }
  double a = curve.xs.empty() ? 0.0 : curve.xs.front();
  double b = curve.xs.empty() ? 1.0 : curve.xs.back();
  if (!(b > a)) b = a + 1.0;
  write_svg(os, {NamedCurve{"value", curve}}, "x", a, b);
}

void emit_curves(std::ostream& os, const std::vector<NamedCurve>& curves, CurveFormat format,
                 std::string_view axis_name, double a, double b) {
  if (!(a < b)) throw std::invalid_argument("emit_curves: window must satisfy a < b");
  if (format == CurveFormat::Svg) {
    write_svg(os, curves, axis_name, a, b);
    return;
  }
  std::vector<double> xs{a};
  for (const auto& nc : curves)
    for (double x : nc.curve.xs)
      if (x > a && x <= b) xs.push_back(x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  os << axis_name;
  for (const auto& nc : curves) os << ",value_" << nc.label;
  os << '\n';
  for (double x : xs) {
    os << text::shortest(x);
    for (const auto& nc : curves) os << ',' << text::shortest(nc.curve.at(x));
    os << '\n';
  }
}

}  // namespace proftune
