#include "proftune/meta_solve.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>
#include <stdexcept>
#include <unordered_map>

#include "poll_basis.hpp"

namespace proftune {
namespace {

class TrialBook {
 public:
  TrialBook(const ConfigObjective& objective, std::int64_t cap)
      : objective_(objective), cap_(cap) {}

  // nullopt once the trial budget is spent.
  std::optional<double> value(const ParamConfig& q) {
    const auto key = fingerprint(q);
    if (auto it = seen_.find(key); it != seen_.end()) return it->second;
    if (static_cast<std::int64_t>(trials_.size()) >= cap_) return std::nullopt;

    double v;
    if (trials_.empty()) {
      v = objective_(q);
    } else {
      try {
        v = objective_(q);
      } catch (const std::exception&) {
        v = std::numeric_limits<double>::infinity();
      }
    }
    seen_.emplace(key, v);
    trials_.push_back({q, v});
    if (trials_.size() == 1 || v < trials_[best_].value) best_ = trials_.size() - 1;
    return v;
  }

  bool exhausted() const { return static_cast<std::int64_t>(trials_.size()) >= cap_; }

  MetaResult result() && {
    const Trial best = trials_[best_];
    return MetaResult{best.q, best.value, std::move(trials_)};
  }

 private:
  const ConfigObjective& objective_;
  std::int64_t cap_;
  std::unordered_map<std::uint64_t, double> seen_;
  std::vector<Trial> trials_;
  std::size_t best_ = 0;
};

}  // namespace

MetaResult meta_solve(const ConfigObjective& objective, const ParamSpace& space,
                      const ParamConfig& q0, const MetaOptions& options) {
  validate(space);
  validate(options.search);
  if (!space.contains(q0)) throw std::invalid_argument("meta_solve: q0 outside the space");
  if (options.trial_cap < 1) throw std::invalid_argument("meta_solve: trial_cap must be >= 1");
  if (!(options.epsilon > 0.0)) throw std::invalid_argument("meta_solve: epsilon must be > 0");

  const auto lo = space.lower.to_array();
  const auto hi = space.upper.to_array();
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < kParamCount; ++i)
    if (i != kIntegerCoordinate && hi[i] > lo[i]) active.push_back(i);
  const double int_width = hi[kIntegerCoordinate] - lo[kIntegerCoordinate];
  const bool integer_active = int_width > 0.0;
  const double int_floor = std::max(1.0, lo[kIntegerCoordinate]);

  const ParamConfig& sp = options.search;
  detail::GaussianSource rng(options.seed);
  TrialBook book(objective, options.trial_cap);

  auto current = q0.to_array();
  double f_current = *book.value(q0);
  double mesh = sp.delta;
  const double mesh_cap = sp.gamma * sp.delta;
  double int_mesh = std::max(1.0, std::round(int_width / 4.0));
  std::deque<std::vector<double>> steps;

  // Returns false when the trial budget ran out.
  auto try_point = [&](const std::array<double, kParamCount>& cand, bool& accepted) {
    if (cand == current) return true;
    const auto v = book.value(ParamConfig::from_array(cand));
    if (!v) return false;
    // Sufficient decrease on the step length in box-width units.
    const double rho = mesh / 10.0;
    if (f_current - *v >= sp.eta * rho * rho) {
      std::vector<double> step(active.size());
      for (std::size_t k = 0; k < active.size(); ++k) {
        const std::size_t i = active[k];
        step[k] = (cand[i] - current[i]) / ((hi[i] - lo[i]) / 10.0);
      }
      if (!active.empty()) {
        steps.push_back(std::move(step));
        if (steps.size() > static_cast<std::size_t>(sp.inertia)) steps.pop_front();
      }
      current = cand;
      f_current = *v;
      accepted = true;
    }
    return true;
  };

  while (!book.exhausted() && mesh >= options.epsilon) {
    bool accepted = false;
    bool budget_left = true;

    if (!active.empty()) {
      const auto basis =
          detail::random_orthonormal_basis(rng, active.size(), detail::inertia_direction(steps));
      for (std::size_t k = 0; k < active.size() && !accepted && budget_left; ++k) {
        for (double sign : {1.0, -1.0}) {
          auto cand = current;
          for (std::size_t j = 0; j < active.size(); ++j) {
            const std::size_t i = active[j];
            const double step = mesh * (hi[i] - lo[i]) / 10.0;
            cand[i] = std::clamp(current[i] + sign * step * basis[k][j], lo[i], hi[i]);
          }
          budget_left = try_point(cand, accepted);
          if (accepted || !budget_left) break;
        }
      }
    }

    if (integer_active && !accepted && budget_left) {
      const double step = std::max(1.0, std::round(int_mesh));
      for (double sign : {1.0, -1.0}) {
        auto cand = current;
        cand[kIntegerCoordinate] = std::clamp(current[kIntegerCoordinate] + sign * step,
                                              int_floor, hi[kIntegerCoordinate]);
        budget_left = try_point(cand, accepted);
        if (accepted || !budget_left) break;
      }
    }

    if (!budget_left) break;
    if (accepted) {
      mesh = std::min(sp.alpha * mesh, mesh_cap);
    } else {
      mesh *= sp.beta;
      int_mesh = std::max(1.0, int_mesh * sp.beta);
    }
  }
  return std::move(book).result();
}

}  // namespace proftune
