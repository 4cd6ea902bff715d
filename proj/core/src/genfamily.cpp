#include "circlech/genfamily.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "circlech/error.hpp"

namespace circlech {

GeneratingFamily::GeneratingFamily(std::vector<Knot> knots, std::vector<CircleMeasure> interval_measures)
    : knots_(std::move(knots)), intervals_(std::move(interval_measures)) {
  if (knots_.size() < 2) throw InvalidArgument("GeneratingFamily: need at least two knots");
  cumulative_mass_.assign(knots_.size(), 0.0);
  for (std::size_t i = 0; i + 1 < knots_.size() && i < intervals_.size(); ++i) {
    cumulative_mass_[i + 1] = cumulative_mass_[i] + intervals_[i].mass();
  }
}

double GeneratingFamily::horizon() const { return knots_.empty() ? 0.0 : knots_.back().t; }

void GeneratingFamily::require_time(double t, const char* op) const {
  if (!(t >= knots_.front().t && t <= horizon())) {
    std::ostringstream os;
    os << op << ": time " << t << " outside [" << knots_.front().t << ", " << horizon() << "]";
    throw InvalidArgument(os.str());
  }
}

std::size_t GeneratingFamily::interval_at(double t) const {
  require_time(t, "interval_at");
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                                   [](double v, const Knot& k) { return v < k.t; });
  const auto idx = static_cast<std::size_t>(std::distance(knots_.begin(), it));
  return std::min(idx == 0 ? 0 : idx - 1, knots_.size() - 2);
}

double GeneratingFamily::alpha_at(double t) const {
  const std::size_t j = interval_at(t);
  const Knot& a = knots_[j];
  const Knot& b = knots_[j + 1];
  const double frac = (t - a.t) / (b.t - a.t);
  return a.alpha + frac * (b.alpha - a.alpha);
}

CircleMeasure GeneratingFamily::sigma_increment(double s, double t) const {
  require_time(s, "sigma_increment");
  require_time(t, "sigma_increment");
  if (s > t) throw InvalidArgument("sigma_increment: s > t");
  CircleMeasure out;
  if (s == t) return out;
  for (std::size_t i = interval_at(s); i < intervals_.size(); ++i) {
    const double a = knots_[i].t;
    const double b = knots_[i + 1].t;
    if (a >= t) break;
    const double lo = std::max(a, s);
    const double hi = std::min(b, t);
    if (hi <= lo) continue;
    const double frac = (hi - lo) / (b - a);
    out = out + (frac == 1.0 ? intervals_[i] : frac * intervals_[i]);
  }
  return out;
}

CircleMeasure GeneratingFamily::sigma_at(double t) const { return sigma_increment(knots_.front().t, t); }

IntervalField GeneratingFamily::interval_field(std::size_t i) const {
  if (i >= intervals_.size()) {
    throw InvalidArgument("interval_field: index " + std::to_string(i) + " out of range");
  }
  const double dt = knots_[i + 1].t - knots_[i].t;
  return {(knots_[i + 1].alpha - knots_[i].alpha) / dt, (1.0 / dt) * intervals_[i]};
}

double GeneratingFamily::mass_clock(double t) const {
  const std::size_t j = interval_at(t);
  const double frac = (t - knots_[j].t) / (knots_[j + 1].t - knots_[j].t);
  return cumulative_mass_[j] + frac * (cumulative_mass_[j + 1] - cumulative_mass_[j]);
}

double GeneratingFamily::reparam_tau(double u) const {
  const double total = cumulative_mass_.back();
  if (!(u >= 0.0 && u <= total)) {
    std::ostringstream os;
    os << "reparam_tau: u = " << u << " outside [0, " << total << "]";
    throw InvalidArgument(os.str());
  }
  // Last knot with a(t_j) <= u; past it the clock strictly increases, or it is t_m.
  const auto it = std::upper_bound(cumulative_mass_.begin(), cumulative_mass_.end(), u);
  const auto j = static_cast<std::size_t>(std::distance(cumulative_mass_.begin(), it)) - 1;
  if (j + 1 == knots_.size()) return knots_.back().t;
  const double rise = cumulative_mass_[j + 1] - cumulative_mass_[j];
  return knots_[j].t + (u - cumulative_mass_[j]) / rise * (knots_[j + 1].t - knots_[j].t);
}

std::size_t GeneratingFamily::moment_order() const {
  std::size_t n = std::numeric_limits<std::size_t>::max();
  for (const auto& m : intervals_) n = std::min(n, m.moment_order());
  return n;
}

std::vector<std::string> validate(const GeneratingFamily& family) {
  std::vector<std::string> out;
  const auto& knots = family.knots();
  const auto& intervals = family.interval_measures();
  if (knots.size() < 2) {
    out.emplace_back("fewer than two knots");
    return out;
  }
  if (knots.front().t != 0.0) out.emplace_back("t_0 ≠ 0");
  if (knots.front().alpha != 0.0) out.emplace_back("α(0) ≠ 0");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!std::isfinite(knots[i].t) || !std::isfinite(knots[i].alpha)) {
      out.emplace_back("knot " + std::to_string(i) + " not finite");
    }
    if (i > 0 && !(knots[i].t > knots[i - 1].t)) {
      out.emplace_back("knots not strictly increasing at " + std::to_string(i));
    }
  }
  if (intervals.size() + 1 != knots.size()) {
    out.emplace_back("expected " + std::to_string(knots.size() - 1) + " interval measures, got " +
                     std::to_string(intervals.size()));
  }
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (!intervals[i].violations().empty()) {
      out.emplace_back("Δσ_" + std::to_string(i) + " not non-negative");
    }
  }
  return out;
}

GeneratingFamily make_validated(std::vector<Knot> knots, std::vector<CircleMeasure> interval_measures) {
  if (knots.size() < 2) throw InvalidArgument("invalid generating family: fewer than two knots");
  GeneratingFamily f(std::move(knots), std::move(interval_measures));
  const auto v = validate(f);
  if (!v.empty()) {
    std::string msg = "invalid generating family:";
    for (const auto& s : v) msg += " [" + s + "]";
    throw InvalidArgument(msg);
  }
  return f;
}

IntervalField interval_field(const GeneratingFamily& family, std::size_t i) {
  return family.interval_field(i);
}

double mass_clock(const GeneratingFamily& family, double t) { return family.mass_clock(t); }

double reparam_tau(const GeneratingFamily& family, double u) { return family.reparam_tau(u); }

GeneratingFamily from_standard_triple(std::span<const double> times,
                                      std::span<const StandardTriple> rates) {
  if (times.size() != rates.size() + 1) {
    throw InvalidArgument("from_standard_triple: need one rate triple per interval");
  }
  std::vector<Knot> knots{{times[0], 0.0}};
  std::vector<CircleMeasure> intervals;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    const auto& r = rates[i];
    const double dt = times[i + 1] - times[i];
    if (r.gaussian < 0.0) throw InvalidArgument("from_standard_triple: negative Gaussian variance");
    std::vector<Atom> atoms;
    if (r.gaussian != 0.0) atoms.push_back({0.0, 0.5 * r.gaussian * dt});
    for (const auto& a : r.levy) {
      if (wrap_angle(a.theta) == 0.0) {
        throw InvalidArgument("from_standard_triple: Levy atom at xi = 1");
      }
      if (a.weight < 0.0) throw InvalidArgument("from_standard_triple: negative Levy weight");
      atoms.push_back({a.theta, (1.0 - std::cos(a.theta)) * a.weight * dt});
    }
    knots.push_back({times[i + 1], knots.back().alpha + r.drift * dt});
    intervals.emplace_back(std::move(atoms));
  }
  return make_validated(std::move(knots), std::move(intervals));
}

std::vector<double> uniform_times(double horizon, std::size_t intervals) {
  if (intervals == 0 || !(horizon > 0.0)) throw InvalidArgument("uniform_times: empty grid");
  std::vector<double> t(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    t[i] = horizon * static_cast<double>(i) / static_cast<double>(intervals);
  }
  t.back() = horizon;
  return t;
}

GeneratingFamily homogeneous_family(double gamma, const CircleMeasure& rho, double horizon,
                                    std::size_t intervals) {
  const auto t = uniform_times(horizon, intervals);
  std::vector<Knot> knots;
  std::vector<CircleMeasure> meas;
  for (std::size_t i = 0; i < t.size(); ++i) {
    knots.push_back({t[i], gamma * t[i]});
    if (i + 1 < t.size()) meas.push_back((t[i + 1] - t[i]) * rho);
  }
  return make_validated(std::move(knots), std::move(meas));
}

GeneratingFamily slit_family(const std::function<double(double)>& lambda,
                             const std::function<double(double)>& theta, double horizon,
                             std::size_t intervals) {
  const auto t = uniform_times(horizon, intervals);
  std::vector<Knot> knots;
  std::vector<CircleMeasure> meas;
  for (std::size_t i = 0; i < t.size(); ++i) {
    knots.push_back({t[i], 0.0});
    if (i + 1 < t.size()) {
      const double mid = 0.5 * (t[i] + t[i + 1]);
      meas.push_back(CircleMeasure::dirac(theta(mid), lambda(mid) * (t[i + 1] - t[i])));
    }
  }
  return make_validated(std::move(knots), std::move(meas));
}

GeneratingFamily resample(const GeneratingFamily& family, std::span<const double> times) {
  if (times.size() < 2 || times.front() != 0.0) {
    throw InvalidArgument("resample: times must start at 0 and contain two points");
  }
  std::vector<Knot> knots;
  std::vector<CircleMeasure> meas;
  for (std::size_t i = 0; i < times.size(); ++i) {
    knots.push_back({times[i], family.alpha_at(times[i])});
    if (i + 1 < times.size()) meas.push_back(family.sigma_increment(times[i], times[i + 1]));
  }
  knots.front().alpha = 0.0;
  return make_validated(std::move(knots), std::move(meas));
}

}  // namespace circlech
