#include "circlech/measures.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "circlech/error.hpp"

namespace circlech {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx unit(double theta) { return std::polar(1.0, theta); }

}  // namespace

double wrap_angle(double theta) noexcept {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

CircleMeasure::CircleMeasure(std::vector<Atom> atoms, std::optional<MomentSequence> moments)
    : atoms_(std::move(atoms)), moments_(std::move(moments)) {
  for (auto& a : atoms_) a.theta = wrap_angle(a.theta);
}

CircleMeasure CircleMeasure::dirac(double theta, double weight) {
  return CircleMeasure({Atom{theta, weight}});
}

CircleMeasure CircleMeasure::haar(double mass, std::size_t order) {
  return CircleMeasure({}, MomentSequence{mass, std::vector<cplx>(order, cplx{})});
}

CircleMeasure CircleMeasure::from_moments(MomentSequence moments) {
  return CircleMeasure({}, std::move(moments));
}

std::size_t CircleMeasure::moment_order() const noexcept {
  return moments_ ? moments_->order() : std::numeric_limits<std::size_t>::max();
}

double CircleMeasure::mass() const {
  double m = moments_ ? moments_->mass : 0.0;
  for (const auto& a : atoms_) m += a.weight;
  return m;
}

cplx CircleMeasure::moment(int k) const {
  if (k < 0) return std::conj(moment(-k));
  if (k == 0) return mass();
  const auto uk = static_cast<std::size_t>(k);
  if (uk > moment_order()) {
    throw InvalidArgument("moment: order " + std::to_string(k) + " exceeds stored order " +
                          std::to_string(moment_order()));
  }
  cplx m{};
  for (const auto& a : atoms_) m += a.weight * unit(k * a.theta);
  if (moments_) m += moments_->values[uk - 1];
  return m;
}

std::vector<cplx> CircleMeasure::moments(std::size_t n) const {
  std::vector<cplx> out(n);
  for (std::size_t k = 1; k <= n; ++k) out[k - 1] = moment(static_cast<int>(k));
  return out;
}

bool CircleMeasure::is_zero() const {
  for (const auto& a : atoms_)
    if (a.weight != 0.0) return false;
  if (moments_) {
    if (moments_->mass != 0.0) return false;
    for (const auto& v : moments_->values)
      if (v != cplx{}) return false;
  }
  return true;
}

CircleMeasure operator+(const CircleMeasure& a, const CircleMeasure& b) {
  std::vector<Atom> atoms = a.atoms_;
  atoms.insert(atoms.end(), b.atoms_.begin(), b.atoms_.end());
  std::optional<MomentSequence> moments;
  if (a.moments_ && b.moments_) {
    const std::size_t n = std::min(a.moments_->order(), b.moments_->order());
    MomentSequence m{a.moments_->mass + b.moments_->mass, std::vector<cplx>(n)};
    for (std::size_t k = 0; k < n; ++k) m.values[k] = a.moments_->values[k] + b.moments_->values[k];
    moments = std::move(m);
  } else if (a.moments_) {
    moments = a.moments_;
  } else if (b.moments_) {
    moments = b.moments_;
  }
  return CircleMeasure(std::move(atoms), std::move(moments));
}

CircleMeasure operator*(double s, const CircleMeasure& m) {
  CircleMeasure out = m;
  for (auto& a : out.atoms_) a.weight *= s;
  if (out.moments_) {
    out.moments_->mass *= s;
    for (auto& v : out.moments_->values) v *= s;
  }
  return out;
}

double toeplitz_min_eigenvalue(double mass, const std::vector<cplx>& values) {
  const auto n = static_cast<Eigen::Index>(values.size() + 1);
  Eigen::MatrixXcd t(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const Eigen::Index d = j - k;
      if (d == 0) t(j, k) = mass;
      else if (d > 0) t(j, k) = values[static_cast<std::size_t>(d - 1)];
      else t(j, k) = std::conj(values[static_cast<std::size_t>(-d - 1)]);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(t, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

std::vector<std::string> CircleMeasure::violations(double tol) const {
  std::vector<std::string> out;
  for (const auto& a : atoms_) {
    if (!std::isfinite(a.weight) || !std::isfinite(a.theta)) {
      out.emplace_back("non-finite atom");
    } else if (a.weight < 0.0) {
      out.emplace_back("negative atom weight");
    }
  }
  if (moments_) {
    const auto& m = *moments_;
    const double slack = tol * (1.0 + std::abs(m.mass));
    bool finite = std::isfinite(m.mass);
    for (const auto& v : m.values) finite = finite && std::isfinite(v.real()) && std::isfinite(v.imag());
    if (!finite) {
      out.emplace_back("non-finite moment");
      return out;
    }
    if (m.mass < -slack) out.emplace_back("negative mass");
    for (std::size_t k = 0; k < m.values.size(); ++k) {
      if (std::abs(m.values[k]) > m.mass + slack) {
        out.emplace_back("|m_" + std::to_string(k + 1) + "| exceeds mass");
        break;
      }
    }
    const double dim = static_cast<double>(m.values.size() + 1);
    if (toeplitz_min_eigenvalue(m.mass, m.values) < -slack * dim) {
      out.emplace_back("moment Toeplitz matrix not positive semidefinite");
    }
  }
  return out;
}

TruncatedSeries herglotz_series(const CircleMeasure& sigma, std::size_t order) {
  TruncatedSeries h(order);
  h[0] = sigma.mass();
  for (std::size_t k = 1; k <= order; ++k) h[k] = 2.0 * sigma.moment(static_cast<int>(k));
  return h;
}

cplx herglotz_eval(const CircleMeasure& sigma, cplx z) {
  cplx h{};
  for (const auto& a : sigma.atoms()) {
    const cplx xz = unit(a.theta) * z;
    h += a.weight * (1.0 + xz) / (1.0 - xz);
  }
  if (const auto& m = sigma.moment_part()) {
    // m_0 + 2 sum m_k z^k by Horner
    cplx acc{};
    for (std::size_t k = m->order(); k >= 1; --k) acc = (acc + 2.0 * m->values[k - 1]) * z;
    h += m->mass + acc;
  }
  return h;
}

double char_distance(const CircleMeasure& sigma, const CircleMeasure& tau, std::size_t K) {
  double d = 0.0;
  double w = 1.0;
  for (std::size_t k = 0; k <= K; ++k, w *= 0.5) {
    d += w * std::abs(sigma.moment(static_cast<int>(k)) - tau.moment(static_cast<int>(k)));
  }
  return d;
}

CircleMeasure pushforward_rotation(const CircleMeasure& sigma, double phi) {
  std::vector<Atom> atoms = sigma.atoms();
  for (auto& a : atoms) a.theta += phi;
  std::optional<MomentSequence> moments = sigma.moment_part();
  if (moments) {
    for (std::size_t k = 0; k < moments->values.size(); ++k) {
      moments->values[k] *= unit(static_cast<double>(k + 1) * phi);
    }
  }
  return CircleMeasure(std::move(atoms), std::move(moments));
}

std::vector<std::pair<double, double>> reconstruct_density(const CircleMeasure& sigma,
                                                           std::size_t grid_size,
                                                           std::size_t order) {
  const std::size_t n = std::min(order, sigma.moment_order());
  const std::vector<cplx> m = sigma.moments(n);
  const double m0 = sigma.mass();
  std::vector<std::pair<double, double>> out;
  out.reserve(grid_size);
  for (std::size_t j = 0; j < grid_size; ++j) {
    const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(grid_size);
    // (1/2pi) sum_{|k|<=n} (1 - |k|/(n+1)) m_k e^{-ik theta}
    double s = m0;
    for (std::size_t k = 1; k <= n; ++k) {
      const double fejer = 1.0 - static_cast<double>(k) / static_cast<double>(n + 1);
      s += 2.0 * fejer * (m[k - 1] * unit(-static_cast<double>(k) * theta)).real();
    }
    out.emplace_back(theta, std::max(0.0, s) / kTwoPi);
  }
  return out;
}

}  // namespace circlech
