#include "circlech/loewner.hpp"

#include <fftw3.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include "circlech/error.hpp"

namespace circlech {

namespace {

constexpr double kPi = std::numbers::pi;

bool herglotz_is_constant(const CircleMeasure& rho) {
  if (!rho.atoms().empty()) {
    for (const auto& a : rho.atoms())
      if (a.weight != 0.0) return false;
  }
  if (const auto& m = rho.moment_part()) {
    for (const auto& v : m->values)
      if (v != cplx{}) return false;
  }
  return true;
}

// Advances every point of z backward across [a, b] of one knot interval.
void backward_over_piece(const IntervalField& field, double a, double b, std::span<cplx> z,
                         const ode::Tolerances& tol) {
  if (field.gamma == 0.0 && field.rho.is_zero()) return;  // plateau: chain is constant
  if (herglotz_is_constant(field.rho)) {
    // p is the constant -i gamma + mass: z(a) = z(b) e^{(i gamma - mass)(b - a)}
    const cplx factor = std::exp(cplx(-field.rho.mass(), field.gamma) * (b - a));
    for (auto& w : z) w *= factor;
    return;
  }
  auto rhs = [&](double, std::span<const cplx> y, std::span<cplx> dy) {
    for (std::size_t i = 0; i < y.size(); ++i) {
      dy[i] = y[i] * (cplx(0.0, -field.gamma) + herglotz_eval(field.rho, y[i]));
    }
  };
  const double grow_tol = 10.0 * tol.abs_tol;
  auto check = [&](double tau, std::span<const cplx> before, std::span<const cplx> after) {
    for (std::size_t i = 0; i < after.size(); ++i) {
      const double r = std::abs(after[i]);
      if (r >= 1.0) throw SolverError("solve_characteristic: trajectory left the unit disk", tau);
      if (r > std::abs(before[i]) * (1.0 + 1e-8) + grow_tol) {
        throw SolverError("solve_characteristic: |z| increased along the backward flow", tau);
      }
    }
  };
  ode::dopri5(rhs, b, a, z, tol, check);
}

}  // namespace

void solve_characteristic_batch(const GeneratingFamily& family, double s, double t,
                                std::span<cplx> z, const ode::Tolerances& tol) {
  if (s > t) throw InvalidArgument("solve_characteristic: s > t");
  for (const auto& w : z) {
    if (!(std::abs(w) < 1.0)) throw InvalidArgument("solve_characteristic: |z| >= 1");
  }
  const std::size_t lo = family.interval_at(s);
  const std::size_t hi = family.interval_at(t);
  if (s == t) return;
  const auto& knots = family.knots();
  for (std::size_t i = hi + 1; i-- > lo;) {
    const double a = std::max(knots[i].t, s);
    const double b = std::min(knots[i + 1].t, t);
    if (b <= a) continue;
    backward_over_piece(family.interval_field(i), a, b, z, tol);
  }
}

cplx solve_characteristic(const GeneratingFamily& family, double s, double t, cplx z,
                          const ode::Tolerances& tol) {
  solve_characteristic_batch(family, s, t, std::span<cplx>(&z, 1), tol);
  return z;
}

std::size_t default_circle_points(std::size_t order) {
  std::size_t m = 1;
  while (m < 2 * order + 2) m *= 2;
  return m;
}

TruncatedSeries fft_taylor_coefficients(std::span<const cplx> samples, double radius,
                                        std::size_t order) {
  const std::size_t m = samples.size();
  if (m < order + 1) throw InvalidArgument("fft_taylor_coefficients: too few samples");
  static std::mutex plan_mutex;  // FFTW planning is not thread-safe
  auto* in = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * m));
  auto* out = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * m));
  fftw_plan plan;
  {
    std::lock_guard lock(plan_mutex);
    plan = fftw_plan_dft_1d(static_cast<int>(m), in, out, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  for (std::size_t j = 0; j < m; ++j) {
    in[j][0] = samples[j].real();
    in[j][1] = samples[j].imag();
  }
  fftw_execute(plan);
  TruncatedSeries c(order);
  double scale = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k <= order; ++k, scale /= radius) {
    c[k] = cplx(out[k][0], out[k][1]) * scale;
  }
  {
    std::lock_guard lock(plan_mutex);
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);
  return c;
}

TruncatedSeries transition_series(const GeneratingFamily& family, double s, double t,
                                  std::size_t order, std::size_t points, double radius,
                                  const ode::Tolerances& tol) {
  if (points == 0) points = default_circle_points(order);
  if (points < 2 * order + 2 || (points & (points - 1)) != 0) {
    throw InvalidArgument("transition_series: points must be a power of two >= 2N+2");
  }
  if (!(radius > 0.0 && radius < 1.0)) throw InvalidArgument("transition_series: radius not in (0,1)");
  std::vector<cplx> z(points);
  for (std::size_t j = 0; j < points; ++j) {
    z[j] = std::polar(radius, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(points));
  }
  solve_characteristic_batch(family, s, t, z, tol);
  TruncatedSeries c = fft_taylor_coefficients(z, radius, order);
  c[0] = 0.0;  // eta fixes the origin; the sampled constant term is pure discretization noise
  return c;
}

TruncatedSeries solve_chain_series(const GeneratingFamily& family, double t, std::size_t order,
                                   std::size_t points, double radius, const ode::Tolerances& tol) {
  return transition_series(family, family.knots().front().t, t, order, points, radius, tol);
}

ChainSample::ChainSample(std::vector<double> times, std::vector<TruncatedSeries> series)
    : times_(std::move(times)), series_(std::move(series)) {
  if (times_.size() != series_.size() || times_.empty()) {
    throw InvalidArgument("ChainSample: need one series per time");
  }
  for (std::size_t j = 1; j < series_.size(); ++j) {
    if (series_[j].order() != series_[0].order()) throw InvalidArgument("ChainSample: mixed orders");
  }
  alpha_.resize(times_.size());
  decay_.resize(times_.size());
  double prev_arg = std::arg(series_[0][1]);
  alpha_[0] = prev_arg;
  for (std::size_t j = 0; j < times_.size(); ++j) {
    const cplx c1 = series_[j][1];
    decay_[j] = -std::log(std::abs(c1));
    if (j > 0) {
      const double arg = std::arg(c1);
      double d = arg - prev_arg;
      d -= 2.0 * kPi * std::round(d / (2.0 * kPi));
      alpha_[j] = alpha_[j - 1] + d;
      prev_arg = arg;
    }
  }
}

std::size_t ChainSample::order() const { return series_.empty() ? 0 : series_[0].order(); }

TruncatedSeries ChainSample::rotated(std::size_t j) const {
  TruncatedSeries g = series_.at(j);
  for (std::size_t k = 1; k <= g.order(); ++k) g[k] *= std::polar(1.0, -static_cast<double>(k) * alpha_[j]);
  return g;
}

std::vector<std::string> ChainSample::violations(double tol) const {
  std::vector<std::string> out;
  for (std::size_t j = 1; j < times_.size(); ++j) {
    if (!(times_[j] > times_[j - 1])) {
      out.emplace_back("times not strictly increasing at " + std::to_string(j));
      break;
    }
  }
  const TruncatedSeries id = TruncatedSeries::identity(order());
  if (max_abs_diff(series_[0], id) > tol) out.emplace_back("f at t_0 is not the identity");
  for (std::size_t j = 0; j < series_.size(); ++j) {
    if (std::abs(series_[j][0]) > tol) {
      out.emplace_back("c_0 nonzero at sample " + std::to_string(j));
      break;
    }
  }
  for (std::size_t j = 0; j < series_.size(); ++j) {
    if (!(std::abs(series_[j][1]) > 0.0)) {
      out.emplace_back("c_1 vanishes at sample " + std::to_string(j));
      return out;
    }
  }
  for (std::size_t j = 1; j < series_.size(); ++j) {
    if (std::abs(series_[j][1]) > std::abs(series_[j - 1][1]) + tol) {
      out.emplace_back("|c_1| increases at sample " + std::to_string(j));
      break;
    }
  }
  return out;
}

ChainSample solve_chain(const GeneratingFamily& family, std::span<const double> times,
                        std::size_t order, std::size_t points, double radius,
                        const ode::Tolerances& tol) {
  std::vector<TruncatedSeries> series;
  series.reserve(times.size());
  for (double t : times) series.push_back(solve_chain_series(family, t, order, points, radius, tol));
  return ChainSample(std::vector<double>(times.begin(), times.end()), std::move(series));
}

HFamilyRep::HFamilyRep(std::vector<Piece> p, std::vector<double> phi_in)
    : pieces(std::move(p)), phi(std::move(phi_in)) {
  if (phi.empty()) phi.assign(pieces.size(), 0.0);
  if (phi.size() != pieces.size()) throw InvalidArgument("HFamilyRep: one Phi value per piece");
  for (double v : phi) {
    if (v != 0.0) throw InvalidArgument("HFamilyRep: Phi must vanish for normalized chains");
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (!(pieces[i].t1 > pieces[i].t0)) throw InvalidArgument("HFamilyRep: empty piece");
    if (i > 0 && pieces[i].t0 < pieces[i - 1].t1) throw InvalidArgument("HFamilyRep: overlapping pieces");
    if (!pieces[i].rate.violations().empty()) throw InvalidArgument("HFamilyRep: negative rate");
  }
}

HFamilyRep hfamily_from_family(const GeneratingFamily& family) {
  std::vector<HFamilyRep::Piece> pieces;
  const auto& knots = family.knots();
  for (std::size_t i = 0; i < family.interval_count(); ++i) {
    const IntervalField f = family.interval_field(i);
    pieces.push_back({knots[i].t, knots[i + 1].t, knots[i].alpha, f.gamma, f.rho});
  }
  return HFamilyRep(std::move(pieces));
}

namespace {

// int_0^len e^{-i k gamma x} dx, stable for small arguments.
cplx rotation_average(double k_gamma, double len) {
  const double phi = k_gamma * len;
  if (phi == 0.0) return len;
  const double half = std::sin(0.5 * phi);
  // (1 - e^{-i phi}) / (i phi) * len = (2 sin^2(phi/2) + i sin phi) / (i phi) * len
  return cplx(2.0 * half * half, std::sin(phi)) / cplx(0.0, phi) * len;
}

cplx piece_integral(const HFamilyRep::Piece& p, cplx z, double a, double b) {
  const double len = b - a;
  const double alpha_a = p.alpha0 + p.gamma * (a - p.t0);
  const cplx za = std::polar(1.0, -alpha_a) * z;
  if (p.gamma == 0.0 || std::abs(p.gamma) * len < 1e-12) {
    return len * herglotz_eval(p.rate, std::polar(1.0, -p.gamma * 0.5 * len) * za);
  }
  cplx q{};
  const cplx rot_b = std::polar(1.0, -p.gamma * len);
  for (const auto& atom : p.rate.atoms()) {
    // int (1+c)/(1-c) dtau with c(tau) = c_a e^{-i gamma (tau - a)}
    const cplx ca = std::polar(1.0, atom.theta) * za;
    const cplx cb = ca * rot_b;
    q += atom.weight * (len + 2.0 / cplx(0.0, p.gamma) * (std::log(1.0 - cb) - std::log(1.0 - ca)));
  }
  if (const auto& m = p.rate.moment_part()) {
    q += m->mass * len;
    cplx zk = 1.0;
    for (std::size_t k = 1; k <= m->order(); ++k) {
      zk *= za;
      q += 2.0 * m->values[k - 1] * zk * rotation_average(static_cast<double>(k) * p.gamma, len);
    }
  }
  return q;
}

}  // namespace

cplx hfamily_eval(const HFamilyRep& h, cplx z, double u, double v) {
  if (!(std::abs(z) < 1.0)) throw InvalidArgument("hfamily_eval: |z| >= 1");
  if (v < u) throw InvalidArgument("hfamily_eval: empty interval reversed");
  cplx q{};
  if (v == u) return q;
  for (std::size_t i = 0; i < h.pieces.size(); ++i) {
    const auto& p = h.pieces[i];
    const double a = std::max(p.t0, u);
    const double b = std::min(p.t1, v);
    if (b <= a) continue;
    q += cplx(0.0, h.phi[i] * (b - a) / (p.t1 - p.t0));
    q += piece_integral(p, z, a, b);
  }
  return q;
}

ResidualReport integral_residual(const ChainSample& chain, const HFamilyRep& h,
                                 std::span<const cplx> z_grid) {
  ResidualReport rep;
  const auto& times = chain.times();
  std::vector<TruncatedSeries> g, dg;
  for (std::size_t j = 0; j < chain.size(); ++j) {
    g.push_back(chain.rotated(j));
    dg.push_back(g.back().derivative());
  }
  for (const cplx z : z_grid) {
    cplx acc{};
    cplx d_prev = dg[0].eval(z);
    for (std::size_t j = 0; j < chain.size(); ++j) {
      if (j > 0) {
        const cplx d_cur = dg[j].eval(z);
        acc += 0.5 * (d_prev + d_cur) * hfamily_eval(h, z, times[j - 1], times[j]);
        d_prev = d_cur;
      }
      const double r = std::abs(g[j].eval(z) - z + z * acc);
      if (r > rep.max_residual) rep = {r, times[j], z};
    }
  }
  return rep;
}

std::vector<cplx> disk_grid(double max_radius, std::size_t radii, std::size_t angles) {
  std::vector<cplx> out;
  for (std::size_t i = 1; i <= radii; ++i) {
    const double r = max_radius * static_cast<double>(i) / static_cast<double>(radii);
    for (std::size_t k = 0; k < angles; ++k) {
      out.push_back(std::polar(r, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(angles)));
    }
  }
  return out;
}

namespace {

using Toeplitz = Eigen::MatrixXcd;

Toeplitz toeplitz_of(const MomentSequence& m) {
  const auto n = static_cast<Eigen::Index>(m.order() + 1);
  Toeplitz t(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const Eigen::Index d = j - k;
      if (d == 0) t(j, k) = m.mass;
      else if (d > 0) t(j, k) = m.values[static_cast<std::size_t>(d - 1)];
      else t(j, k) = std::conj(m.values[static_cast<std::size_t>(-d - 1)]);
    }
  }
  return t;
}

MomentSequence moments_of(const Toeplitz& t) {
  // Average each diagonal: the Frobenius-nearest Hermitian Toeplitz matrix.
  const Eigen::Index n = t.rows();
  MomentSequence m{0.0, std::vector<cplx>(static_cast<std::size_t>(n - 1))};
  for (Eigen::Index i = 0; i < n; ++i) m.mass += t(i, i).real();
  m.mass /= static_cast<double>(n);
  for (Eigen::Index d = 1; d < n; ++d) {
    cplx s{};
    for (Eigen::Index k = 0; k + d < n; ++k) s += t(k + d, k);
    m.values[static_cast<std::size_t>(d - 1)] = s / static_cast<double>(n - d);
  }
  return m;
}

// Alternating projections between the PSD cone and Toeplitz matrices.
// Returns the Frobenius size of the total adjustment.
double project_psd(MomentSequence& m) {
  const Toeplitz original = toeplitz_of(m);
  const double floor_tol = 1e-12 * (1.0 + std::abs(m.mass));
  for (int iter = 0; iter < 200; ++iter) {
    const Toeplitz t = toeplitz_of(m);
    Eigen::SelfAdjointEigenSolver<Toeplitz> es(t);
    if (es.eigenvalues().minCoeff() >= -floor_tol) break;
    const Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
    const Toeplitz psd = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint();
    m = moments_of(psd);
  }
  // Whatever the alternation leaves is absorbed by a Haar component.
  const double lam = toeplitz_min_eigenvalue(m.mass, m.values);
  if (lam < 0.0) m.mass -= lam;
  m.mass = std::max(m.mass, 0.0);
  return (toeplitz_of(m) - original).norm();
}

}  // namespace

ExtractionResult extract_generating_family(const ChainSample& chain, std::size_t max_order) {
  if (const auto v = chain.violations(1e-6); !v.empty()) {
    throw InvalidArgument("extract_generating_family: invalid chain sample: " + v.front());
  }
  if (chain.size() < 2) throw InvalidArgument("extract_generating_family: need two samples");
  const std::size_t order = chain.order();
  if (order < 2) throw InvalidArgument("extract_generating_family: order must be >= 2");
  if (max_order == 0) throw InvalidArgument("extract_generating_family: max_order must be >= 1");
  const std::size_t kept = std::min(max_order, order - 1);
  const auto& times = chain.times();
  const auto& alpha = chain.alpha();

  ExtractionDiagnostics diag;
  std::vector<Knot> knots;
  std::vector<CircleMeasure> intervals;
  for (std::size_t j = 0; j < chain.size(); ++j) knots.push_back({times[j], alpha[j] - alpha[0]});

  TruncatedSeries g_prev = chain.rotated(0);
  for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
    const TruncatedSeries g_next = chain.rotated(j + 1);
    const double dt = times[j + 1] - times[j];
    const TruncatedSeries num = series_shift_down(g_next - g_prev);
    TruncatedSeries den = g_prev.derivative().with_order(order - 1);
    den += g_next.derivative().with_order(order - 1);
    den *= cplx(0.5);
    if (!(std::abs(den[0]) > 1e-300)) {
      std::ostringstream os;
      os << "extract_generating_family: vanishing derivative at t = " << times[j] << " (data corruption)";
      throw DomainError(os.str());
    }
    const TruncatedSeries rate = series_mul(num, series_reciprocal(den)) * cplx(-1.0 / dt);

    const double alpha_mid = 0.5 * (alpha[j] + alpha[j + 1]) - alpha[0];
    MomentSequence m{dt * rate[0].real(), std::vector<cplx>(kept)};
    for (std::size_t k = 1; k <= kept; ++k) {
      m.values[k - 1] = 0.5 * dt * rate[k] * std::polar(1.0, static_cast<double>(k) * alpha_mid);
    }
    CircleMeasure measure = CircleMeasure::from_moments(m);
    if (!measure.violations().empty()) {
      const double adj = project_psd(m);
      diag.psd_clip_total += adj;
      diag.psd_clip_max = std::max(diag.psd_clip_max, adj);
      ++diag.clipped_intervals;
      std::ostringstream os;
      os << "interval " << j << ": PSD projection adjusted moments by " << adj;
      diag.log.push_back(os.str());
      measure = CircleMeasure::from_moments(std::move(m));
    }
    intervals.push_back(std::move(measure));
    g_prev = g_next;
  }
  return {make_validated(std::move(knots), std::move(intervals)), std::move(diag)};
}

GapReport gap_bound_check(const ChainSample& chain, std::span<const double> radii, double tol,
                          std::size_t angles, std::size_t max_times) {
  static constexpr double kDefaultRadii[] = {0.3, 0.5, 0.7};
  if (radii.empty()) radii = kDefaultRadii;
  GapReport rep;
  rep.min_slack = std::numeric_limits<double>::infinity();

  std::vector<std::size_t> idx;
  const std::size_t n = chain.size();
  if (n <= max_times) {
    for (std::size_t j = 0; j < n; ++j) idx.push_back(j);
  } else {
    for (std::size_t i = 0; i < max_times; ++i) idx.push_back(i * (n - 1) / (max_times - 1));
  }
  std::vector<TruncatedSeries> g;
  std::vector<double> inv_d0;
  for (auto j : idx) {
    g.push_back(chain.rotated(j));
    inv_d0.push_back(1.0 / std::abs(g.back()[1]));
  }
  for (double r : radii) {
    const double bound = 8.0 * r / std::pow(1.0 - r, 4);
    for (std::size_t a = 0; a < angles; ++a) {
      const cplx z = std::polar(r, 2.0 * kPi * static_cast<double>(a) / static_cast<double>(angles));
      std::vector<cplx> val;
      for (const auto& s : g) val.push_back(s.eval(z));
      for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = i + 1; j < g.size(); ++j) {
          const double lhs = std::abs(val[i] - val[j]);
          const double rhs = bound * (inv_d0[j] - inv_d0[i]);
          const double slack = rhs - lhs;
          rep.min_slack = std::min(rep.min_slack, slack);
          ++rep.checks;
          if (slack < -tol) ++rep.violations;
        }
      }
    }
  }
  if (rep.checks == 0) rep.min_slack = 0.0;
  return rep;
}

}  // namespace circlech
