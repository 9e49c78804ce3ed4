#include "periodlab/diffeo.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace periodlab {

namespace {

constexpr double kDerivativeFloor = 1e-6;
constexpr int kSeriesCap = 256;  // re-analysis cutoff for derived diffeos

double wrap_to_pi(double x) {
  x = std::fmod(x + kPi, kTwoPi);
  if (x < 0) x += kTwoPi;
  return x - kPi;
}

}  // namespace

CircleDiffeo::CircleDiffeo(CircleSeries p, double rotation, int M, std::string description)
    : perturbation_(std::move(p)), rotation_(rotation), M_(M),
      min_derivative_(0.0), description_(std::move(description)) {
  if (M_ < 4 || !detail::is_power_of_two(static_cast<std::size_t>(M_)))
    throw std::invalid_argument("CircleDiffeo: grid size must be a power of two >= 4");
  if (M_ < 2 * perturbation_.n_modes() + 1)
    throw std::invalid_argument("CircleDiffeo: grid too small for the perturbation cutoff");

  const auto theta = uniform_grid(M_);
  const auto pvals = synthesize_real(perturbation_, M_);
  samples_.resize(static_cast<std::size_t>(M_));
  for (int j = 0; j < M_; ++j)
    samples_[static_cast<std::size_t>(j)] = theta[static_cast<std::size_t>(j)] + rotation_ + pvals[static_cast<std::size_t>(j)];

  const auto dvals = synthesize_real(perturbation_.derivative(), M_);
  double mn = 1e300;
  for (double d : dvals) mn = std::min(mn, 1.0 + d);
  min_derivative_ = mn;
  if (min_derivative_ <= kDerivativeFloor)
    throw std::invalid_argument("not a diffeomorphism: min phi' = " + std::to_string(min_derivative_));
}

CircleDiffeo CircleDiffeo::make(const CircleSeries& p, int M) { return make(p, 0.0, M); }

CircleDiffeo CircleDiffeo::make(const CircleSeries& p, double rotation, int M) {
  std::ostringstream tag;
  tag << "fourier[N=" << p.n_modes() << ",rot=" << rotation << "]";
  return CircleDiffeo(p.as_real(), rotation, M, tag.str());
}

CircleDiffeo CircleDiffeo::identity(int M) {
  return CircleDiffeo(CircleSeries(1, true), 0.0, M, "identity");
}

CircleDiffeo CircleDiffeo::rotation(double alpha, int M) {
  std::ostringstream tag;
  tag << "rotation[" << alpha << "]";
  return CircleDiffeo(CircleSeries(1, true), alpha, M, tag.str());
}

CircleDiffeo CircleDiffeo::mobius_boundary(const MobiusParams& params, int M) {
  if (std::abs(params.a) >= 1.0) throw std::invalid_argument("mobius_boundary: need |a| < 1");
  if (M < 256) throw std::invalid_argument("mobius_boundary: need M >= 256");

  const auto theta = uniform_grid(M);
  std::vector<double> phi(static_cast<std::size_t>(M));
  double prev = 0.0;
  for (int j = 0; j < M; ++j) {
    const Complex z = std::polar(1.0, theta[static_cast<std::size_t>(j)]);
    const Complex w = std::polar(1.0, params.beta) * (z - params.a) / (1.0 - std::conj(params.a) * z);
    double arg = std::arg(w);
    if (j > 0) arg = prev + wrap_to_pi(arg - prev);  // cumulative unwrap
    phi[static_cast<std::size_t>(j)] = arg;
    prev = arg;
  }

  std::ostringstream tag;
  tag << "mobius[a=(" << params.a.real() << "," << params.a.imag() << "),beta=" << params.beta << "]";
  return from_samples(phi, tag.str());
}

CircleDiffeo CircleDiffeo::from_samples(const std::vector<double>& phi, std::string description) {
  const int M = static_cast<int>(phi.size());
  if (!detail::is_power_of_two(phi.size())) throw std::invalid_argument("from_samples: M must be a power of two");

  const auto theta = uniform_grid(M);
  std::vector<double> p(phi.size());
  double mean = 0.0;
  for (int j = 0; j < M; ++j) {
    p[static_cast<std::size_t>(j)] = phi[static_cast<std::size_t>(j)] - theta[static_cast<std::size_t>(j)];
    mean += p[static_cast<std::size_t>(j)];
  }
  mean /= M;
  for (auto& x : p) x -= mean;

  const int n_modes = std::min(M / 4, kSeriesCap);
  return CircleDiffeo(analyze_real(p, n_modes), mean, M, std::move(description));
}

double CircleDiffeo::operator()(double theta) const {
  return theta + rotation_ + perturbation_.evaluate_real(theta);
}

double CircleDiffeo::derivative(double theta) const {
  return 1.0 + perturbation_.derivative().evaluate_real(theta);
}

std::vector<double> CircleDiffeo::resample(int M) const {
  if (M == M_) return samples_;
  const auto theta = uniform_grid(M);
  const auto pvals = synthesize_real(perturbation_, M);
  std::vector<double> out(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j)
    out[static_cast<std::size_t>(j)] = theta[static_cast<std::size_t>(j)] + rotation_ + pvals[static_cast<std::size_t>(j)];
  return out;
}

CircleDiffeo compose(const CircleDiffeo& phi, const CircleDiffeo& psi) {
  const int M = std::max(phi.grid_size(), psi.grid_size());
  const auto inner = psi.resample(M);
  std::vector<double> out(inner.size());
  for (std::size_t j = 0; j < inner.size(); ++j) out[j] = phi(inner[j]);
  return CircleDiffeo::from_samples(out, "compose[" + phi.description() + "," + psi.description() + "]");
}

CircleDiffeo invert(const CircleDiffeo& phi) {
  const int M = phi.grid_size();
  const auto theta = uniform_grid(M);
  const double pmax = [&] {
    double mx = 0.0;
    for (int j = 0; j < M; ++j)
      mx = std::max(mx, std::abs(phi.samples()[static_cast<std::size_t>(j)] - theta[static_cast<std::size_t>(j)] - phi.rotation_part()));
    return mx + 1e-9;
  }();

  std::vector<double> inv(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) {
    const double target = theta[static_cast<std::size_t>(j)];
    double lo = target - phi.rotation_part() - pmax;
    double hi = target - phi.rotation_part() + pmax;

    // Seed with a few bisections, then Newton with bracket safeguarding.
    for (int it = 0; it < 8; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (phi(mid) < target) lo = mid; else hi = mid;
    }
    double x = 0.5 * (lo + hi);
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      const double f = phi(x) - target;
      if (std::abs(f) <= 1e-13) {
        converged = true;
        break;
      }
      if (f < 0) lo = x; else hi = x;
      const double step = f / phi.derivative(x);
      x -= step;
      if (x <= lo || x >= hi) x = 0.5 * (lo + hi);
    }
    if (!converged) throw std::runtime_error("invert: Newton failed to converge");
    inv[static_cast<std::size_t>(j)] = x;
  }
  return CircleDiffeo::from_samples(inv, "invert[" + phi.description() + "]");
}

CircleDiffeo flow(const VectorField& v, double t, int steps, int M) {
  if (steps < 1) throw std::invalid_argument("flow: steps must be >= 1");

  auto theta = uniform_grid(M);
  const double h = t / steps;
  std::vector<double> k1(theta.size()), k2(theta.size()), k3(theta.size()), k4(theta.size());
  for (int s = 0; s < steps; ++s) {
    for (std::size_t j = 0; j < theta.size(); ++j) k1[j] = v(theta[j]);
    for (std::size_t j = 0; j < theta.size(); ++j) k2[j] = v(theta[j] + 0.5 * h * k1[j]);
    for (std::size_t j = 0; j < theta.size(); ++j) k3[j] = v(theta[j] + 0.5 * h * k2[j]);
    for (std::size_t j = 0; j < theta.size(); ++j) k4[j] = v(theta[j] + h * k3[j]);
    for (std::size_t j = 0; j < theta.size(); ++j)
      theta[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  }

  std::ostringstream tag;
  tag << "flow[t=" << t << ",steps=" << steps << "]";
  return CircleDiffeo::from_samples(theta, tag.str());
}

double circle_distance(const CircleDiffeo& phi, const CircleDiffeo& psi) {
  const int M = std::max(phi.grid_size(), psi.grid_size());
  const auto a = phi.resample(M);
  const auto b = psi.resample(M);
  double mx = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) mx = std::max(mx, std::abs(wrap_to_pi(a[j] - b[j])));
  return mx;
}

double mobius_fit_residual(const CircleDiffeo& phi) {
  // w(1 - conj(a) z) = e^{iβ}(z - a): linear in x = (conj(a), e^{iβ}, e^{iβ}a).
  const int K = 64;
  Eigen::MatrixXcd lhs(K, 3);
  Eigen::VectorXcd rhs(K);
  for (int j = 0; j < K; ++j) {
    const double th = kTwoPi * j / K;
    const Complex z = std::polar(1.0, th);
    const Complex w = std::polar(1.0, phi(th));
    lhs(j, 0) = w * z;
    lhs(j, 1) = z;
    lhs(j, 2) = Complex{-1.0, 0.0};
    rhs(j) = w;
  }
  const Eigen::VectorXcd x = lhs.colPivHouseholderQr().solve(rhs);
  return (lhs * x - rhs).cwiseAbs().maxCoeff();
}

}  // namespace periodlab
