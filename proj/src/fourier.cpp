#include "periodlab/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace periodlab {

namespace detail {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_radix2(std::vector<Complex>& a, bool inverse) {
  const std::size_t n = a.size();
  if (!is_power_of_two(n)) throw std::invalid_argument("fft: size must be a power of two");

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j |= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  std::vector<Complex> twiddle(n / 2);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? kTwoPi : -kTwoPi) / static_cast<double>(len);
    const std::size_t half = len / 2;
    for (std::size_t k = 0; k < half; ++k) twiddle[k] = std::polar(1.0, ang * static_cast<double>(k));
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex u = a[i + k];
        const Complex v = a[i + k + half] * twiddle[k];
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }

  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& x : a) x *= scale;
  }
}

}  // namespace detail

std::vector<double> uniform_grid(int M) {
  std::vector<double> theta(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) theta[static_cast<std::size_t>(j)] = kTwoPi * j / M;
  return theta;
}

CircleSeries::CircleSeries(int n_modes, bool real_valued)
    : n_modes_(n_modes), real_valued_(real_valued),
      coeffs_(static_cast<std::size_t>(2 * n_modes + 1), Complex{0.0, 0.0}) {
  if (n_modes < 1) throw std::invalid_argument("CircleSeries: n_modes must be >= 1");
}

Complex CircleSeries::coeff(int m) const {
  if (std::abs(m) > n_modes_) return {0.0, 0.0};
  return coeffs_[static_cast<std::size_t>(m + n_modes_)];
}

void CircleSeries::set_coeff(int m, Complex value) {
  if (m == 0) {
    if (value != Complex{0.0, 0.0}) throw std::invalid_argument("CircleSeries: mode 0 is pinned to zero");
    return;
  }
  if (std::abs(m) > n_modes_) throw std::invalid_argument("CircleSeries: mode outside cutoff");
  coeffs_[static_cast<std::size_t>(m + n_modes_)] = value;
  if (real_valued_) coeffs_[static_cast<std::size_t>(-m + n_modes_)] = std::conj(value);
}

Complex CircleSeries::evaluate(double theta) const {
  // Horner-free direct sum; phases stepped by one complex multiply each way.
  const Complex w = std::polar(1.0, theta);
  Complex pos{1.0, 0.0}, neg{1.0, 0.0}, acc{0.0, 0.0};
  for (int m = 1; m <= n_modes_; ++m) {
    pos *= w;
    neg *= std::conj(w);
    acc += coeff(m) * pos + coeff(-m) * neg;
  }
  return acc;
}

CircleSeries CircleSeries::derivative() const {
  CircleSeries d(n_modes_, false);
  for (int m = -n_modes_; m <= n_modes_; ++m) {
    if (m == 0) continue;
    d.set_coeff(m, Complex{0.0, static_cast<double>(m)} * coeff(m));
  }
  if (real_valued_) d.real_valued_ = true;  // (im c_m) keeps the mirror symmetry
  return d;
}

double CircleSeries::max_abs_coeff() const {
  double mx = 0.0;
  for (const auto& c : coeffs_) mx = std::max(mx, std::abs(c));
  return mx;
}

CircleSeries CircleSeries::as_real(double tol) const {
  const double scale = std::max(1.0, max_abs_coeff());
  CircleSeries out(n_modes_, true);
  for (int m = 1; m <= n_modes_; ++m) {
    const Complex cp = coeff(m), cm = coeff(-m);
    if (std::abs(cm - std::conj(cp)) > tol * scale)
      throw std::invalid_argument("CircleSeries: not real-valued (c_{-m} != conj(c_m))");
    out.set_coeff(m, 0.5 * (cp + std::conj(cm)));
  }
  return out;
}

CircleSeries CircleSeries::resized(int n_modes) const {
  CircleSeries out(n_modes, real_valued_);
  for (int m = 1; m <= std::min(n_modes, n_modes_); ++m) {
    out.set_coeff(m, coeff(m));
    if (!real_valued_) out.set_coeff(-m, coeff(-m));
  }
  return out;
}

CircleSeries operator+(const CircleSeries& a, const CircleSeries& b) {
  CircleSeries out(std::max(a.n_modes_, b.n_modes_), a.real_valued_ && b.real_valued_);
  for (int m = -out.n_modes_; m <= out.n_modes_; ++m) {
    if (m == 0) continue;
    out.coeffs_[static_cast<std::size_t>(m + out.n_modes_)] = a.coeff(m) + b.coeff(m);
  }
  return out;
}

CircleSeries operator-(const CircleSeries& a, const CircleSeries& b) {
  return a + (Complex{-1.0, 0.0} * b);
}

CircleSeries operator*(Complex s, const CircleSeries& a) {
  CircleSeries out(a.n_modes_, a.real_valued_ && s.imag() == 0.0);
  for (int m = -a.n_modes_; m <= a.n_modes_; ++m) {
    if (m == 0) continue;
    out.coeffs_[static_cast<std::size_t>(m + out.n_modes_)] = s * a.coeff(m);
  }
  return out;
}

double max_coeff_distance(const CircleSeries& a, const CircleSeries& b) {
  double mx = 0.0;
  const int n = std::max(a.n_modes(), b.n_modes());
  for (int m = -n; m <= n; ++m) mx = std::max(mx, std::abs(a.coeff(m) - b.coeff(m)));
  return mx;
}

CircleSeries analyze(std::span<const Complex> samples, int n_modes) {
  const std::size_t M = samples.size();
  if (!detail::is_power_of_two(M)) throw std::invalid_argument("analyze: sample count must be a power of two");
  if (static_cast<int>(M) < 4 * n_modes) throw std::invalid_argument("analyze: need M >= 4*n_modes");

  std::vector<Complex> bins(samples.begin(), samples.end());
  detail::fft_radix2(bins, false);

  CircleSeries out(n_modes, false);
  const double inv = 1.0 / static_cast<double>(M);
  for (int m = -n_modes; m <= n_modes; ++m) {
    if (m == 0) continue;
    const std::size_t k = static_cast<std::size_t>((m % static_cast<int>(M) + static_cast<int>(M)) % static_cast<int>(M));
    out.set_coeff(m, bins[k] * inv);
  }
  return out;
}

CircleSeries analyze_real(std::span<const double> samples, int n_modes) {
  std::vector<Complex> c(samples.size());
  for (std::size_t j = 0; j < samples.size(); ++j) c[j] = Complex{samples[j], 0.0};
  return analyze(c, n_modes).as_real(1e-9);
}

std::vector<Complex> synthesize(const CircleSeries& series, int M) {
  const int N = series.n_modes();
  if (M < 2 * N + 1) throw std::invalid_argument("synthesize: need M >= 2*n_modes + 1");

  if (detail::is_power_of_two(static_cast<std::size_t>(M))) {
    std::vector<Complex> bins(static_cast<std::size_t>(M), Complex{0.0, 0.0});
    for (int m = -N; m <= N; ++m) {
      if (m == 0) continue;
      bins[static_cast<std::size_t>((m % M + M) % M)] = series.coeff(m) * static_cast<double>(M);
    }
    detail::fft_radix2(bins, true);
    return bins;
  }

  std::vector<Complex> out(static_cast<std::size_t>(M));
  const auto theta = uniform_grid(M);
  for (int j = 0; j < M; ++j) out[static_cast<std::size_t>(j)] = series.evaluate(theta[static_cast<std::size_t>(j)]);
  return out;
}

std::vector<double> synthesize_real(const CircleSeries& series, int M) {
  const auto z = synthesize(series, M);
  std::vector<double> out(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) out[j] = z[j].real();
  return out;
}

Complex symplectic_form(const CircleSeries& sigma, const CircleSeries& tau) {
  const int n = std::max(sigma.n_modes(), tau.n_modes());
  Complex acc{0.0, 0.0};
  for (int m = -n; m <= n; ++m) {
    if (m == 0) continue;
    acc += static_cast<double>(m) * sigma.coeff(-m) * tau.coeff(m);
  }
  return Complex{0.0, kTwoPi} * acc;
}

namespace {

void require_positive_support(const CircleSeries& w, const char* who) {
  const double scale = std::max(1.0, w.max_abs_coeff());
  for (int m = -w.n_modes(); m < 0; ++m) {
    if (std::abs(w.coeff(m)) > 1e-12 * scale)
      throw std::invalid_argument(std::string(who) + ": nonzero negative-mode content");
  }
}

}  // namespace

Complex hermitian_pairing(const CircleSeries& w1, const CircleSeries& w2) {
  require_positive_support(w1, "hermitian_pairing");
  require_positive_support(w2, "hermitian_pairing");
  Complex acc{0.0, 0.0};
  const int n = std::max(w1.n_modes(), w2.n_modes());
  for (int m = 1; m <= n; ++m) acc += static_cast<double>(m) * std::conj(w1.coeff(m)) * w2.coeff(m);
  return acc;
}

CircleSeries project_plus(const CircleSeries& s) {
  CircleSeries out(s.n_modes(), false);
  for (int m = 1; m <= s.n_modes(); ++m) out.set_coeff(m, s.coeff(m));
  return out;
}

CircleSeries project_minus(const CircleSeries& s) {
  CircleSeries out(s.n_modes(), false);
  for (int m = 1; m <= s.n_modes(); ++m) out.set_coeff(-m, s.coeff(-m));
  return out;
}

CircleSeries multiply(const CircleSeries& a, const CircleSeries& b, int n_out) {
  CircleSeries out(n_out, false);
  for (int m = -n_out; m <= n_out; ++m) {
    if (m == 0) continue;
    Complex acc{0.0, 0.0};
    for (int k = -a.n_modes(); k <= a.n_modes(); ++k) {
      const int l = m - k;
      if (std::abs(l) > b.n_modes()) continue;
      acc += a.coeff(k) * b.coeff(l);
    }
    out.set_coeff(m, acc);
  }
  return out;
}

double BasisConvention::basis_scale(int k) {
  if (k == 0) throw std::invalid_argument("basis_scale: k must be nonzero");
  return 1.0 / std::sqrt(static_cast<double>(std::abs(k)));
}

Complex BasisConvention::pairing_matrix_entry(int j, int k) {
  if (j == 0 || k == 0) throw std::invalid_argument("pairing_matrix_entry: modes must be nonzero");
  if (k != -j) return {0.0, 0.0};
  return Complex{0.0, j > 0 ? -1.0 : 1.0};
}

VectorField::VectorField(const CircleSeries& series) : series_(series.as_real()) {
  sl2_normalized_ = std::abs(series_.coeff(1)) == 0.0 && std::abs(series_.coeff(-1)) == 0.0;
}

VectorField apply_J(const VectorField& v) {
  if (!v.sl2_normalized())
    throw std::invalid_argument("apply_J: field must be sl2-normalized (u_{-1}=u_0=u_1=0)");
  CircleSeries out(v.n_modes(), false);
  for (int m = -v.n_modes(); m <= v.n_modes(); ++m) {
    if (m == 0) continue;
    const double sgn = m > 0 ? 1.0 : -1.0;
    out.set_coeff(m, Complex{0.0, -sgn} * v.coeff(m));
  }
  return VectorField(out);
}

}  // namespace periodlab
