// Truncated Fourier-series arithmetic on the circle: analysis/synthesis,
// the symplectic form S(σ,τ) = ∫ σ τ' dθ, the Hermitian pairing it induces
// on positive-frequency series, and the conjugation operator J on tangent
// vector fields.
//
// Conventions, fixed once for the whole library:
//   * series are trigonometric polynomials  f(θ) = Σ_{0<|m|≤N} c_m e^{imθ};
//     the mean c_0 is stored but pinned to zero (the spaces here are
//     quotients by constants),
//   * weighted basis  e_k = e^{ikθ}/√|k|,
//   * ⟨w1,w2⟩ = (−i/2π)·S(conj(w1), w2), which makes {e_k}_{k≥1} orthonormal
//     on positive-frequency series and is conjugate-linear in the first slot.

#pragma once

#include <complex>
#include <span>
#include <vector>

namespace periodlab {

using Complex = std::complex<double>;

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

namespace detail {

bool is_power_of_two(std::size_t n);

// In-place iterative radix-2 transform; forward uses e^{-iθ} phases,
// inverse is scaled by 1/n. Size must be a power of two.
void fft_radix2(std::vector<Complex>& a, bool inverse);

}  // namespace detail

// θ_j = 2πj/M, j = 0..M-1.
std::vector<double> uniform_grid(int M);

class CircleSeries {
 public:
  // Zero series with cutoff N ≥ 1.
  explicit CircleSeries(int n_modes, bool real_valued = false);

  int n_modes() const { return n_modes_; }
  bool real_valued() const { return real_valued_; }

  // c_m; zero for |m| > N.
  Complex coeff(int m) const;

  // Setting mode 0 to a nonzero value is rejected. On a real-valued series
  // the mirror coefficient c_{-m} = conj(c_m) is kept in lockstep.
  void set_coeff(int m, Complex value);

  // Point evaluation Σ c_m e^{imθ}.
  Complex evaluate(double theta) const;
  double evaluate_real(double theta) const { return evaluate(theta).real(); }

  // Termwise derivative, c_m ↦ im·c_m.
  CircleSeries derivative() const;

  double max_abs_coeff() const;

  // Re-flags this series as real-valued after checking c_{-m} = conj(c_m)
  // within tol; coefficients are symmetrized to kill roundoff skew.
  CircleSeries as_real(double tol = 1e-9) const;

  CircleSeries resized(int n_modes) const;

  friend CircleSeries operator+(const CircleSeries& a, const CircleSeries& b);
  friend CircleSeries operator-(const CircleSeries& a, const CircleSeries& b);
  friend CircleSeries operator*(Complex s, const CircleSeries& a);

 private:
  int n_modes_;
  bool real_valued_;
  std::vector<Complex> coeffs_;  // dense, index m + N
};

double max_coeff_distance(const CircleSeries& a, const CircleSeries& b);

// Fourier analysis of M uniform samples. Requires M a power of two and
// M ≥ 4·n_modes; c_0 is forced to zero. Exact (to roundoff) for
// trigonometric polynomials of degree ≤ M/2 − 1.
CircleSeries analyze(std::span<const Complex> samples, int n_modes);
CircleSeries analyze_real(std::span<const double> samples, int n_modes);

// M samples on the uniform grid. Requires M ≥ 2·n_modes + 1; any M works
// (the inverse FFT is used when M is a power of two).
std::vector<Complex> synthesize(const CircleSeries& series, int M);
std::vector<double> synthesize_real(const CircleSeries& series, int M);

// S(σ,τ) = ∫ σ τ' dθ = 2πi Σ_m m σ_{−m} τ_m.
Complex symplectic_form(const CircleSeries& sigma, const CircleSeries& tau);

// ⟨w1,w2⟩ = (−i/2π) S(conj(w1), w2) = Σ_{m≥1} m conj(w1_m) w2_m.
// Both arguments must be supported on positive modes.
Complex hermitian_pairing(const CircleSeries& w1, const CircleSeries& w2);

CircleSeries project_plus(const CircleSeries& s);
CircleSeries project_minus(const CircleSeries& s);

// Exact product of two trigonometric polynomials, truncated to |m| ≤ n_out.
CircleSeries multiply(const CircleSeries& a, const CircleSeries& b, int n_out);

// Basis convention used throughout: e_k = e^{ikθ}/√|k| and the pairing
// normalization above. basis_scale(k) is the coefficient making e_k from
// the pure exponential.
struct BasisConvention {
  static double basis_scale(int k);
  // Matrix entry of (1/2π)·S in the weighted basis: nonzero only at
  // (j, −j), where it equals i·sgn(−j).
  static Complex pairing_matrix_entry(int j, int k);
};

// Real vector field u(θ)∂/∂θ as a real-flagged series; sl2-normalized means
// u_{−1} = u_0 = u_1 = 0 (the modes a disc automorphism can absorb).
class VectorField {
 public:
  explicit VectorField(const CircleSeries& series);

  const CircleSeries& series() const { return series_; }
  bool sl2_normalized() const { return sl2_normalized_; }
  int n_modes() const { return series_.n_modes(); }
  Complex coeff(int m) const { return series_.coeff(m); }
  double operator()(double theta) const { return series_.evaluate_real(theta); }

 private:
  CircleSeries series_;
  bool sl2_normalized_;
};

// J: u_m ↦ −i·sgn(m)·u_m (conjugate series). Defined on sl2-normalized
// fields only; J∘J = −id there.
VectorField apply_J(const VectorField& v);

}  // namespace periodlab
