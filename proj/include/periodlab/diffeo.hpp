// Orientation-preserving circle diffeomorphisms at desk scale:
// construction and validation, spectral composition and Newton inversion,
// boundary traces of disc automorphisms, and RK4 flows of vector fields.
//
// A diffeomorphism is stored as φ(θ) = θ + rot + p(θ) with p a mean-free
// real trigonometric polynomial, plus a cache of φ on the uniform M-grid.
// The mean displacement lives in `rot` because series pin c_0 = 0.

#pragma once

#include <string>
#include <vector>

#include "periodlab/fourier.hpp"

namespace periodlab {

// Center |a| < 1 and boundary rotation β of z ↦ e^{iβ}(z−a)/(1−ā z).
struct MobiusParams {
  Complex a;
  double beta = 0.0;
};

class CircleDiffeo {
 public:
  // Validated constructor from a mean-free real perturbation series.
  // Fails with "not a diffeomorphism" when min φ' ≤ δ_floor (1e-6).
  static CircleDiffeo make(const CircleSeries& p, int M);
  static CircleDiffeo make(const CircleSeries& p, double rotation, int M);

  static CircleDiffeo identity(int M);
  static CircleDiffeo rotation(double alpha, int M);

  // Unwrapped boundary argument of the disc automorphism; M ≥ 256 guards
  // the phase unwrapping for |a| up to 0.9.
  static CircleDiffeo mobius_boundary(const MobiusParams& params, int M);

  // Re-analysis of raw grid samples of φ (internal path for compose,
  // invert, flow and mobius_boundary).
  static CircleDiffeo from_samples(const std::vector<double>& phi, std::string description);

  double operator()(double theta) const;
  double derivative(double theta) const;

  int grid_size() const { return M_; }
  const std::vector<double>& samples() const { return samples_; }
  std::vector<double> resample(int M) const;

  double rotation_part() const { return rotation_; }
  const CircleSeries& perturbation() const { return perturbation_; }
  double min_derivative() const { return min_derivative_; }

  // Short structural tag used to hash the source of downstream matrices.
  const std::string& description() const { return description_; }

 private:
  CircleDiffeo(CircleSeries p, double rotation, int M, std::string description);

  CircleSeries perturbation_;
  double rotation_;
  int M_;
  double min_derivative_;
  std::vector<double> samples_;
  std::string description_;
};

// (φ∘ψ)(θ) = φ(ψ(θ)), evaluated by spectral interpolation of φ at ψ's
// sample points and re-analyzed. Grids are unified to the larger M.
CircleDiffeo compose(const CircleDiffeo& phi, const CircleDiffeo& psi);

// Pointwise solve of φ(x) = θ_j by bisection-seeded Newton (|φ(x)−θ| ≤ 1e-13).
CircleDiffeo invert(const CircleDiffeo& phi);

// Time-t map of dθ/dt = u(θ) by classical RK4 from every grid point.
CircleDiffeo flow(const VectorField& v, double t, int steps, int M);

// max_j of the properly wrapped pointwise gap |φ(θ_j) − ψ(θ_j)| mod 2π.
double circle_distance(const CircleDiffeo& phi, const CircleDiffeo& psi);

// Least-squares refit of Möbius parameters from boundary samples; returns
// the fit residual (≈0 iff the map is a Möbius boundary trace).
double mobius_fit_residual(const CircleDiffeo& phi);

}  // namespace periodlab
