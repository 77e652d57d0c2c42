#pragma once

#include "symgf/genfun.hpp"

#include <optional>

namespace symgf {

/// u(x) = c exp(i x.Mx / (2h)) with M complex symmetric, Im M positive
/// definite; closed under quadratic-phase integral operators.
struct GaussianState {
  int n = 0;
  CMat M;
  cplx c = 1.0;
  double h = 1.0;

  void validate() const;
  static GaussianState standard(int n, double h = 1.0);
};

/// L^2 norm, in closed form from the state parameters.
double state_norm(const GaussianState& u);
/// <u, v> = integral of u * conj(v).
cplx state_inner(const GaussianState& u, const GaussianState& v);

/// det(-i Omega)^{-1/2} for Im Omega positive definite, with the square-root
/// branch tracked continuously along the segment from Omega = iI (value 1).
cplx det_isqrt_tracked(const CMat& omega);

struct PhaseRankResult {
  int rank = 0;
  int expected = 0;  // 2n
  bool pass = false;
  bool structure_ok = false;  // spot checks on the displayed block structure
  double sigma_min = 0.0;
  double sigma_max = 0.0;
};

/// Rank test of the (4n) x (2n) matrix of theta second derivatives; only
/// meaningful for general-branch generating functions (theta present).
PhaseRankResult phase_nondegeneracy_check(const GeneratingFunction& gf);

/// Oscillatory-integral quantization on Gaussian states for invertible B,
/// evaluated in closed form.  Output covariance follows the Moebius action
/// M' = (C + DM)(A + BM)^-1; the amplitude normalization is fixed by norm
/// preservation on the standard Gaussian and reused.
GaussianState quantize_gaussian(const SymplecticMatrix& h, const GaussianState& u);

/// Quantization for arbitrary H: delegates when B is invertible, otherwise
/// factors H = (H R(-t)) R(t) over a deterministic scan of t values for which
/// both factors have well-conditioned B blocks.
GaussianState quantize_general(const SymplecticMatrix& h, const GaussianState& u,
                               std::optional<double> t_shift = std::nullopt);

/// Uniform complex samples of a state/function on [-L, L], n = 1 only.
struct GridField {
  double L = 12.0;
  int N = 2048;
  CVec samples;
};

GridField gaussian_to_grid(const GaussianState& u, double L, int N);
double grid_norm(const GridField& f);
double grid_rel_l2_diff(const GridField& a, const GridField& b);

/// Brute-force trapezoid quadrature of the quantization integral (n = 1,
/// invertible B); the oracle against which the closed form is validated.
GridField grid_quantize(const SymplecticMatrix& h, const GridField& f, double hbar);

struct ComposeReport {
  double discrepancy = 0.0;  // |v1 - kappa v2| / |v2| minimized over |kappa| = 1
  cplx kappa = 1.0;
  double norm_v1 = 0.0;
  double norm_v2 = 0.0;
  uint64_t seed = 0;
};

/// mu(H1) mu(H2) u versus mu(H1 H2) u, compared up to a unimodular scalar
/// (the double-cover sign is not removable).
ComposeReport composition_check(const SymplecticMatrix& h1, const SymplecticMatrix& h2,
                                const GaussianState& u, uint64_t seed);

}  // namespace symgf
