#pragma once

#include "symgf/core.hpp"

#include <optional>

namespace symgf {

/// Kernel-adapted orthonormal basis of R^n: the first k columns span ker B,
/// the rest complete the basis.  Deterministic: each column's first
/// significant component is positive.
struct KernelBasis {
  int n = 0;
  int k = 0;
  Mat b;  // n x n, columns b_1..b_n
};

KernelBasis kernel_basis(const Mat& B);

/// The dual-pair basis of (R^{4n}, Re omega^C) adapted to graph H.
/// Columns of `lefts`/`rights` are the paired 4n-vectors, laid out as
/// (Re z, Re zeta, Im z, Im zeta); pair slots are ordered to match the
/// (t', t'') and (theta', theta'') coordinates.
struct SymplecticBasisData {
  int n = 0;
  int k = 0;
  Mat b;       // n x n orthonormal columns, first k spanning ker B
  Mat beta;    // n x (n-k), columns beta_{k+1}..beta_n
  Mat lefts;   // 4n x 2n
  Mat rights;  // 4n x 2n
};

/// Solve for the beta vectors: beta_J orthogonal to
/// {A b_1..A b_k, B b_{k+1}.., omitting B b_J, ..B b_n} with beta_J . B b_J = 1.
Mat beta_vectors(const SymplecticMatrix& h, const KernelBasis& kb);

SymplecticBasisData assemble_symplectic_basis(const SymplecticMatrix& h, const KernelBasis& kb,
                                              const Mat& beta);

/// Quadratic generating function Phi(z, theta) = 1/2 v^T Q v on
/// v = (Re z, Im z, theta', theta''), with theta' of length k and theta'' of
/// length 2n-k.  The invertible-B branch is theta-free: theta_dim = 0 and Q is
/// 2n x 2n; callers wanting the uniform theta-in-R^{2n} signature may zero-pad.
struct GeneratingFunction {
  int n = 0;
  int k = 0;
  int theta_dim = 0;  // 0 (invertible-B branch) or 2n (general branch)
  Mat Q;              // (2n + theta_dim)^2 symmetric
  SymplecticBasisData basis;

  int dim() const { return 2 * n + theta_dim; }
  // Q blocks in the (p, q, theta) layout.
  Mat Qpp() const { return Q.block(0, 0, n, n); }
  Mat Qpq() const { return Q.block(0, n, n, n); }
  Mat Qqq() const { return Q.block(n, n, n, n); }
  Mat Qutheta() const { return Q.block(0, 2 * n, 2 * n, theta_dim); }
  Mat Qthetatheta() const { return Q.block(2 * n, 2 * n, theta_dim, theta_dim); }
};

/// Direct formula for det B != 0:
/// Phi(p,q) = 1/2 p^T B^-1 A p - p^T B^-1 q + 1/2 q^T D B^-1 q.
GeneratingFunction build_genfun_invertible(const SymplecticMatrix& h);

/// Full auxiliary-parameter construction; valid for every H (any rank of B).
GeneratingFunction build_genfun_general(const SymplecticMatrix& h);

/// Dispatch on the conditioning of B, then verify the graph identity.
GeneratingFunction build_genfun(const SymplecticMatrix& h);

/// The same quadratic expressed on (x, xi) for det B != 0:
/// Phi = 1/2 x^T A^T C x + x^T C^T B xi + 1/2 xi^T B^T D xi.
Mat genfun_xxi_form(const SymplecticMatrix& h);

double phi_eval(const GeneratingFunction& gf, const CVec& z, const Vec& theta);

struct PhiGrad {
  CVec dz;    // dPhi/dz = 1/2 (dPhi/dp - i dPhi/dq)
  Vec dtheta; // dPhi/dtheta
};
PhiGrad phi_grad(const GeneratingFunction& gf, const CVec& z, const Vec& theta);

// Complex second-derivative blocks extracted from Q.
CMat phi_ztheta(const GeneratingFunction& gf);  // n x theta_dim
CMat phi_zzbar(const GeneratingFunction& gf);   // n x n
CMat phi_zz(const GeneratingFunction& gf);      // n x n

/// Solve { dPhi/dtheta(z,.) = 0, -2 dPhi/dz(z,.) = zeta } in least squares at
/// z = graph_embed(h,x,xi).z; residual is reported against
/// scale = max(1, |(p,q)| + |zeta|).
struct GraphSolve {
  Vec theta;
  double residual = 0.0;
  double scale = 1.0;
  double relative() const { return residual / scale; }
};
GraphSolve graph_from_phi(const GeneratingFunction& gf, const SymplecticMatrix& h, const Vec& x,
                          const Vec& xi);

/// Sample the stationary set of Phi, map each point through
/// zeta = -2 dPhi/dz, and test membership in graph H.  Returns the max
/// relative residual over trials.
double reverse_inclusion_check(const GeneratingFunction& gf, const SymplecticMatrix& h,
                               uint64_t seed, int trials);

/// omega^C of two stationary-phase points via the second-derivative sums.
/// Preconditions: both points satisfy |dPhi/dtheta| <= 1e-8 * scale.
cplx omega_via_phi(const GeneratingFunction& gf, const CVec& z, const Vec& theta, const CVec& w,
                   const Vec& eta_param);

/// Three-way comparison of omega^C on embedded points, omega_via_phi with
/// recovered parameters, and i (x,xi)^T X(H) (x',xi').  Max relative pairwise
/// discrepancy over trials.
double restriction_identity_check(const SymplecticMatrix& h, uint64_t seed, int trials,
                                  const GeneratingFunction* gf = nullptr);

struct GraphVerify {
  double graph_residual = 0.0;       // max relative graph_from_phi residual
  double reverse_residual = 0.0;     // reverse_inclusion_check
  double restriction_residual = 0.0; // restriction_identity_check
  double worst() const {
    return std::max({graph_residual, reverse_residual, restriction_residual});
  }
};
GraphVerify verify_genfun(const GeneratingFunction& gf, const SymplecticMatrix& h, uint64_t seed,
                          int trials);

}  // namespace symgf
