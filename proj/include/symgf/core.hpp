#pragma once

#include "symgf/types.hpp"

#include <vector>

namespace symgf {

/// The standard symplectic form matrix (0 -I; I 0) of size 2n.
Mat J_mat(int n);

/// Matrix exponential by scaling-and-squaring of the truncated series
/// (norm scaled below 0.5 before summation).
Mat matrix_exp(const Mat& a);

struct SymplecticReport {
  bool symplectic = false;
  double tol = kSymplecticTol;
  // Residuals for the equivalent characterizations of Sp(2n,R); all relative
  // to max(1, |H|_F^2).
  double residual_form = 0.0;       // |H^T J H - J|
  double residual_transpose = 0.0;  // |H J H^T - J|
  double residual_inverse = 0.0;    // |(D^T,-B^T;-C^T,A^T) H - I|
  double residual_block_cols = 0.0; // A^T D - C^T B = I, A^T C sym, B^T D sym
  double residual_block_rows = 0.0; // A D^T - B C^T = I, A B^T sym, C D^T sym
  bool equivalences_agree = true;   // all characterizations give the same verdict
};

SymplecticReport is_symplectic(const Mat& m, double tol = kSymplecticTol);

/// A validated element of Sp(2n,R) with named n-by-n blocks (A B; C D).
class SymplecticMatrix {
 public:
  explicit SymplecticMatrix(Mat h, double tol = kSymplecticTol);

  /// Wrap without re-validating (for values produced by the library itself).
  static SymplecticMatrix trusted(Mat h);

  int n() const { return n_; }
  const Mat& mat() const { return m_; }
  Mat A() const { return m_.topLeftCorner(n_, n_); }
  Mat B() const { return m_.topRightCorner(n_, n_); }
  Mat C() const { return m_.bottomLeftCorner(n_, n_); }
  Mat D() const { return m_.bottomRightCorner(n_, n_); }

 private:
  SymplecticMatrix() = default;
  int n_ = 0;
  Mat m_;
};

/// Element of the symplectic Lie algebra sp(2n,R): J a + a^T J = 0.
class SpAlgebraElement {
 public:
  explicit SpAlgebraElement(Mat m, double tol = kSymplecticTol);
  static SpAlgebraElement trusted(Mat m);
  int n() const { return n_; }
  const Mat& mat() const { return m_; }

 private:
  SpAlgebraElement() = default;
  int n_ = 0;
  Mat m_;
};

/// Skew-symmetric matrix; storage symmetrizes on construction so the
/// invariant X^T = -X holds exactly.
class SkewMatrix {
 public:
  explicit SkewMatrix(const Mat& x);
  int dim() const { return static_cast<int>(m_.rows()); }
  const Mat& mat() const { return m_; }

 private:
  Mat m_;
};

/// A point (z, zeta) of C^n x C^n.
struct ComplexGraphPoint {
  CVec z;
  CVec zeta;
};

/// Inverse via the block transpose formula (D^T -B^T; -C^T A^T).
SymplecticMatrix sp_inverse(const SymplecticMatrix& h);

struct SampleSpec {
  enum class Kind { generic, singular_b, witness };
  Kind kind = Kind::generic;
  int param = 0;  // r for singular_b, k for witness

  static SampleSpec generic() { return {Kind::generic, 0}; }
  static SampleSpec singular_b(int r) { return {Kind::singular_b, r}; }
  static SampleSpec witness(int k) { return {Kind::witness, k}; }
};

/// Deterministic test-harness sampler.
///  - generic: exp(A1) exp(A2) for seeded sp elements with entries in [-1,1];
///  - singular_b(r): interleaved direct sum of 2x2 blocks, r rotations with
///    generic angles and n-r lower shears, so rank(B) = r exactly;
///  - witness(k): the matrix H_k with rank(X(H_k)) = 2k.
SymplecticMatrix sample_symplectic(int n, uint64_t seed, const SampleSpec& spec);

SpAlgebraElement sample_sp_element(int n, Rng& rng, double scale = 1.0);

/// ((cos t)I (-sin t)I; (sin t)I (cos t)I).
SymplecticMatrix rotation_matrix(int n, double t);

/// omega^C evaluated on two points: sum_j (zeta_j w_j - z_j eta_j).
cplx omega_complex(const ComplexGraphPoint& p, const ComplexGraphPoint& q);

/// (x, xi) -> (x + i(Ax+B xi), xi + i(Cx+D xi)).
ComplexGraphPoint graph_embed(const SymplecticMatrix& h, const Vec& x, const Vec& xi);

/// Re omega^C on real 4n-vectors laid out as (Re z, Re zeta, Im z, Im zeta).
double re_omega(const Vec& u, const Vec& v);

// --- small SVD-based helpers shared by several modules ---

double rank_threshold(const Eigen::JacobiSVD<Mat>& svd, double rel = kRankRelTol,
                      double absfb = kRankAbsTol);
int svd_rank(const Mat& m, double rel = kRankRelTol, double absfb = kRankAbsTol);
/// Columns form an orthonormal basis of the null space (may be 0 columns).
Mat nullspace_basis(const Mat& m, double rel = kRankRelTol, double absfb = kRankAbsTol);
/// Largest principal angle between the column spans (requires equal dims).
double max_principal_angle(const Mat& u, const Mat& v);

/// Canonical block generators of sp(2n,R): n^2 for the upper-left block and
/// n(n+1)/2 each for the two symmetric off-diagonal blocks.
std::vector<Mat> sp_generators(int n);
/// The same generators, Frobenius-orthonormalized.
std::vector<Mat> sp_orthonormal_basis(int n);

}  // namespace symgf
