#include "symgf/xmap.hpp"

namespace symgf {

SkewMatrix xmap_extended(const Mat& m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0) {
    throw Error(ErrorCode::dimension, "xmap_extended: even-dimensional square matrix required");
  }
  const int n = static_cast<int>(m.rows()) / 2;
  const Mat j = J_mat(n);
  return SkewMatrix(j * m + m.transpose() * j);
}

SkewMatrix xmap(const SymplecticMatrix& h) {
  const int n = h.n();
  const Mat a = h.A(), b = h.B(), c = h.C(), d = h.D();
  Mat x(2 * n, 2 * n);
  x << c.transpose() - c, -a.transpose() - d, a + d.transpose(), b - b.transpose();
  return SkewMatrix(x);
}

SkewMatrix ymap(const SymplecticMatrix& h) { return SkewMatrix(h.mat() - h.mat().transpose()); }

Mat QuotientRep::assemble() const {
  Mat m(2 * n, 2 * n);
  m << Mat::Zero(n, n), S2, S3, Dfree;
  return m;
}

QuotientRep canonical_rep(const Mat& m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0) {
    throw Error(ErrorCode::dimension, "canonical_rep: even-dimensional square matrix required");
  }
  const int n = static_cast<int>(m.rows()) / 2;
  const Mat m1 = m.topLeftCorner(n, n);
  const Mat m2 = m.topRightCorner(n, n);
  const Mat m3 = m.bottomLeftCorner(n, n);
  const Mat m4 = m.bottomRightCorner(n, n);
  QuotientRep rep;
  rep.n = n;
  rep.S2 = 0.5 * (m2 - m2.transpose());
  rep.S3 = 0.5 * (m3 - m3.transpose());
  rep.Dfree = m4 + m1.transpose();
  return rep;
}

QuotientRep pi_sp(const SymplecticMatrix& h) { return canonical_rep(h.mat()); }

Mat xmap_kernel(const SymplecticMatrix& h) {
  const Mat x = xmap(h).mat();
  return nullspace_basis(x);
}

SymplecticMatrix witness_Hk(int n, int k) {
  return sample_symplectic(n, 0, SampleSpec::witness(k));
}

double conjugation_covariance_check(const SymplecticMatrix& h, const SymplecticMatrix& r) {
  if (h.n() != r.n()) throw Error(ErrorCode::dimension, "conjugation_covariance_check: size mismatch");
  const Mat lhs = h.mat().transpose() * xmap(r).mat() * h.mat();
  const Mat conj = sp_inverse(h).mat() * r.mat() * h.mat();
  const Mat rhs = xmap(SymplecticMatrix::trusted(conj)).mat();
  return (lhs - rhs).norm();
}

double rotation_example_check(double t, int n) {
  const Mat got = xmap(rotation_matrix(n, t)).mat();
  Mat want = Mat::Zero(2 * n, 2 * n);
  want.topRightCorner(n, n) = -2.0 * std::cos(t) * Mat::Identity(n, n);
  want.bottomLeftCorner(n, n) = 2.0 * std::cos(t) * Mat::Identity(n, n);
  return (got - want).norm();
}

}  // namespace symgf
