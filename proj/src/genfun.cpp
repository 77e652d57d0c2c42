#include "symgf/genfun.hpp"
#include "symgf/xmap.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <sstream>

namespace symgf {

namespace {

constexpr double kKernelRelTol = 1e-8;     // sigma < tol*sigma_max counts as ker B
constexpr double kGeneralRouteTol = 1e-6;  // below this, B^-1 is too hot for the direct branch
constexpr double kCondLimit = 1e12;

void fix_column_signs(Mat& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (std::abs(m(r, c)) > 1e-12) {
        if (m(r, c) < 0.0) m.col(c) = -m.col(c);
        break;
      }
    }
  }
}

Mat sym(const Mat& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

KernelBasis kernel_basis(const Mat& B) {
  if (B.rows() != B.cols() || B.rows() == 0) {
    throw Error(ErrorCode::dimension, "kernel_basis: square matrix required");
  }
  const int n = static_cast<int>(B.rows());
  KernelBasis kb;
  kb.n = n;
  if (B.norm() == 0.0) {  // exact zero: canonical identity basis
    kb.k = n;
    kb.b = Mat::Identity(n, n);
    return kb;
  }
  Eigen::JacobiSVD<Mat> svd(B, Eigen::ComputeFullV);
  const double smax = svd.singularValues()(0);
  const double th = (smax < 1e-4) ? kRankAbsTol : kKernelRelTol * smax;
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > th) ++rank;
  }
  kb.k = n - rank;
  kb.b.resize(n, n);
  kb.b.leftCols(kb.k) = svd.matrixV().rightCols(kb.k);  // kernel directions first
  kb.b.rightCols(rank) = svd.matrixV().leftCols(rank);
  fix_column_signs(kb.b);
  return kb;
}

Mat beta_vectors(const SymplecticMatrix& h, const KernelBasis& kb) {
  const int n = kb.n, k = kb.k;
  if (h.n() != n) throw Error(ErrorCode::dimension, "beta_vectors: size mismatch");
  if (k == n) return Mat(n, 0);

  Mat g(n, n);
  g.leftCols(k) = h.A() * kb.b.leftCols(k);
  g.rightCols(n - k) = h.B() * kb.b.rightCols(n - k);

  Eigen::JacobiSVD<Mat> svd(g);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(n - 1);
  if (smin <= 0.0 || smax / smin > kCondLimit) {
    std::ostringstream os;
    os << "beta_vectors: basis matrix {Ab_1..Ab_k, Bb_{k+1}..Bb_n} nearly singular"
       << " (sigma_max=" << smax << ", sigma_min=" << smin << ")";
    throw Error(ErrorCode::degenerate, os.str());
  }

  // beta_J = G^-T e_J: orthogonal to every column of G except B b_J, against
  // which it pairs to 1.
  const Mat ginv_t = g.transpose().partialPivLu().solve(Mat::Identity(n, n));
  Mat beta = ginv_t.rightCols(n - k);

  // defining conditions, checked numerically
  const Mat at_beta = h.A().transpose() * beta;
  const Mat pairing = (h.B() * kb.b.rightCols(n - k)).transpose() * beta;
  double res = (pairing - Mat::Identity(n - k, n - k)).norm();
  if (k > 0) res = std::max(res, (kb.b.leftCols(k).transpose() * at_beta).norm());
  if (res > 1e-9 * std::max(1.0, beta.norm())) {
    throw Error(ErrorCode::degenerate, "beta_vectors: defining conditions violated");
  }
  return beta;
}

SymplecticBasisData assemble_symplectic_basis(const SymplecticMatrix& h, const KernelBasis& kb,
                                              const Mat& beta) {
  const int n = kb.n, k = kb.k;
  SymplecticBasisData sb;
  sb.n = n;
  sb.k = k;
  sb.b = kb.b;
  sb.beta = beta;
  sb.lefts = Mat::Zero(4 * n, 2 * n);
  sb.rights = Mat::Zero(4 * n, 2 * n);

  const Mat ab = h.A() * kb.b;
  const Mat bb = h.B() * kb.b;
  const Mat db = h.D() * kb.b;
  const Mat atbeta = h.A().transpose() * beta;

  // component layout: (Re z, Re zeta, Im z, Im zeta), each of length n
  auto re_z = [n](Mat& m, int col) { return m.col(col).segment(0, n); };
  auto re_zeta = [n](Mat& m, int col) { return m.col(col).segment(n, n); };
  auto im_z = [n](Mat& m, int col) { return m.col(col).segment(2 * n, n); };
  auto im_zeta = [n](Mat& m, int col) { return m.col(col).segment(3 * n, n); };

  for (int j = 0; j < k; ++j) {  // W cap Y pairs
    im_z(sb.lefts, j) = ab.col(j);
    re_zeta(sb.rights, j) = kb.b.col(j);
    im_zeta(sb.rights, j) = db.col(j);
  }
  for (int j = k; j < n; ++j) {  // B-image pairs
    im_z(sb.lefts, j) = bb.col(j);
    re_zeta(sb.rights, j) = atbeta.col(j - k);
    im_zeta(sb.rights, j) = beta.col(j - k);
  }
  for (int j = 0; j < n; ++j) {  // horizontal graph pairs
    re_z(sb.lefts, n + j) = kb.b.col(j);
    im_z(sb.lefts, n + j) = ab.col(j);
    re_zeta(sb.rights, n + j) = -kb.b.col(j);
  }

  // validate every pairing: duals give the identity, everything else vanishes
  double worst = 0.0;
  for (int i = 0; i < 2 * n; ++i) {
    for (int j = 0; j < 2 * n; ++j) {
      const double ll = re_omega(sb.lefts.col(i), sb.lefts.col(j));
      const double rr = re_omega(sb.rights.col(i), sb.rights.col(j));
      const double lr = re_omega(sb.lefts.col(i), sb.rights.col(j)) - (i == j ? 1.0 : 0.0);
      const double sc = std::max(1.0, sb.lefts.col(i).norm() * sb.rights.col(j).norm());
      worst = std::max({worst, std::abs(ll) / sc, std::abs(rr) / sc, std::abs(lr) / sc});
    }
  }
  if (worst > 1e-10) {
    std::ostringstream os;
    os << "assemble_symplectic_basis: pairing validation failed (worst " << worst << ")";
    throw Error(ErrorCode::degenerate, os.str());
  }
  return sb;
}

namespace {

/// Build the quadratic form from a completed basis.  The coefficient matrix of
/// the linear map f'' and the coordinate change t(z) are exactly the data
/// needed; the square (theta'' - f''(t''))^2 is expanded into Q.
GeneratingFunction assemble_phi(const SymplecticMatrix& h, const SymplecticBasisData& sb) {
  const int n = sb.n, k = sb.k;
  const Mat ab = h.A() * sb.b;
  const Mat bb = h.B() * sb.b;
  const Mat cb = h.C() * sb.b;
  const Mat db = h.D() * sb.b;
  const Mat atbeta = h.A().transpose() * sb.beta;
  const Mat bbr = bb.rightCols(n - k);
  const Mat dbr = db.rightCols(n - k);

  // t = L (p; q):
  //   t'_j      = -b_j . p + D b_j . q          (j <= k)
  //   t''_j     = -A^T beta_j . p + beta_j . q  (k < j <= n)
  //   t''_{n+j} =  b_j . p                      (1 <= j <= n)
  Mat L = Mat::Zero(2 * n, 2 * n);
  for (int j = 0; j < k; ++j) {
    L.row(j).segment(0, n) = -sb.b.col(j).transpose();
    L.row(j).segment(n, n) = db.col(j).transpose();
  }
  for (int j = k; j < n; ++j) {
    L.row(j).segment(0, n) = -atbeta.col(j - k).transpose();
    L.row(j).segment(n, n) = sb.beta.col(j - k).transpose();
  }
  for (int j = 0; j < n; ++j) {
    L.row(n + j).segment(0, n) = sb.b.col(j).transpose();
  }

  // coefficient matrix of f'' on t'' = (t''_{k+1..n}, t''_{n+1..2n})
  const int m2 = 2 * n - k;
  Mat M(m2, m2);
  M.topLeftCorner(n - k, n - k) = bbr.transpose() * dbr;       // [Bb_i . Db_j]
  M.topRightCorner(n - k, n) = bbr.transpose() * cb;           // [Bb_i . Cb_j]
  M.bottomLeftCorner(n, n - k) = cb.transpose() * bbr;         // [Cb_i . Bb_j]
  M.bottomRightCorner(n, n) = ab.transpose() * cb;             // [Ab_i . Cb_j]
  if ((M - M.transpose()).norm() > 1e-12 * std::max(1.0, M.norm())) {
    throw Error(ErrorCode::degenerate, "assemble_phi: f'' coefficient matrix not symmetric");
  }
  M = sym(M);

  // validate the graph-membership system matrix against its displayed inverse
  {
    Mat lmat(2 * n, 2 * n);
    lmat.setZero();
    lmat.block(0, 0, n, k) = ab.leftCols(k);
    if (k < n) {
      const Mat btbeta = h.B().transpose() * sb.beta;
      lmat.block(0, k, n, n - k) = -h.A() * btbeta;
      lmat.block(n, k, n, n - k) = -h.C() * btbeta;
    }
    lmat.block(0, n, n, n) = bb;
    lmat.block(n, n, n, n) = db;

    const Mat proj = sb.b.leftCols(k) * sb.b.leftCols(k).transpose();  // onto ker B
    Mat inv(2 * n, 2 * n);
    inv.setZero();
    for (int j = 0; j < k; ++j) {
      inv.row(j).segment(0, n) = db.col(j).transpose();
    }
    const Mat mid = h.D() * (proj * h.C().transpose() * h.B() - Mat::Identity(n, n)) * sb.b;
    for (int j = k; j < n; ++j) {
      inv.row(j).segment(0, n) = mid.col(j).transpose();
      inv.row(j).segment(n, n) = bb.col(j).transpose();
    }
    const Mat low = (h.D() * proj * h.A().transpose() - Mat::Identity(n, n)) * cb;
    for (int j = 0; j < n; ++j) {
      inv.row(n + j).segment(0, n) = low.col(j).transpose();
      inv.row(n + j).segment(n, n) = ab.col(j).transpose();
    }
    const Mat id = Mat::Identity(2 * n, 2 * n);
    const double res = std::max((inv * lmat - id).norm(), (lmat * inv - id).norm());
    if (res > 1e-9 * std::max(1.0, lmat.norm() * inv.norm())) {
      std::ostringstream os;
      os << "assemble_phi: inverse validation failed (residual " << res << ")";
      throw Error(ErrorCode::degenerate, os.str());
    }
  }

  const Mat Lp = L.topRows(k);
  const Mat Ls = L.bottomRows(m2);

  GeneratingFunction gf;
  gf.n = n;
  gf.k = k;
  gf.theta_dim = 2 * n;
  gf.basis = sb;
  gf.Q = Mat::Zero(4 * n, 4 * n);
  gf.Q.block(0, 0, 2 * n, 2 * n) = Ls.transpose() * (M + 2.0 * M * M) * Ls;
  gf.Q.block(0, 2 * n, 2 * n, k) = Lp.transpose();
  gf.Q.block(2 * n, 0, k, 2 * n) = Lp;
  gf.Q.block(0, 2 * n + k, 2 * n, m2) = -2.0 * Ls.transpose() * M;
  gf.Q.block(2 * n + k, 0, m2, 2 * n) = -2.0 * M * Ls;
  gf.Q.block(2 * n + k, 2 * n + k, m2, m2) = 2.0 * Mat::Identity(m2, m2);
  gf.Q = sym(gf.Q);
  return gf;
}

}  // namespace

GeneratingFunction build_genfun_invertible(const SymplecticMatrix& h) {
  const int n = h.n();
  const Mat b = h.B();
  Eigen::JacobiSVD<Mat> svd(b);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(n - 1);
  if (smax == 0.0 || smin <= kKernelRelTol * smax) {
    throw Error(ErrorCode::singular,
                "build_genfun_invertible: B is (near-)singular; use the general branch");
  }

  const auto lu = b.partialPivLu();
  const Mat bi = lu.solve(Mat::Identity(n, n));
  const Mat bia = lu.solve(h.A());
  const Mat dbi = b.transpose().partialPivLu().solve(h.D().transpose()).transpose();
  // B^-1 A and D B^-1 are symmetric for symplectic H; guard then enforce.
  const double asym = std::max((bia - bia.transpose()).norm(), (dbi - dbi.transpose()).norm());
  if (asym > 1e-9 * std::max(1.0, bia.norm() + dbi.norm())) {
    throw Error(ErrorCode::degenerate, "build_genfun_invertible: symmetry of B^-1 A / D B^-1 violated");
  }

  GeneratingFunction gf;
  gf.n = n;
  gf.k = 0;
  gf.theta_dim = 0;
  gf.Q = Mat::Zero(2 * n, 2 * n);
  gf.Q.topLeftCorner(n, n) = sym(bia);
  gf.Q.topRightCorner(n, n) = -bi;
  gf.Q.bottomLeftCorner(n, n) = -bi.transpose();
  gf.Q.bottomRightCorner(n, n) = sym(dbi);
  gf.Q = sym(gf.Q);
  gf.basis.n = n;
  gf.basis.k = 0;
  gf.basis.b = Mat::Identity(n, n);
  gf.basis.beta = bi.transpose();  // satisfies the beta conditions for b = I
  return gf;
}

GeneratingFunction build_genfun_general(const SymplecticMatrix& h) {
  const KernelBasis kb = kernel_basis(h.B());
  const Mat beta = beta_vectors(h, kb);
  const SymplecticBasisData sb = assemble_symplectic_basis(h, kb, beta);
  return assemble_phi(h, sb);
}

GeneratingFunction build_genfun(const SymplecticMatrix& h) {
  const Mat b = h.B();
  Eigen::JacobiSVD<Mat> svd(b);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(h.n() - 1);
  GeneratingFunction gf;
  if (smax > 0.0 && smin > kGeneralRouteTol * smax) {
    gf = build_genfun_invertible(h);
  } else {
    gf = build_genfun_general(h);
  }
  // graph-identity postcondition on a few deterministic points
  Rng rng(0xC0FFEEull + static_cast<uint64_t>(h.n()));
  for (int trial = 0; trial < 3; ++trial) {
    Vec x(h.n()), xi(h.n());
    for (int i = 0; i < h.n(); ++i) {
      x(i) = rng.uniform(-1.0, 1.0);
      xi(i) = rng.uniform(-1.0, 1.0);
    }
    const GraphSolve gs = graph_from_phi(gf, h, x, xi);
    if (gs.relative() > 1e-8) {
      std::ostringstream os;
      os << "build_genfun: graph identity residual " << gs.relative() << " exceeds 1e-8";
      throw Error(ErrorCode::degenerate, os.str());
    }
  }
  return gf;
}

Mat genfun_xxi_form(const SymplecticMatrix& h) {
  const int n = h.n();
  Eigen::JacobiSVD<Mat> svd(h.B());
  if (svd.singularValues()(0) == 0.0 ||
      svd.singularValues()(n - 1) <= kKernelRelTol * svd.singularValues()(0)) {
    throw Error(ErrorCode::singular, "genfun_xxi_form: B is singular");
  }
  Mat g(2 * n, 2 * n);
  g.topLeftCorner(n, n) = sym(h.A().transpose() * h.C());
  g.topRightCorner(n, n) = h.C().transpose() * h.B();
  g.bottomLeftCorner(n, n) = h.B().transpose() * h.C();
  g.bottomRightCorner(n, n) = sym(h.B().transpose() * h.D());
  return sym(g);
}

namespace {

Vec pack_v(const GeneratingFunction& gf, const CVec& z, const Vec& theta) {
  if (z.size() != gf.n || theta.size() != gf.theta_dim) {
    throw Error(ErrorCode::dimension, "generating function: argument sizes do not match");
  }
  Vec v(gf.dim());
  v.segment(0, gf.n) = z.real();
  v.segment(gf.n, gf.n) = z.imag();
  if (gf.theta_dim > 0) v.segment(2 * gf.n, gf.theta_dim) = theta;
  return v;
}

}  // namespace

double phi_eval(const GeneratingFunction& gf, const CVec& z, const Vec& theta) {
  const Vec v = pack_v(gf, z, theta);
  return 0.5 * v.dot(gf.Q * v);
}

PhiGrad phi_grad(const GeneratingFunction& gf, const CVec& z, const Vec& theta) {
  const Vec v = pack_v(gf, z, theta);
  const Vec w = gf.Q * v;
  PhiGrad g;
  const cplx i(0.0, 1.0);
  g.dz = 0.5 * (w.segment(0, gf.n).cast<cplx>() - i * w.segment(gf.n, gf.n).cast<cplx>());
  g.dtheta = w.tail(gf.theta_dim);
  return g;
}

CMat phi_ztheta(const GeneratingFunction& gf) {
  const cplx i(0.0, 1.0);
  const Mat qpt = gf.Q.block(0, 2 * gf.n, gf.n, gf.theta_dim);
  const Mat qqt = gf.Q.block(gf.n, 2 * gf.n, gf.n, gf.theta_dim);
  return 0.5 * (qpt.cast<cplx>() - i * qqt.cast<cplx>());
}

CMat phi_zzbar(const GeneratingFunction& gf) {
  const cplx i(0.0, 1.0);
  const Mat qpp = gf.Qpp(), qqq = gf.Qqq(), qpq = gf.Qpq();
  return 0.25 * ((qpp + qqq).cast<cplx>() + i * (qpq - qpq.transpose()).cast<cplx>());
}

CMat phi_zz(const GeneratingFunction& gf) {
  const cplx i(0.0, 1.0);
  const Mat qpp = gf.Qpp(), qqq = gf.Qqq(), qpq = gf.Qpq();
  return 0.25 * ((qpp - qqq).cast<cplx>() - i * (qpq + qpq.transpose()).cast<cplx>());
}

GraphSolve graph_from_phi(const GeneratingFunction& gf, const SymplecticMatrix& h, const Vec& x,
                          const Vec& xi) {
  const int n = gf.n;
  if (h.n() != n) throw Error(ErrorCode::dimension, "graph_from_phi: size mismatch");
  const ComplexGraphPoint pt = graph_embed(h, x, xi);
  Vec u(2 * n);
  u.segment(0, n) = pt.z.real();
  u.segment(n, n) = pt.z.imag();

  const int td = gf.theta_dim;
  const Mat quu = gf.Q.block(0, 0, 2 * n, 2 * n);
  const Vec gu = quu * u;

  Vec rhs(td + 2 * n);
  Mat a(td + 2 * n, td);
  if (td > 0) {
    const Mat qtu = gf.Q.block(2 * n, 0, td, 2 * n);
    const Mat qtt = gf.Qthetatheta();
    const Mat qut = gf.Qutheta();
    a.topRows(td) = qtt;
    rhs.head(td) = -(qtu * u);
    a.middleRows(td, n) = -qut.topRows(n);
    a.middleRows(td + n, n) = qut.bottomRows(n);
  }
  rhs.segment(td, n) = pt.zeta.real() + gu.segment(0, n);
  rhs.segment(td + n, n) = pt.zeta.imag() - gu.segment(n, n);

  GraphSolve out;
  out.scale = std::max(1.0, u.norm() + pt.zeta.norm());
  if (td == 0) {
    out.theta = Vec(0);
    out.residual = rhs.tail(2 * n).norm();
  } else {
    Eigen::BDCSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    out.theta = svd.solve(rhs);
    out.residual = (a * out.theta - rhs).norm();
  }
  return out;
}

double reverse_inclusion_check(const GeneratingFunction& gf, const SymplecticMatrix& h,
                               uint64_t seed, int trials) {
  const int n = gf.n;
  const int td = gf.theta_dim;
  Mat null_basis;
  if (td == 0) {
    null_basis = Mat::Identity(2 * n, 2 * n);
  } else {
    Mat stat(td, 2 * n + td);
    stat.leftCols(2 * n) = gf.Q.block(2 * n, 0, td, 2 * n);
    stat.rightCols(td) = gf.Qthetatheta();
    null_basis = nullspace_basis(stat);
    if (null_basis.cols() == 0) {
      throw Error(ErrorCode::degenerate, "reverse_inclusion_check: empty stationary set");
    }
  }

  Rng rng(seed);
  double worst = 0.0;
  const cplx i(0.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    Vec coeff(null_basis.cols());
    for (Eigen::Index j = 0; j < coeff.size(); ++j) coeff(j) = rng.gaussian();
    const Vec v = null_basis * coeff;
    CVec z(n);
    for (int j = 0; j < n; ++j) z(j) = cplx(v(j), v(n + j));
    const Vec theta = v.tail(td);
    const PhiGrad pg = phi_grad(gf, z, theta);
    const CVec zeta = -2.0 * pg.dz;

    const Vec x = z.real();
    const Vec xi = zeta.real();
    const double r = (z.imag() - (h.A() * x + h.B() * xi)).norm() +
                     (zeta.imag() - (h.C() * x + h.D() * xi)).norm();
    const double scale = std::max(1.0, v.norm() + zeta.norm());
    worst = std::max(worst, r / scale);
  }
  return worst;
}

cplx omega_via_phi(const GeneratingFunction& gf, const CVec& z, const Vec& theta, const CVec& w,
                   const Vec& eta_param) {
  const PhiGrad g1 = phi_grad(gf, z, theta);
  const PhiGrad g2 = phi_grad(gf, w, eta_param);
  const double s1 = std::max(1.0, z.norm() + theta.norm());
  const double s2 = std::max(1.0, w.norm() + eta_param.norm());
  if (g1.dtheta.norm() > 1e-8 * s1 || g2.dtheta.norm() > 1e-8 * s2) {
    throw Error(ErrorCode::precondition, "omega_via_phi: points are not stationary in theta");
  }

  const CMat zt = phi_ztheta(gf);
  const CMat zzb = phi_zzbar(gf);
  cplx acc = 0.0;
  if (gf.theta_dim > 0) {
    const CVec eta_c = eta_param.cast<cplx>();
    const CVec theta_c = theta.cast<cplx>();
    acc += 2.0 * ((z.transpose() * zt * eta_c)(0, 0) - (w.transpose() * zt * theta_c)(0, 0));
  }
  acc += 2.0 * ((z.transpose() * zzb * w.conjugate())(0, 0) -
                (w.transpose() * zzb * z.conjugate())(0, 0));
  return acc;
}

double restriction_identity_check(const SymplecticMatrix& h, uint64_t seed, int trials,
                                  const GeneratingFunction* gf_in) {
  GeneratingFunction local;
  const GeneratingFunction* gf = gf_in;
  if (gf == nullptr) {
    local = build_genfun(h);
    gf = &local;
  }
  const int n = h.n();
  const Mat x_of_h = xmap(h).mat();
  const double xnorm = x_of_h.norm();
  const cplx i(0.0, 1.0);

  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Vec x(n), xi(n), xp(n), xip(n);
    for (int j = 0; j < n; ++j) {
      x(j) = rng.uniform(-1.0, 1.0);
      xi(j) = rng.uniform(-1.0, 1.0);
      xp(j) = rng.uniform(-1.0, 1.0);
      xip(j) = rng.uniform(-1.0, 1.0);
    }
    const ComplexGraphPoint p1 = graph_embed(h, x, xi);
    const ComplexGraphPoint p2 = graph_embed(h, xp, xip);
    const cplx via_points = omega_complex(p1, p2);

    const GraphSolve s1 = graph_from_phi(*gf, h, x, xi);
    const GraphSolve s2 = graph_from_phi(*gf, h, xp, xip);
    const cplx via_phi = omega_via_phi(*gf, p1.z, s1.theta, p2.z, s2.theta);

    Vec v1(2 * n), v2(2 * n);
    v1 << x, xi;
    v2 << xp, xip;
    const cplx via_xmap = i * v1.dot(x_of_h * v2);

    const double scale = std::max(1.0, v1.norm() * v2.norm() * (1.0 + xnorm));
    const double d = std::max({std::abs(via_points - via_phi), std::abs(via_points - via_xmap),
                               std::abs(via_phi - via_xmap)});
    worst = std::max(worst, d / scale);
  }
  return worst;
}

GraphVerify verify_genfun(const GeneratingFunction& gf, const SymplecticMatrix& h, uint64_t seed,
                          int trials) {
  GraphVerify out;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    Vec x(h.n()), xi(h.n());
    for (int j = 0; j < h.n(); ++j) {
      x(j) = rng.uniform(-1.0, 1.0);
      xi(j) = rng.uniform(-1.0, 1.0);
    }
    out.graph_residual = std::max(out.graph_residual, graph_from_phi(gf, h, x, xi).relative());
  }
  out.reverse_residual = reverse_inclusion_check(gf, h, seed + 1, trials);
  out.restriction_residual = restriction_identity_check(h, seed + 2, trials, &gf);
  return out;
}

}  // namespace symgf
