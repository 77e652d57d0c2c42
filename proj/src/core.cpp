#include "symgf/core.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <sstream>

namespace symgf {

namespace {

void require_even_square(const Mat& m, const char* who) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::dimension, std::string(who) + ": matrix must be square");
  }
  if (m.rows() % 2 != 0 || m.rows() == 0) {
    throw Error(ErrorCode::dimension, std::string(who) + ": dimension must be a positive even number");
  }
  if (!m.allFinite()) {
    throw Error(ErrorCode::argument, std::string(who) + ": matrix has non-finite entries");
  }
}

}  // namespace

Mat J_mat(int n) {
  if (n < 1) throw Error(ErrorCode::argument, "J_mat: n must be positive");
  Mat j = Mat::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = -Mat::Identity(n, n);
  j.bottomLeftCorner(n, n) = Mat::Identity(n, n);
  return j;
}

Mat matrix_exp(const Mat& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::dimension, "matrix_exp: square input required");
  const double nrm = a.norm();
  int s = 0;
  if (nrm > 0.5) s = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
  Mat x = a / std::pow(2.0, s);
  Mat term = Mat::Identity(a.rows(), a.cols());
  Mat sum = term;
  for (int k = 1; k <= 40; ++k) {
    term = (term * x) / static_cast<double>(k);
    sum += term;
    if (term.norm() <= 1e-20 * sum.norm()) break;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

SymplecticReport is_symplectic(const Mat& m, double tol) {
  require_even_square(m, "is_symplectic");
  const int n = static_cast<int>(m.rows()) / 2;
  const Mat j = J_mat(n);
  const double scale = std::max(1.0, m.squaredNorm());

  SymplecticReport rep;
  rep.tol = tol;
  rep.residual_form = (m.transpose() * j * m - j).norm() / scale;
  rep.residual_transpose = (m * j * m.transpose() - j).norm() / scale;

  const Mat a = m.topLeftCorner(n, n);
  const Mat b = m.topRightCorner(n, n);
  const Mat c = m.bottomLeftCorner(n, n);
  const Mat d = m.bottomRightCorner(n, n);

  Mat cand_inv(2 * n, 2 * n);
  cand_inv << d.transpose(), -b.transpose(), -c.transpose(), a.transpose();
  rep.residual_inverse = (cand_inv * m - Mat::Identity(2 * n, 2 * n)).norm() / scale;

  const Mat id = Mat::Identity(n, n);
  rep.residual_block_cols =
      std::max({(a.transpose() * d - c.transpose() * b - id).norm(),
                (a.transpose() * c - c.transpose() * a).norm(),
                (b.transpose() * d - d.transpose() * b).norm()}) / scale;
  rep.residual_block_rows =
      std::max({(a * d.transpose() - b * c.transpose() - id).norm(),
                (a * b.transpose() - b * a.transpose()).norm(),
                (c * d.transpose() - d * c.transpose()).norm()}) / scale;

  const bool ok_form = rep.residual_form <= tol;
  const bool ok_tr = rep.residual_transpose <= tol;
  const bool ok_inv = rep.residual_inverse <= tol;
  const bool ok_cols = rep.residual_block_cols <= tol;
  const bool ok_rows = rep.residual_block_rows <= tol;
  rep.symplectic = ok_form;
  rep.equivalences_agree =
      (ok_form == ok_tr) && (ok_form == ok_inv) && (ok_form == ok_cols) && (ok_form == ok_rows);
  return rep;
}

SymplecticMatrix::SymplecticMatrix(Mat h, double tol) {
  SymplecticReport rep = is_symplectic(h, tol);
  if (!rep.symplectic) {
    std::ostringstream os;
    os << "SymplecticMatrix: symplectic residual " << rep.residual_form << " exceeds " << tol;
    throw Error(ErrorCode::argument, os.str());
  }
  n_ = static_cast<int>(h.rows()) / 2;
  m_ = std::move(h);
}

SymplecticMatrix SymplecticMatrix::trusted(Mat h) {
  SymplecticMatrix s;
  s.n_ = static_cast<int>(h.rows()) / 2;
  s.m_ = std::move(h);
  return s;
}

SpAlgebraElement::SpAlgebraElement(Mat m, double tol) {
  require_even_square(m, "SpAlgebraElement");
  const int n = static_cast<int>(m.rows()) / 2;
  const Mat j = J_mat(n);
  const double res = (j * m + m.transpose() * j).norm() / std::max(1.0, m.squaredNorm());
  if (res > tol) {
    throw Error(ErrorCode::argument, "SpAlgebraElement: J a + a^T J != 0");
  }
  n_ = n;
  m_ = std::move(m);
}

SpAlgebraElement SpAlgebraElement::trusted(Mat m) {
  SpAlgebraElement e;
  e.n_ = static_cast<int>(m.rows()) / 2;
  e.m_ = std::move(m);
  return e;
}

SkewMatrix::SkewMatrix(const Mat& x) {
  require_even_square(x, "SkewMatrix");
  m_ = 0.5 * (x - x.transpose());
}

SymplecticMatrix sp_inverse(const SymplecticMatrix& h) {
  const int n = h.n();
  Mat inv(2 * n, 2 * n);
  inv << h.D().transpose(), -h.B().transpose(), -h.C().transpose(), h.A().transpose();
  return SymplecticMatrix::trusted(std::move(inv));
}

SpAlgebraElement sample_sp_element(int n, Rng& rng, double scale) {
  Mat alpha(n, n), beta(n, n), gamma(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) alpha(i, j) = rng.uniform(-scale, scale);
  // symmetric blocks: draw the upper triangle and mirror
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) beta(i, j) = beta(j, i) = rng.uniform(-scale, scale);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) gamma(i, j) = gamma(j, i) = rng.uniform(-scale, scale);
  Mat m(2 * n, 2 * n);
  m << alpha, beta, gamma, -alpha.transpose();
  return SpAlgebraElement::trusted(std::move(m));
}

SymplecticMatrix rotation_matrix(int n, double t) {
  const Mat id = Mat::Identity(n, n);
  Mat m(2 * n, 2 * n);
  m << std::cos(t) * id, -std::sin(t) * id, std::sin(t) * id, std::cos(t) * id;
  return SymplecticMatrix::trusted(std::move(m));
}

namespace {

SymplecticMatrix witness_matrix(int n, int k) {
  if (k < 0 || k > n) throw Error(ErrorCode::argument, "witness: k must satisfy 0 <= k <= n");
  // (x', x'', xi', xi'') -> (x', -xi'', xi', x'') with x' of size k.
  Mat m = Mat::Zero(2 * n, 2 * n);
  for (int i = 0; i < k; ++i) {
    m(i, i) = 1.0;          // A upper-left I_k
    m(n + i, n + i) = 1.0;  // D upper-left I_k
  }
  for (int i = k; i < n; ++i) {
    m(i, n + i) = -1.0;  // B lower-right -I_{n-k}
    m(n + i, i) = 1.0;   // C lower-right I_{n-k}
  }
  return SymplecticMatrix::trusted(std::move(m));
}

}  // namespace

SymplecticMatrix sample_symplectic(int n, uint64_t seed, const SampleSpec& spec) {
  if (n < 1) throw Error(ErrorCode::argument, "sample_symplectic: n must be positive");
  switch (spec.kind) {
    case SampleSpec::Kind::generic: {
      Rng rng(seed);
      const Mat e1 = matrix_exp(sample_sp_element(n, rng).mat());
      const Mat e2 = matrix_exp(sample_sp_element(n, rng).mat());
      return SymplecticMatrix::trusted(e1 * e2);
    }
    case SampleSpec::Kind::singular_b: {
      const int r = spec.param;
      if (r < 0 || r > n) throw Error(ErrorCode::argument, "sample_symplectic: rank r out of range");
      Rng rng(seed);
      Mat m = Mat::Zero(2 * n, 2 * n);
      // 2x2 block j occupies coordinates (x_j, xi_j); first r blocks are
      // rotations with |sin| bounded away from 0 so rank(B) = r exactly.
      for (int j = 0; j < n; ++j) {
        double a, b, c, d;
        if (j < r) {
          const double sgn = rng.uniform() < 0.5 ? -1.0 : 1.0;
          const double t = sgn * rng.uniform(0.2, 1.4);
          a = std::cos(t); b = -std::sin(t); c = std::sin(t); d = std::cos(t);
        } else {
          a = 1.0; b = 0.0; c = rng.uniform(-1.0, 1.0); d = 1.0;
        }
        m(j, j) = a;
        m(j, n + j) = b;
        m(n + j, j) = c;
        m(n + j, n + j) = d;
      }
      return SymplecticMatrix::trusted(std::move(m));
    }
    case SampleSpec::Kind::witness:
      return witness_matrix(n, spec.param);
  }
  throw Error(ErrorCode::internal, "sample_symplectic: unreachable");
}

cplx omega_complex(const ComplexGraphPoint& p, const ComplexGraphPoint& q) {
  if (p.z.size() != q.z.size() || p.z.size() != p.zeta.size() || q.z.size() != q.zeta.size()) {
    throw Error(ErrorCode::dimension, "omega_complex: mismatched dimensions");
  }
  cplx s = 0.0;
  for (Eigen::Index j = 0; j < p.z.size(); ++j) {
    s += p.zeta(j) * q.z(j) - p.z(j) * q.zeta(j);
  }
  return s;
}

ComplexGraphPoint graph_embed(const SymplecticMatrix& h, const Vec& x, const Vec& xi) {
  const int n = h.n();
  if (x.size() != n || xi.size() != n) {
    throw Error(ErrorCode::dimension, "graph_embed: x, xi must have length n");
  }
  const cplx i(0.0, 1.0);
  ComplexGraphPoint p;
  p.z = x.cast<cplx>() + i * (h.A() * x + h.B() * xi).cast<cplx>();
  p.zeta = xi.cast<cplx>() + i * (h.C() * x + h.D() * xi).cast<cplx>();
  return p;
}

double re_omega(const Vec& u, const Vec& v) {
  if (u.size() != v.size() || u.size() % 4 != 0) {
    throw Error(ErrorCode::dimension, "re_omega: vectors must be 4n-dimensional");
  }
  const int n = static_cast<int>(u.size()) / 4;
  const auto u1 = u.segment(0, n), u2 = u.segment(n, n), u3 = u.segment(2 * n, n),
             u4 = u.segment(3 * n, n);
  const auto v1 = v.segment(0, n), v2 = v.segment(n, n), v3 = v.segment(2 * n, n),
             v4 = v.segment(3 * n, n);
  return u2.dot(v1) - u1.dot(v2) - u4.dot(v3) + u3.dot(v4);
}

double rank_threshold(const Eigen::JacobiSVD<Mat>& svd, double rel, double absfb) {
  const double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  return (smax < 1e-4) ? absfb : rel * smax;
}

int svd_rank(const Mat& m, double rel, double absfb) {
  Eigen::JacobiSVD<Mat> svd(m);
  const double th = rank_threshold(svd, rel, absfb);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > th) ++rank;
  }
  return rank;
}

Mat nullspace_basis(const Mat& m, double rel, double absfb) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const double th = rank_threshold(svd, rel, absfb);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > th) ++rank;
  }
  const Eigen::Index cols = m.cols();
  return svd.matrixV().rightCols(cols - rank);
}

double max_principal_angle(const Mat& u, const Mat& v) {
  if (u.cols() != v.cols()) {
    throw Error(ErrorCode::dimension, "max_principal_angle: subspace dimensions differ");
  }
  if (u.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(u.transpose() * v);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    const double c = std::min(1.0, std::max(-1.0, svd.singularValues()(i)));
    worst = std::max(worst, std::acos(c));
  }
  return worst;
}

std::vector<Mat> sp_generators(int n) {
  std::vector<Mat> gens;
  gens.reserve(n * (2 * n + 1));
  auto blank = [n]() { return Mat::Zero(2 * n, 2 * n); };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Mat g = blank();
      g(i, j) = 1.0;
      g(n + j, n + i) = -1.0;  // delta = -alpha^T
      gens.push_back(std::move(g));
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Mat g = blank();
      g(i, n + j) = 1.0;
      g(j, n + i) = 1.0;
      gens.push_back(std::move(g));
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Mat g = blank();
      g(n + i, j) = 1.0;
      g(n + j, i) = 1.0;
      gens.push_back(std::move(g));
    }
  }
  return gens;
}

std::vector<Mat> sp_orthonormal_basis(int n) {
  std::vector<Mat> basis = sp_generators(n);
  for (Mat& g : basis) g /= g.norm();  // generators are mutually orthogonal already
  return basis;
}

}  // namespace symgf
