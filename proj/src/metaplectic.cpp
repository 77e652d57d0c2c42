#include "symgf/metaplectic.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <sstream>

namespace symgf {

namespace {

constexpr double kFactorSigmaMin = 1e-4;  // admissibility of a factor's B block

CMat symc(const CMat& m) { return 0.5 * (m + m.transpose()); }

double min_im_eig(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(Mat(m.imag()));
  return es.eigenvalues().minCoeff();
}

}  // namespace

void GaussianState::validate() const {
  if (n < 1 || M.rows() != n || M.cols() != n) {
    throw Error(ErrorCode::dimension, "GaussianState: M must be n x n with n >= 1");
  }
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw Error(ErrorCode::argument, "GaussianState: h must be positive");
  }
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
    throw Error(ErrorCode::argument, "GaussianState: amplitude must be finite");
  }
  if ((M - M.transpose()).norm() > 1e-12 * std::max(1.0, M.norm())) {
    throw Error(ErrorCode::argument, "GaussianState: M must be symmetric");
  }
  if (min_im_eig(M) <= 0.0) {
    throw Error(ErrorCode::argument, "GaussianState: Im M must be positive definite");
  }
}

GaussianState GaussianState::standard(int n, double h) {
  GaussianState u;
  u.n = n;
  u.M = cplx(0.0, 1.0) * CMat::Identity(n, n);
  u.c = 1.0;
  u.h = h;
  return u;
}

double state_norm(const GaussianState& u) {
  // |u|^2 = |c|^2 (pi h)^{n/2} det(Im M)^{-1/2}
  const double det_im = Mat(u.M.imag()).determinant();
  return std::abs(u.c) * std::pow(M_PI * u.h, u.n / 4.0) * std::pow(det_im, -0.25);
}

cplx det_isqrt_tracked(const CMat& omega) {
  const int n = static_cast<int>(omega.rows());
  const CMat id = CMat::Identity(n, n);
  const cplx i(0.0, 1.0);
  int steps = 8;
  while (steps <= 4096) {
    bool ok = true;
    double phase = 0.0;
    cplx prev = 1.0;  // det(-i * iI) = det(I)
    for (int j = 1; j <= steps; ++j) {
      const double s = static_cast<double>(j) / steps;
      const CMat om = (1.0 - s) * (i * id) + s * omega;
      const cplx det = CMat(-i * om).determinant();
      const cplx ratio = det / prev;
      if (std::abs(std::arg(ratio)) > M_PI / 2.0 || !std::isfinite(std::abs(ratio))) {
        ok = false;
        break;
      }
      phase += std::arg(ratio);
      prev = det;
    }
    if (ok) {
      return std::pow(std::abs(prev), -0.5) * std::exp(cplx(0.0, -0.5 * phase));
    }
    steps *= 2;
  }
  throw Error(ErrorCode::internal, "det_isqrt_tracked: branch tracking did not stabilize");
}

cplx state_inner(const GaussianState& u, const GaussianState& v) {
  if (u.n != v.n || u.h != v.h) {
    throw Error(ErrorCode::dimension, "state_inner: states must share n and h");
  }
  const CMat omega = u.M - v.M.conjugate();  // Im = Im M_u + Im M_v > 0
  return u.c * std::conj(v.c) * std::pow(2.0 * M_PI * u.h, u.n / 2.0) * det_isqrt_tracked(omega);
}

PhaseRankResult phase_nondegeneracy_check(const GeneratingFunction& gf) {
  if (gf.theta_dim == 0) {
    throw Error(ErrorCode::precondition,
                "phase_nondegeneracy_check: generating function has no theta parameters");
  }
  const int n = gf.n, k = gf.k;
  const int m2 = 2 * n - k;
  PhaseRankResult res;
  res.expected = 2 * n;

  const Mat cols = gf.Q.rightCols(gf.theta_dim);  // (4n) x (2n)
  Eigen::JacobiSVD<Mat> svd(cols);
  res.sigma_max = svd.singularValues()(0);
  res.sigma_min = svd.singularValues()(svd.singularValues().size() - 1);
  res.rank = svd_rank(cols);

  // displayed structure: theta' columns carry (-b_j; D b_j) above zeros, the
  // theta'' block is 2I, and theta' is quadratic-free elsewhere
  double dev = (gf.Q.block(2 * n + k, 2 * n + k, m2, m2) - 2.0 * Mat::Identity(m2, m2)).norm();
  dev = std::max(dev, gf.Q.block(2 * n, 2 * n, k, k).norm());
  dev = std::max(dev, gf.Q.block(2 * n, 2 * n + k, k, m2).norm());
  for (int j = 0; j < k; ++j) {
    dev = std::max(dev, (gf.Q.block(0, 2 * n + j, n, 1) + gf.basis.b.col(j)).norm());
    if (gf.basis.rights.size() > 0) {  // D b_j is recorded as the dual vector's Im zeta part
      dev = std::max(dev,
                     (gf.Q.block(n, 2 * n + j, n, 1) - gf.basis.rights.col(j).segment(3 * n, n)).norm());
    }
  }
  res.structure_ok = dev < 1e-10 * std::max(1.0, gf.Q.norm());
  res.pass = (res.rank == res.expected) && (res.sigma_min > kRankRelTol * res.sigma_max) &&
             res.structure_ok;
  return res;
}

namespace {

struct ClosedForm {
  CMat Mp;
  cplx amp_factor;  // (2 pi)^{n/2} det(-i Omega)^{-1/2}, before normalization
};

ClosedForm propagate(const SymplecticMatrix& h, const CMat& m) {
  const int n = h.n();
  const CMat a = h.A().cast<cplx>();
  const CMat b = h.B().cast<cplx>();
  const CMat c = h.C().cast<cplx>();
  const CMat d = h.D().cast<cplx>();

  const CMat apbm = a + b * m;
  Eigen::JacobiSVD<CMat> svd(apbm);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(n - 1);
  if (smax == 0.0 || smin < 1e-12 * smax) {
    throw Error(ErrorCode::caustic, "quantize_gaussian: A + BM is singular");
  }

  const CMat omega = h.B().partialPivLu().solve(h.A()).cast<cplx>() + m;
  ClosedForm out;
  out.Mp = symc((c + d * m) * apbm.inverse());
  out.amp_factor = std::pow(2.0 * M_PI, n / 2.0) * det_isqrt_tracked(omega);
  return out;
}

double fitted_normalization(const SymplecticMatrix& h, double hbar) {
  // a is fixed so the operator preserves the norm of the standard Gaussian,
  // then reused for every state.
  const GaussianState ref = GaussianState::standard(h.n(), hbar);
  const ClosedForm cf = propagate(h, ref.M);
  GaussianState vref;
  vref.n = h.n();
  vref.M = cf.Mp;
  vref.c = ref.c * cf.amp_factor;
  vref.h = hbar;
  return state_norm(ref) / state_norm(vref);
}

}  // namespace

GaussianState quantize_gaussian(const SymplecticMatrix& h, const GaussianState& u) {
  u.validate();
  if (h.n() != u.n) throw Error(ErrorCode::dimension, "quantize_gaussian: size mismatch");
  {
    Eigen::JacobiSVD<Mat> svd(h.B());
    const double smax = svd.singularValues()(0);
    if (smax == 0.0 || svd.singularValues()(h.n() - 1) <= kRankRelTol * smax) {
      throw Error(ErrorCode::singular, "quantize_gaussian: B must be invertible");
    }
  }
  const double a = fitted_normalization(h, u.h);
  const ClosedForm cf = propagate(h, u.M);
  GaussianState v;
  v.n = u.n;
  v.M = cf.Mp;
  v.c = a * u.c * cf.amp_factor;
  v.h = u.h;
  v.validate();
  return v;
}

GaussianState quantize_general(const SymplecticMatrix& h, const GaussianState& u,
                               std::optional<double> t_shift) {
  u.validate();
  if (h.n() != u.n) throw Error(ErrorCode::dimension, "quantize_general: size mismatch");

  const auto b_sigma_min = [](const Mat& b) {
    Eigen::JacobiSVD<Mat> svd(b);
    return svd.singularValues()(svd.singularValues().size() - 1);
  };

  {
    Eigen::JacobiSVD<Mat> svd(h.B());
    const double smax = svd.singularValues()(0);
    if (smax > 0.0 && svd.singularValues()(h.n() - 1) > kRankRelTol * smax) {
      return quantize_gaussian(h, u);
    }
  }

  const auto apply_factored = [&](double t) {
    const SymplecticMatrix rot = rotation_matrix(h.n(), t);
    const SymplecticMatrix rest = SymplecticMatrix::trusted(h.mat() * rotation_matrix(h.n(), -t).mat());
    return quantize_gaussian(rest, quantize_gaussian(rot, u));
  };

  if (t_shift) {
    const double t = *t_shift;
    const Mat b1 = (h.mat() * rotation_matrix(h.n(), -t).mat()).topRightCorner(h.n(), h.n());
    if (std::abs(std::sin(t)) <= kFactorSigmaMin || b_sigma_min(b1) <= kFactorSigmaMin) {
      throw Error(ErrorCode::config, "quantize_general: requested t_shift is not admissible");
    }
    return apply_factored(t);
  }

  for (int step = 1; step <= 60; ++step) {
    const double t = 0.1 * step;
    if (std::abs(std::sin(t)) <= kFactorSigmaMin) continue;
    const Mat b1 = (h.mat() * rotation_matrix(h.n(), -t).mat()).topRightCorner(h.n(), h.n());
    if (b_sigma_min(b1) <= kFactorSigmaMin) continue;
    try {
      return apply_factored(t);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::caustic) throw;
      // caustic in this chart: move on to the next t
    }
  }
  throw Error(ErrorCode::config, "quantize_general: no admissible rotation shift found");
}

GridField gaussian_to_grid(const GaussianState& u, double L, int N) {
  if (u.n != 1) throw Error(ErrorCode::dimension, "gaussian_to_grid: n = 1 only");
  u.validate();
  GridField f;
  f.L = L;
  f.N = N;
  f.samples.resize(N);
  const cplx i(0.0, 1.0);
  for (int j = 0; j < N; ++j) {
    const double x = -L + 2.0 * L * j / (N - 1);
    f.samples(j) = u.c * std::exp(i * u.M(0, 0) * x * x / (2.0 * u.h));
  }
  return f;
}

namespace {

double grid_dx(const GridField& f) { return 2.0 * f.L / (f.N - 1); }

}  // namespace

double grid_norm(const GridField& f) {
  double acc = 0.0;
  for (int j = 0; j < f.N; ++j) {
    const double w = (j == 0 || j == f.N - 1) ? 0.5 : 1.0;
    acc += w * std::norm(f.samples(j));
  }
  return std::sqrt(acc * grid_dx(f));
}

double grid_rel_l2_diff(const GridField& a, const GridField& b) {
  if (a.N != b.N || a.L != b.L) throw Error(ErrorCode::dimension, "grid_rel_l2_diff: grids differ");
  GridField d = a;
  d.samples = a.samples - b.samples;
  const double nb = grid_norm(b);
  return grid_norm(d) / (nb > 0.0 ? nb : 1.0);
}

GridField grid_quantize(const SymplecticMatrix& h, const GridField& f, double hbar) {
  if (h.n() != 1) throw Error(ErrorCode::dimension, "grid_quantize: n = 1 only");
  if (f.N < 64) throw Error(ErrorCode::argument, "grid_quantize: need at least 64 samples");
  const double fmax = f.samples.cwiseAbs().maxCoeff();
  if (std::abs(f.samples(0)) > 1e-12 * fmax || std::abs(f.samples(f.N - 1)) > 1e-12 * fmax) {
    throw Error(ErrorCode::precondition, "grid_quantize: field does not decay at the grid ends");
  }

  const GeneratingFunction gf = build_genfun_invertible(h);
  const double qpp = gf.Q(0, 0), qpq = gf.Q(0, 1), qqq = gf.Q(1, 1);
  const double a = fitted_normalization(h, hbar);
  const double dx = grid_dx(f);
  const cplx i(0.0, 1.0);

  GridField v;
  v.L = f.L;
  v.N = f.N;
  v.samples = CVec::Zero(f.N);
  for (int iq = 0; iq < f.N; ++iq) {
    const double q = -f.L + 2.0 * f.L * iq / (f.N - 1);
    cplx acc = 0.0;
    for (int ip = 0; ip < f.N; ++ip) {
      const double p = -f.L + 2.0 * f.L * ip / (f.N - 1);
      const double w = (ip == 0 || ip == f.N - 1) ? 0.5 : 1.0;
      const double phi = 0.5 * qpp * p * p + qpq * p * q + 0.5 * qqq * q * q;
      acc += w * std::exp(i * phi / hbar) * f.samples(ip);
    }
    v.samples(iq) = a * std::pow(hbar, -0.5) * acc * dx;
  }
  return v;
}

ComposeReport composition_check(const SymplecticMatrix& h1, const SymplecticMatrix& h2,
                                const GaussianState& u, uint64_t seed) {
  if (h1.n() != h2.n() || h1.n() != u.n) {
    throw Error(ErrorCode::dimension, "composition_check: size mismatch");
  }
  const GaussianState v1 = quantize_general(h1, quantize_general(h2, u));
  const SymplecticMatrix prod = SymplecticMatrix::trusted(h1.mat() * h2.mat());
  const GaussianState v2 = quantize_general(prod, u);

  ComposeReport rep;
  rep.seed = seed;
  rep.norm_v1 = state_norm(v1);
  rep.norm_v2 = state_norm(v2);
  const cplx ip = state_inner(v1, v2);
  rep.kappa = (std::abs(ip) > 0.0) ? ip / std::abs(ip) : cplx(1.0, 0.0);
  const double cross = 2.0 * std::abs(ip);
  const double diff2 = std::max(0.0, rep.norm_v1 * rep.norm_v1 + rep.norm_v2 * rep.norm_v2 - cross);
  rep.discrepancy = std::sqrt(diff2) / rep.norm_v2;
  return rep;
}

}  // namespace symgf
