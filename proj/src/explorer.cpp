#include "symgf/explorer.hpp"

#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <sstream>

namespace symgf {

namespace {

Mat skew_part(const Mat& m) { return 0.5 * (m - m.transpose()); }

/// Orthogonal projection onto sp(2n,R): J^-1 sym(J G).
Mat project_sp(const Mat& g) {
  const int n = static_cast<int>(g.rows()) / 2;
  const Mat j = J_mat(n);
  const Mat jg = j * g;
  return -j * (0.5 * (jg + jg.transpose()));
}

struct ExpChain {
  int s = 0;                 // number of squarings
  std::vector<Mat> powers;   // X_0 = exp(A/2^s), X_{j+1} = X_j^2; size s+1
  const Mat& full() const { return powers.back(); }
};

ExpChain exp_chain(const Mat& a) {
  ExpChain ch;
  const double nrm = a.norm();
  ch.s = (nrm > 0.5) ? static_cast<int>(std::ceil(std::log2(nrm / 0.5))) : 0;
  Mat x = a / std::pow(2.0, ch.s);
  Mat term = Mat::Identity(a.rows(), a.cols());
  Mat sum = term;
  for (int k = 1; k <= 40; ++k) {
    term = (term * x) / static_cast<double>(k);
    sum += term;
    if (term.norm() <= 1e-20 * sum.norm()) break;
  }
  ch.powers.push_back(sum);
  for (int j = 0; j < ch.s; ++j) ch.powers.push_back(ch.powers.back() * ch.powers.back());
  return ch;
}

/// Adjoint of the exp differential at the rescaled base point:
/// sum_m (-1)^m ad_{A^T}^m (W) / (m+1)!, convergent at |A| <= 0.5.
Mat dexp_adjoint_series(const Mat& a_t, const Mat& w) {
  Mat term = w;
  Mat sum = w;
  for (int m = 1; m <= 24; ++m) {
    term = -(a_t * term - term * a_t) / static_cast<double>(m + 1);
    sum += term;
  }
  return sum;
}

double objective_of(const Mat& h0m, const Mat& s, const Mat& expa, const Mat& j) {
  const Mat h = h0m * expa;
  const Mat r = skew_part(j * h + h.transpose() * j) - s;
  return 0.5 * r.squaredNorm();
}

struct FG {
  double f = 0.0;
  Mat grad;  // euclidean gradient in M(2n,R), before sp projection
};

FG objective_and_gradient(const Mat& h0m, const Mat& s, const Mat& a, const Mat& j) {
  const ExpChain ch = exp_chain(a);
  const Mat h = h0m * ch.full();
  const Mat r = skew_part(j * h + h.transpose() * j) - s;

  FG out;
  out.f = 0.5 * r.squaredNorm();
  // d f = <-2 J R, dH>; backpropagate through the squarings, then apply the
  // adjoint dexp series at the rescaled point.
  Mat ebar = h0m.transpose() * (-2.0 * j * r);
  for (int jj = ch.s - 1; jj >= 0; --jj) {
    const Mat& x = ch.powers[jj];
    ebar = x.transpose() * ebar + ebar * x.transpose();
  }
  const Mat a0 = a / std::pow(2.0, ch.s);
  const Mat w = ch.powers[0].transpose() * ebar;
  out.grad = dexp_adjoint_series(a0.transpose(), w) / std::pow(2.0, ch.s);
  return out;
}

}  // namespace

double explore_objective(const SpAlgebraElement& a, const SymplecticMatrix& h0, const Mat& s) {
  if (a.n() != h0.n() || s.rows() != 2 * h0.n() || s.cols() != 2 * h0.n()) {
    throw Error(ErrorCode::dimension, "explore_objective: size mismatch");
  }
  const Mat j = J_mat(h0.n());
  return objective_of(h0.mat(), s, matrix_exp(a.mat()), j);
}

SpAlgebraElement explore_gradient(const SpAlgebraElement& a, const SymplecticMatrix& h0,
                                  const Mat& s) {
  if (a.n() != h0.n() || s.rows() != 2 * h0.n() || s.cols() != 2 * h0.n()) {
    throw Error(ErrorCode::dimension, "explore_gradient: size mismatch");
  }
  const Mat j = J_mat(h0.n());
  const FG fg = objective_and_gradient(h0.mat(), s, a.mat(), j);
  return SpAlgebraElement::trusted(project_sp(fg.grad));
}

namespace {

struct LbfgsResult {
  double f = 0.0;
  double grad_norm = 0.0;
  Vec x;
  int iters = 0;
};

/// Two-loop L-BFGS with Armijo backtracking (c = 1e-4, shrink 0.5, step 1).
LbfgsResult lbfgs_minimize(const std::function<double(const Vec&)>& fval,
                           const std::function<std::pair<double, Vec>(const Vec&)>& fgrad,
                           Vec x0, int budget) {
  constexpr int kMemory = 8;
  constexpr double kArmijo = 1e-4;
  std::deque<std::pair<Vec, Vec>> history;  // (s, y)

  LbfgsResult res;
  auto [f, g] = fgrad(x0);
  Vec x = std::move(x0);
  res.f = f;
  res.x = x;
  res.grad_norm = g.norm();

  for (int iter = 0; iter < budget; ++iter) {
    if (std::sqrt(2.0 * f) < 1e-9 || g.norm() < 1e-12) break;

    // two-loop recursion
    Vec q = g;
    std::vector<double> alpha(history.size());
    for (int i = static_cast<int>(history.size()) - 1; i >= 0; --i) {
      const auto& [sv, yv] = history[i];
      alpha[i] = sv.dot(q) / yv.dot(sv);
      q -= alpha[i] * yv;
    }
    if (!history.empty()) {
      const auto& [sv, yv] = history.back();
      q *= sv.dot(yv) / yv.dot(yv);
    }
    for (size_t i = 0; i < history.size(); ++i) {
      const auto& [sv, yv] = history[i];
      const double beta = yv.dot(q) / yv.dot(sv);
      q += (alpha[i] - beta) * sv;
    }
    Vec d = -q;
    double slope = g.dot(d);
    if (slope >= 0.0) {  // not a descent direction: fall back to steepest
      d = -g;
      slope = -g.squaredNorm();
    }

    double step = 1.0;
    double fn = f;
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      fn = fval(x + step * d);
      if (fn <= f + kArmijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    res.iters = iter + 1;
    if (!accepted) break;

    const Vec xn = x + step * d;
    auto [f2, g2] = fgrad(xn);
    const Vec sv = xn - x;
    const Vec yv = g2 - g;
    if (sv.dot(yv) > 1e-12 * sv.norm() * yv.norm()) {
      history.emplace_back(sv, yv);
      if (static_cast<int>(history.size()) > kMemory) history.pop_front();
    }
    x = xn;
    f = f2;
    g = g2;
    if (f < res.f) {
      res.f = f;
      res.x = x;
    }
  }
  res.grad_norm = g.norm();
  if (f < res.f) {
    res.f = f;
    res.x = x;
  }
  return res;
}

SymplecticMatrix restart_base(const SearchProblem& p, int r, std::string* tag) {
  const int n = p.n;
  if (r == 0) {
    *tag = "H0";
    return SymplecticMatrix::trusted(p.H0);
  }
  if (r == 1) {
    *tag = "I";
    return SymplecticMatrix::trusted(Mat::Identity(2 * n, 2 * n));
  }
  if (r == 2) {
    *tag = "J";
    return SymplecticMatrix::trusted(J_mat(n));
  }
  if (r % 2 == 1) {
    const int k = ((r - 3) / 2) % (n + 1);
    *tag = "witness_k" + std::to_string(k);
    return witness_Hk(n, k);
  }
  const uint64_t s = p.seed ^ (0x9e3779b97f4a7c15ull * static_cast<uint64_t>(r + 1));
  *tag = "generic";
  return sample_symplectic(n, s, SampleSpec::generic());
}

}  // namespace

SearchReport solve(const SearchProblem& problem) {
  const int n = problem.n;
  if (n < 1) throw Error(ErrorCode::argument, "solve: n must be positive");
  if (problem.S.rows() != 2 * n || problem.S.cols() != 2 * n) {
    throw Error(ErrorCode::dimension, "solve: target S must be 2n x 2n");
  }
  if ((problem.S + problem.S.transpose()).norm() > 1e-10 * std::max(1.0, problem.S.norm())) {
    throw Error(ErrorCode::argument, "solve: target S must be skew-symmetric");
  }
  Mat h0 = problem.H0;
  if (h0.size() == 0) h0 = Mat::Identity(2 * n, 2 * n);
  if (!is_symplectic(h0).symplectic) {
    throw Error(ErrorCode::argument, "solve: H0 must be symplectic");
  }

  const Mat j = J_mat(n);
  const std::vector<Mat> gens = sp_generators(n);
  const std::vector<Mat> basis = sp_orthonormal_basis(n);
  const int dim = static_cast<int>(basis.size());

  const auto assemble = [&](const Vec& x) {
    Mat a = Mat::Zero(2 * n, 2 * n);
    for (int i = 0; i < dim; ++i) a += x(i) * basis[i];
    return a;
  };

  Rng rng(problem.seed);
  SearchReport report;
  report.best_residual = std::numeric_limits<double>::infinity();

  SearchProblem p = problem;
  p.H0 = h0;
  for (int r = 0; r < problem.restarts; ++r) {
    std::string tag;
    const SymplecticMatrix base = restart_base(p, r, &tag);
    const Mat& h0m = base.mat();

    // initial point: coefficients over the canonical generators, sd 0.5
    Mat a0m = Mat::Zero(2 * n, 2 * n);
    for (const Mat& g : gens) a0m += 0.5 * rng.gaussian() * g;
    Vec x0(dim);
    for (int i = 0; i < dim; ++i) x0(i) = basis[i].cwiseProduct(a0m).sum();

    const auto fval = [&](const Vec& x) {
      return objective_of(h0m, problem.S, matrix_exp(assemble(x)), j);
    };
    const auto fgrad = [&](const Vec& x) {
      const FG fg = objective_and_gradient(h0m, problem.S, assemble(x), j);
      Vec g(dim);
      for (int i = 0; i < dim; ++i) g(i) = basis[i].cwiseProduct(fg.grad).sum();
      return std::make_pair(fg.f, std::move(g));
    };

    RestartSummary rs;
    rs.index = r;
    rs.base = tag;
    rs.start_residual = std::sqrt(2.0 * fval(x0));

    const LbfgsResult lb = lbfgs_minimize(fval, fgrad, x0, problem.budget);
    rs.final_residual = std::sqrt(2.0 * lb.f);
    rs.grad_norm = lb.grad_norm;
    rs.iters = lb.iters;
    report.iters_total += lb.iters;
    report.restarts.push_back(rs);

    if (rs.final_residual < report.best_residual) {
      report.best_residual = rs.final_residual;
      report.best_H = h0m * matrix_exp(assemble(lb.x));
      report.best_grad_norm = lb.grad_norm;
    }
    if (report.best_residual < 1e-9) break;  // solved; remaining restarts add nothing
  }
  return report;
}

RankScanResult rank_scan(int n, int samples, uint64_t seed) {
  if (samples < 1) throw Error(ErrorCode::argument, "rank_scan: samples must be >= 1");
  RankScanResult res;
  res.n = n;
  res.samples = samples;
  res.seed = seed;
  for (int i = 0; i < samples; ++i) {
    SymplecticMatrix h = [&] {
      switch (i % 3) {
        case 0:
          return sample_symplectic(n, 0, SampleSpec::witness((i / 3) % (n + 1)));
        case 1:
          return sample_symplectic(n, seed + i, SampleSpec::singular_b((i / 3) % (n + 1)));
        default:
          return sample_symplectic(n, seed + i, SampleSpec::generic());
      }
    }();
    const int rank = svd_rank(xmap(h).mat());
    res.histogram[rank] += 1;
  }
  return res;
}

SweepResult image_evidence_sweep(int n, int num_targets, uint64_t seed, int restarts, int budget,
                                 const std::vector<double>& s_values) {
  if (!s_values.empty() && n != 1) {
    throw Error(ErrorCode::argument, "image_evidence_sweep: explicit s-grid requires n = 1");
  }
  SweepResult res;
  res.n = n;
  res.seed = seed;
  res.restarts = restarts;
  res.budget = budget;

  const int count = s_values.empty() ? num_targets : static_cast<int>(s_values.size());
  Rng rng(seed);
  double sum = 0.0;
  for (int i = 0; i < count; ++i) {
    Mat s;
    if (!s_values.empty()) {
      s = s_values[i] * J_mat(1);
    } else {
      s = Mat::Zero(2 * n, 2 * n);
      for (int a = 0; a < 2 * n; ++a)
        for (int b = a + 1; b < 2 * n; ++b) {
          const double v = rng.gaussian();
          s(a, b) = v;
          s(b, a) = -v;
        }
      const double nrm = s.norm();
      if (nrm > 0.0) s /= nrm;
    }
    SearchProblem prob;
    prob.n = n;
    prob.S = s;
    prob.H0 = Mat::Identity(2 * n, 2 * n);
    prob.budget = budget;
    prob.restarts = restarts;
    prob.seed = seed ^ (0x9e3779b97f4a7c15ull * static_cast<uint64_t>(i + 1));
    const SearchReport rep = solve(prob);

    SweepTarget t;
    t.index = i;
    t.S = s;
    t.best_residual = rep.best_residual;
    t.best_H = rep.best_H;
    t.iters = rep.iters_total;
    res.targets.push_back(std::move(t));
    sum += rep.best_residual;
    if (rep.best_residual < 1e-6) res.below_1e6 += 1;
  }
  res.min_residual = res.targets.empty() ? 0.0 : res.targets.front().best_residual;
  res.max_residual = res.min_residual;
  for (const auto& t : res.targets) {
    res.min_residual = std::min(res.min_residual, t.best_residual);
    res.max_residual = std::max(res.max_residual, t.best_residual);
  }
  res.mean_residual = res.targets.empty() ? 0.0 : sum / res.targets.size();
  return res;
}

}  // namespace symgf
