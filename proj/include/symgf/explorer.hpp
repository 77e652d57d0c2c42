#pragma once

#include "symgf/core.hpp"
#include "symgf/xmap.hpp"

#include <map>
#include <string>
#include <vector>

namespace symgf {

/// Descent problem: find H in Sp(2n,R) minimizing |X(H) - S|_F via the chart
/// H = H0 exp(A), A in sp(2n,R).
struct SearchProblem {
  int n = 1;
  Mat S;        // 2n x 2n skew target
  Mat H0;       // base point (defaults to the identity)
  int budget = 500;
  int restarts = 8;
  uint64_t seed = 1;
};

struct RestartSummary {
  int index = 0;
  std::string base;  // tag of the base point used for this restart
  double start_residual = 0.0;
  double final_residual = 0.0;
  double grad_norm = 0.0;
  int iters = 0;
};

struct SearchReport {
  double best_residual = 0.0;
  Mat best_H;
  int iters_total = 0;
  double best_grad_norm = 0.0;
  std::vector<RestartSummary> restarts;
};

/// f(A) = 1/2 |X(H0 exp(A)) - S|_F^2.
double explore_objective(const SpAlgebraElement& a, const SymplecticMatrix& h0, const Mat& s);

/// Analytic gradient of f in the trace inner product, projected onto sp(2n,R);
/// the exponential differential is handled by squaring with an adjoint series
/// at the rescaled base point.
SpAlgebraElement explore_gradient(const SpAlgebraElement& a, const SymplecticMatrix& h0,
                                  const Mat& s);

/// Limited-memory secant descent with Armijo backtracking, best of restarts
/// over varied base points.  Deterministic given the seed.
SearchReport solve(const SearchProblem& problem);

struct RankScanResult {
  int n = 0;
  int samples = 0;
  uint64_t seed = 0;
  std::map<int, int> histogram;  // rank of X(H) -> count
};

RankScanResult rank_scan(int n, int samples, uint64_t seed);

struct SweepTarget {
  int index = 0;
  Mat S;
  double best_residual = 0.0;
  Mat best_H;
  int iters = 0;
};

struct SweepResult {
  int n = 0;
  uint64_t seed = 0;
  int restarts = 0;
  int budget = 0;
  std::vector<SweepTarget> targets;
  double min_residual = 0.0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  int below_1e6 = 0;  // count of targets with residual < 1e-6
};

/// Residual evidence over random unit-norm skew targets (or, for n = 1, the
/// explicit family s*J when s_values is non-empty).  No feasibility claim is
/// attached to the residuals.
SweepResult image_evidence_sweep(int n, int num_targets, uint64_t seed, int restarts = 8,
                                 int budget = 500, const std::vector<double>& s_values = {});

}  // namespace symgf
