#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symgf/explorer.hpp"
#include "symgf/json_io.hpp"

using namespace symgf;

namespace {

SpAlgebraElement random_sp(int n, Rng& rng, double sd = 0.5) {
  const auto basis = sp_orthonormal_basis(n);
  Mat a = Mat::Zero(2 * n, 2 * n);
  for (const Mat& b : basis) a += sd * rng.gaussian() * b;
  return SpAlgebraElement::trusted(a);
}

}  // namespace

TEST_CASE("objective reference values") {
  const int n = 2;
  const SymplecticMatrix h0 = sample_symplectic(n, 3, SampleSpec::generic());
  const Mat s = xmap(h0).mat();
  const SpAlgebraElement zero = SpAlgebraElement::trusted(Mat::Zero(2 * n, 2 * n));
  CHECK(explore_objective(zero, h0, s) < 1e-20);

  // at H0 = I with S = 0 the value is |2J|^2 / 2 = 4n
  for (int m : {1, 2, 3}) {
    const SymplecticMatrix id(Mat::Identity(2 * m, 2 * m));
    const SpAlgebraElement z2 = SpAlgebraElement::trusted(Mat::Zero(2 * m, 2 * m));
    CHECK(explore_objective(z2, id, Mat::Zero(2 * m, 2 * m)) == doctest::Approx(4.0 * m));
  }
}

TEST_CASE("chart point stays symplectic") {
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const int n = 1 + (i % 3);
    const SymplecticMatrix h0 = sample_symplectic(n, 100 + i, SampleSpec::generic());
    const SpAlgebraElement a = random_sp(n, rng, 1.0);
    const Mat h = h0.mat() * matrix_exp(a.mat());
    CHECK(is_symplectic(h, 1e-9).symplectic);
  }
}

TEST_CASE("gradient is in the algebra and matches finite differences") {
  Rng rng(7);
  const double step = 1e-5;
  for (int i = 0; i < 30; ++i) {
    const int n = 1 + (i % 3);
    const SymplecticMatrix h0 = sample_symplectic(n, 200 + i, SampleSpec::generic());
    const Mat s = xmap(sample_symplectic(n, 300 + i, SampleSpec::generic())).mat();
    const SpAlgebraElement a = random_sp(n, rng);
    const Mat g = explore_gradient(a, h0, s).mat();

    // lies in sp(2n,R)
    const Mat j = J_mat(n);
    CHECK((j * g + g.transpose() * j).norm() < 1e-10 * std::max(1.0, g.norm()));

    // zero at a planted optimum
    const SpAlgebraElement zero = SpAlgebraElement::trusted(Mat::Zero(2 * n, 2 * n));
    CHECK(explore_gradient(zero, h0, xmap(h0).mat()).mat().norm() < 1e-10);

    // directional derivatives against central differences
    const auto basis = sp_orthonormal_basis(n);
    Vec analytic(basis.size()), fd(basis.size());
    for (size_t b = 0; b < basis.size(); ++b) {
      analytic(b) = basis[b].cwiseProduct(g).sum();
      const Mat ap = a.mat() + step * basis[b];
      const Mat am = a.mat() - step * basis[b];
      fd(b) = (explore_objective(SpAlgebraElement::trusted(ap), h0, s) -
               explore_objective(SpAlgebraElement::trusted(am), h0, s)) /
              (2.0 * step);
    }
    CHECK((analytic - fd).norm() < 1e-6 * std::max(1.0, fd.norm()));
  }
}

TEST_CASE("planted targets are recovered") {
  for (int n : {1, 2}) {
    int hits = 0;
    for (int i = 0; i < 10; ++i) {
      const SymplecticMatrix planted = sample_symplectic(n, 900 + i, SampleSpec::generic());
      SearchProblem prob;
      prob.n = n;
      prob.S = xmap(planted).mat();
      prob.H0 = Mat::Identity(2 * n, 2 * n);
      prob.seed = 40 + i;
      const SearchReport rep = solve(prob);
      if (rep.best_residual < 1e-6) ++hits;
      CHECK(is_symplectic(rep.best_H, 1e-9).symplectic);
      // the residual is symmetric under inversion of the solution
      const SymplecticMatrix best = SymplecticMatrix::trusted(rep.best_H);
      const double res_inv = (xmap(sp_inverse(best)).mat() - prob.S).norm();
      CHECK(std::abs(res_inv - rep.best_residual) < 1e-9 * std::max(1.0, rep.best_residual));
    }
    CHECK(hits >= 9);
  }
}

TEST_CASE("named targets at n = 1") {
  // S = 0 is reached at J
  SearchProblem p0;
  p0.n = 1;
  p0.S = Mat::Zero(2, 2);
  p0.H0 = Mat::Identity(2, 2);
  p0.seed = 2;
  CHECK(solve(p0).best_residual < 1e-6);

  // S = 2J is reached at the identity
  SearchProblem p2 = p0;
  p2.S = 2.0 * J_mat(1);
  CHECK(solve(p2).best_residual < 1e-6);

  // S = 3J is reached on the hyperbolic family diag(a, 1/a) with a + 1/a = 3
  SearchProblem p3 = p0;
  p3.S = 3.0 * J_mat(1);
  CHECK(solve(p3).best_residual < 1e-6);
}

TEST_CASE("solve is deterministic and chart-shift invariant") {
  SearchProblem prob;
  prob.n = 2;
  prob.S = xmap(sample_symplectic(2, 77, SampleSpec::generic())).mat();
  prob.H0 = Mat::Identity(4, 4);
  prob.seed = 11;
  const SearchReport a = solve(prob);
  const SearchReport b = solve(prob);
  CHECK(a.best_residual == b.best_residual);
  CHECK((a.best_H - b.best_H).norm() == 0.0);

  // shifting the base point by a small group element does not change the
  // reachable best residual
  Rng rng(13);
  SearchProblem shifted = prob;
  shifted.H0 = prob.H0 * matrix_exp(random_sp(2, rng, 0.01).mat());
  const SearchReport c = solve(shifted);
  CHECK(std::abs(a.best_residual - c.best_residual) < 1e-8);
}

TEST_CASE("search report carries restart summaries") {
  SearchProblem prob;
  prob.n = 1;
  prob.S = 2.0 * J_mat(1);
  prob.H0 = Mat::Identity(2, 2);
  prob.restarts = 4;
  prob.seed = 5;
  const SearchReport rep = solve(prob);
  CHECK(!rep.restarts.empty());
  double best = 1e300;
  for (const auto& r : rep.restarts) best = std::min(best, r.final_residual);
  CHECK(rep.best_residual == doctest::Approx(best));
  CHECK_THROWS_AS(solve(SearchProblem{1, Mat::Identity(2, 2), Mat::Identity(2, 2), 10, 1, 1}),
                  Error);  // target must be skew
}

TEST_CASE("rank scan") {
  const RankScanResult res = rank_scan(3, 60, 17);
  int total = 0;
  for (const auto& [rank, count] : res.histogram) {
    CHECK(rank % 2 == 0);
    total += count;
  }
  CHECK(total == 60);
  // witnesses guarantee every even rank appears
  for (int k = 0; k <= 3; ++k) CHECK(res.histogram.count(2 * k) == 1);

  // generic samples at n = 2 concentrate on full rank
  const RankScanResult gen = rank_scan(2, 30, 19);
  CHECK(gen.histogram.at(4) > 15);
}

TEST_CASE("sweep determinism and the explicit n = 1 family") {
  const SweepResult a = image_evidence_sweep(1, 6, 23, 4, 200);
  const SweepResult b = image_evidence_sweep(1, 6, 23, 4, 200);
  CHECK(sweep_to_json(a).dump() == sweep_to_json(b).dump());
  CHECK(static_cast<int>(a.targets.size()) == 6);

  // s J targets: 0 and 2 are certainly reachable (J and I)
  const SweepResult fam = image_evidence_sweep(1, 0, 29, 4, 300, {0.0, 2.0, 2.0 * std::cos(0.7)});
  for (const auto& t : fam.targets) CHECK(t.best_residual < 1e-6);
}
