#include "symgf/acceptance.hpp"

#include "symgf/explorer.hpp"
#include "symgf/genfun.hpp"
#include "symgf/json_io.hpp"
#include "symgf/metaplectic.hpp"
#include "symgf/xmap.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace symgf::acceptance {

namespace {

int scaled(double scale, int count) {
  return std::max(1, static_cast<int>(std::lround(count * scale)));
}

uint64_t criterion_seed(const SuiteSpec& spec, int id) {
  return spec.seed * 10007ull + static_cast<uint64_t>(id) * 101ull;
}

double tol_for(const SuiteSpec& spec, const std::string& key, double fallback) {
  auto it = spec.tol_overrides.find(key);
  return it == spec.tol_overrides.end() ? fallback : it->second;
}

/// Deterministic class mix used by several criteria: witnesses, singular-B
/// ranks, and generic samples in rotation.
SymplecticMatrix sampled_class(int n, uint64_t seed, int i) {
  switch (i % 3) {
    case 0:
      return sample_symplectic(n, 0, SampleSpec::witness((i / 3) % (n + 1)));
    case 1:
      return sample_symplectic(n, seed + i, SampleSpec::singular_b((i / 3) % (n + 1)));
    default:
      return sample_symplectic(n, seed + i, SampleSpec::generic());
  }
}

CriterionResult criterion_graph_identity(const SuiteSpec& spec) {
  CriterionResult res;
  res.id = 1;
  res.key = "graph_identity";
  res.name = "generating-function graph identity (both inclusions)";
  res.tol = tol_for(spec, res.key, 1e-8);
  const uint64_t seed = criterion_seed(spec, res.id);
  const int per_class = scaled(spec.scale, 200);

  double worst = 0.0;
  Rng rng(seed);
  for (int n : {1, 2, 3, 5}) {
    std::vector<SampleSpec> classes;
    classes.push_back(SampleSpec::generic());
    for (int r = 0; r <= n; ++r) classes.push_back(SampleSpec::singular_b(r));
    classes.push_back(SampleSpec::witness(0));  // witness class: k cycles below
    for (size_t c = 0; c < classes.size(); ++c) {
      for (int i = 0; i < per_class; ++i) {
        SampleSpec sp = classes[c];
        if (sp.kind == SampleSpec::Kind::witness) sp.param = i % (n + 1);
        const SymplecticMatrix h = sample_symplectic(n, seed + 7919ull * i + c, sp);
        const GeneratingFunction gf = build_genfun(h);
        for (int t = 0; t < 3; ++t) {
          Vec x(n), xi(n);
          for (int j = 0; j < n; ++j) {
            x(j) = rng.uniform(-1.0, 1.0);
            xi(j) = rng.uniform(-1.0, 1.0);
          }
          worst = std::max(worst, graph_from_phi(gf, h, x, xi).relative());
        }
        worst = std::max(worst, reverse_inclusion_check(gf, h, seed + i, 3));
      }
    }
  }
  res.residual = worst;
  res.pass = worst < res.tol;
  std::ostringstream os;
  os << "n in {1,2,3,5}, " << per_class << " samples per class, max residual " << worst;
  res.details = os.str();
  return res;
}

CriterionResult criterion_restriction(const SuiteSpec& spec) {
  CriterionResult res;
  res.id = 2;
  res.key = "restriction_identity";
  res.name = "restriction identity (three-way agreement)";
  res.tol = tol_for(spec, res.key, 1e-8);
  const uint64_t seed = criterion_seed(spec, res.id);
  const int num_h = scaled(spec.scale, 100);
  const int pairs = scaled(spec.scale, 500);

  double worst = 0.0;
  for (int i = 0; i < num_h; ++i) {
    const int n = 1 + (i % 3);
    const SymplecticMatrix h = sampled_class(n, seed, i);
    worst = std::max(worst, restriction_identity_check(h, seed + 31 * i, pairs));
  }
  res.residual = worst;
  res.pass = worst < res.tol;
  std::ostringstream os;
  os << num_h << " matrices x " << pairs << " point pairs, max discrepancy " << worst;
  res.details = os.str();
  return res;
}

CriterionResult criterion_xmap_algebra(const SuiteSpec& spec) {
  CriterionResult res;
  res.id = 3;
  res.key = "xmap_algebra";
  res.name = "skew-image map algebra (inverse form, symmetry, covariance, kernel)";
  res.tol = tol_for(spec, res.key, 1.0);  // worst ratio against per-check tolerances
  const uint64_t seed = criterion_seed(spec, res.id);
  const int count = scaled(spec.scale, 200);

  double worst_ratio = 0.0;
  std::string worst_part = "none";
  auto update = [&](double ratio, const char* part) {
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst_part = part;
    }
  };

  for (int i = 0; i < count; ++i) {
    const int n = 1 + (i % 3);
    const SymplecticMatrix h = sampled_class(n, seed, i);
    const Mat x = xmap(h).mat();
    const double xscale = std::max(1.0, x.norm());

    const Mat via_inverse = J_mat(n) * (h.mat() + sp_inverse(h).mat());
    update((x - via_inverse).norm() / (1e-10 * xscale), "J(H+H^-1)");

    const Mat x_inv = xmap(sp_inverse(h)).mat();
    update((x - x_inv).norm() / (1e-10 * xscale), "X(H)=X(H^-1)");

    const SymplecticMatrix r = sampled_class(n, seed + 5000, i + 1);
    const double lhs_scale =
        std::max(1.0, (h.mat().transpose() * xmap(r).mat() * h.mat()).norm());
    update(conjugation_covariance_check(h, r) / (1e-9 * lhs_scale), "conjugation");

    // kernel of X(H) versus kernel of H^2 + I
    const Mat ker_x = xmap_kernel(h);
    const Mat h2pi = h.mat() * h.mat() + Mat::Identity(2 * n, 2 * n);
    const Mat ker_h = nullspace_basis(h2pi);
    if (ker_x.cols() != ker_h.cols()) {
      update(std::numeric_limits<double>::infinity(), "kernel dimension");
    } else if (ker_x.cols() > 0) {
      update(max_principal_angle(ker_x, ker_h) / 1e-6, "kernel angle");
    }
  }
  res.residual = worst_ratio;
  res.pass = worst_ratio < res.tol;
  std::ostringstream os;
  os << count << " samples, worst ratio " << worst_ratio << " from " << worst_part;
  res.details = os.str();
  return res;
}

CriterionResult criterion_examples_table(const SuiteSpec& spec) {
  CriterionResult res;
  res.id = 4;
  res.key = "examples_table";
  res.name = "reference mappings of the skew-image map";
  res.tol = tol_for(spec, res.key, 1e-12);
  const uint64_t seed = criterion_seed(spec, res.id);
  Rng rng(seed);

  double worst = 0.0;
  // block-diagonal family (A, 0; 0, A^-T) -> (0, -A^T - A^-T... ; A + A^-1, 0)
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 1 + (rep % 3);
    Mat r(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r(i, j) = rng.uniform(-0.5, 0.5);
    const Mat a = matrix_exp(r);
    const Mat ainv = a.partialPivLu().solve(Mat::Identity(n, n));
    Mat h = Mat::Zero(2 * n, 2 * n);
    h.topLeftCorner(n, n) = a;
    h.bottomRightCorner(n, n) = ainv.transpose();
    Mat want = Mat::Zero(2 * n, 2 * n);
    want.topRightCorner(n, n) = -(a.transpose() + ainv.transpose());
    want.bottomLeftCorner(n, n) = a + ainv;
    worst = std::max(worst, (xmap(SymplecticMatrix(h)).mat() - want).norm());
  }
  // shears map to 2J
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 1 + (rep % 3);
    Mat b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) b(i, j) = b(j, i) = rng.uniform(-1.0, 1.0);
    Mat up = Mat::Identity(2 * n, 2 * n);
    up.topRightCorner(n, n) = b;
    Mat lo = Mat::Identity(2 * n, 2 * n);
    lo.bottomLeftCorner(n, n) = b;
    const Mat twoj = 2.0 * J_mat(n);
    worst = std::max(worst, (xmap(SymplecticMatrix(up)).mat() - twoj).norm());
    worst = std::max(worst, (xmap(SymplecticMatrix(lo)).mat() - twoj).norm());
  }
  // J itself maps to zero
  for (int n : {1, 2, 3}) {
    worst = std::max(worst, xmap(SymplecticMatrix(J_mat(n))).mat().norm());
  }
  // rotation family at ten angles
  for (int i = 0; i < 10; ++i) {
    const double t = -2.5 + 0.55 * i;
    worst = std::max(worst, rotation_example_check(t, 2));
  }
  // inverse symmetry on sampled matrices
  for (int i = 0; i < 10; ++i) {
    const int n = 1 + (i % 3);
    const SymplecticMatrix h = sampled_class(n, seed, i);
    worst = std::max(worst, (xmap(h).mat() - xmap(sp_inverse(h)).mat()).norm());
  }

  res.residual = worst;
  res.pass = worst < res.tol;
  std::ostringstream os;
  os << "six mapping families, max residual " << worst;
  res.details = os.str();
  return res;
}

CriterionResult criterion_rank_witnesses(const SuiteSpec& spec) {
  CriterionResult res;
  res.id = 5;
  res.key = "rank_witnesses";
  res.name = "witness ranks: rank(X(H_k)) = 2k for 0 <= k <= n <= 6";
  res.tol = tol_for(spec, res.key, 0.5);
  int worst = 0;
  for (int n = 1; n <= 6; ++n) {
    for (int k = 0; k <= n; ++k) {
      const int rank = svd_rank(xmap(witness_Hk(n, k)).mat());
      worst = std::max(worst, std::abs(rank - 2 * k));
    }
  }
  res.residual = worst;
  res.pass = worst == 0;
  res.details = "all (n, k) pairs up to n = 6";
  return res;
}

CriterionResult criterion_quotient(const SuiteSpec& spec) {
  CriterionResult res;
  res.id = 6;
  res.key = "quotient";
  res.name = "quotient representative: idempotence, coset invariance, projection";
  res.tol = tol_for(spec, res.key, 1e-12);
  const uint64_t seed = criterion_seed(spec, res.id);
  Rng rng(seed);
  const int count = scaled(spec.scale, 200);
  const int shifts = scaled(spec.scale, 100);

  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const int n = 1 + (i % 3);
    Mat m(2 * n, 2 * n);
    for (int r = 0; r < 2 * n; ++r)
      for (int c = 0; c < 2 * n; ++c) m(r, c) = rng.uniform(-1.0, 1.0);

    const QuotientRep rep = canonical_rep(m);
    const Mat assembled = rep.assemble();
    const QuotientRep again = canonical_rep(assembled);
    worst = std::max(worst, (again.assemble() - assembled).norm());

    // representative is constant on the coset M + sp(2n,R)
    if (i < shifts) {
      const SpAlgebraElement a = sample_sp_element(n, rng);
      const QuotientRep shifted = canonical_rep(m + a.mat());
      worst = std::max(worst, (shifted.assemble() - assembled).norm() /
                                  std::max(1.0, assembled.norm()));
    }

    const SymplecticMatrix h = sampled_class(n, seed, i);
    const QuotientRep via_pi = pi_sp(h);
    const QuotientRep via_rep = canonical_rep(h.mat());
    worst = std::max(worst, (via_pi.assemble() - via_rep.assemble()).norm());
  }
  res.residual = worst;
  res.pass = worst < res.tol;
  std::ostringstream os;
  os << count << " matrices, " << shifts << " coset shifts, max deviation " << worst;
  res.details = os.str();
  return res;
}

CriterionResult criterion_explorer(const SuiteSpec& spec) {
  CriterionResult res;
  res.id = 7;
  res.key = "explorer_planted";
  res.name = "planted-target recovery and reproducible sweep";
  res.tol = tol_for(spec, res.key, 0.1);  // 1 - minimum recovery fraction
  const uint64_t seed = criterion_seed(spec, res.id);
  const int per_n = scaled(spec.scale, 50);

  double min_fraction = 1.0;
  std::ostringstream os;
  for (int n : {1, 2, 3}) {
    int hits = 0;
    for (int i = 0; i < per_n; ++i) {
      const SymplecticMatrix planted =
          sample_symplectic(n, seed + 997ull * i + n, SampleSpec::generic());
      SearchProblem prob;
      prob.n = n;
      prob.S = xmap(planted).mat();
      prob.H0 = Mat::Identity(2 * n, 2 * n);
      prob.budget = 500;
      prob.restarts = 8;
      prob.seed = seed + 131ull * i;
      const SearchReport rep = solve(prob);
      if (rep.best_residual < 1e-6) ++hits;
    }
    const double fraction = static_cast<double>(hits) / per_n;
    min_fraction = std::min(min_fraction, fraction);
    os << "n=" << n << ": " << hits << "/" << per_n << " recovered; ";
  }

  // non-planted sweep at n = 1: must complete and be byte-reproducible
  const int sweep_targets = scaled(spec.scale, 100);
  const SweepResult s1 = image_evidence_sweep(1, sweep_targets, seed + 1, 8, 500);
  const SweepResult s2 = image_evidence_sweep(1, sweep_targets, seed + 1, 8, 500);
  const bool reproducible = sweep_to_json(s1).dump() == sweep_to_json(s2).dump();
  os << "sweep(" << sweep_targets << " targets) reproducible=" << (reproducible ? "yes" : "no");

  res.residual = 1.0 - min_fraction;
  res.pass = (res.residual < res.tol) && reproducible;
  res.details = os.str();
  return res;
}

CriterionResult criterion_phase_rank(const SuiteSpec& spec) {
  CriterionResult res;
  res.id = 8;
  res.key = "phase_rank";
  res.name = "nondegenerate phase: theta-derivative rank is 2n";
  res.tol = tol_for(spec, res.key, 0.5);
  const uint64_t seed = criterion_seed(spec, res.id);
  const int count = scaled(spec.scale, 200);

  int worst = 0;
  double min_sigma_ratio = 1.0;
  for (int i = 0; i < count; ++i) {
    const int n = 1 + (i % 4);
    // classes that engage the auxiliary-parameter branch
    GeneratingFunction gf;
    switch (i % 3) {
      case 0:
        gf = build_genfun_general(sample_symplectic(n, seed + i, SampleSpec::singular_b(i % n)));
        break;
      case 1:
        gf = build_genfun_general(sample_symplectic(n, 0, SampleSpec::witness(i % n)));
        break;
      default:  // invertible B forced through the general construction
        gf = build_genfun_general(sample_symplectic(n, seed + i, SampleSpec::generic()));
        break;
    }
    const PhaseRankResult pr = phase_nondegeneracy_check(gf);
    worst = std::max(worst, std::abs(pr.rank - pr.expected) + (pr.structure_ok ? 0 : 1));
    if (pr.sigma_max > 0.0) {
      min_sigma_ratio = std::min(min_sigma_ratio, pr.sigma_min / pr.sigma_max);
    }
  }
  res.residual = worst;
  res.pass = worst == 0;
  std::ostringstream os;
  os << count << " general-branch functions, n <= 4, min sigma ratio " << min_sigma_ratio;
  res.details = os.str();
  return res;
}

CriterionResult criterion_metaplectic(const SuiteSpec& spec) {
  CriterionResult res;
  res.id = 9;
  res.key = "metaplectic";
  res.name = "metaplectic action: grid oracle, unitarity, composition, shift coherence";
  res.tol = tol_for(spec, res.key, 1.0);  // worst ratio against per-part tolerances
  const uint64_t seed = criterion_seed(spec, res.id);
  Rng rng(seed);

  double worst_ratio = 0.0;
  std::string worst_part = "none";
  auto update = [&](double value, double tol, const char* part) {
    const double ratio = value / tol;
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst_part = part;
    }
  };

  const auto invertible_b_case = [&]() {
    for (;;) {
      const double t1 = rng.uniform(0.3, 1.2);
      const double t2 = rng.uniform(0.3, 1.2);
      const double c = rng.uniform(-0.5, 0.5);
      Mat shear = Mat::Identity(2, 2);
      shear(1, 0) = c;
      const Mat h = rotation_matrix(1, t1).mat() * shear * rotation_matrix(1, t2).mat();
      if (std::abs(h(0, 1)) > 0.3) return SymplecticMatrix::trusted(h);
    }
  };

  // (a) closed form versus quadrature
  const int grid_cases = scaled(spec.scale, 20);
  for (int i = 0; i < grid_cases; ++i) {
    const SymplecticMatrix h = invertible_b_case();
    GaussianState u;
    u.n = 1;
    u.M = CMat::Constant(1, 1, cplx(rng.uniform(-0.4, 0.4), rng.uniform(0.8, 1.5)));
    u.c = cplx(rng.uniform(0.5, 1.5), rng.uniform(-0.5, 0.5));
    u.h = 1.0;
    const GaussianState v = quantize_gaussian(h, u);
    const GridField vg = grid_quantize(h, gaussian_to_grid(u, 12.0, 2048), 1.0);
    update(grid_rel_l2_diff(vg, gaussian_to_grid(v, 12.0, 2048)), 1e-3, "grid oracle");
  }

  // (b) unitarity on states
  const int unit_cases = scaled(spec.scale, 100);
  for (int i = 0; i < unit_cases; ++i) {
    const int n = 1 + (i % 2);
    const SymplecticMatrix h = sampled_class(n, seed + 17 * i, i);
    GaussianState u;
    u.n = n;
    Mat re(n, n), im(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        re(a, b) = re(b, a) = rng.uniform(-0.4, 0.4);
        im(a, b) = im(b, a) = (a == b) ? rng.uniform(0.8, 1.5) : rng.uniform(-0.2, 0.2);
      }
    u.M = re.cast<cplx>() + cplx(0.0, 1.0) * im.cast<cplx>();
    u.c = cplx(rng.uniform(0.5, 1.5), rng.uniform(-0.5, 0.5));
    u.h = 1.0;
    const GaussianState v = quantize_general(h, u);
    update(std::abs(state_norm(v) - state_norm(u)) / state_norm(u), 1e-6, "unitarity");
  }

  // (c) composition up to a unimodular scalar, including mu(J)^2 vs mu(-I)
  {
    const SymplecticMatrix j1 = SymplecticMatrix::trusted(J_mat(1));
    const GaussianState u = GaussianState::standard(1);
    update(composition_check(j1, j1, u, seed).discrepancy, 1e-6, "mu(J)^2 vs mu(-I)");
  }
  const int pair_cases = scaled(spec.scale, 50);
  for (int i = 0; i < pair_cases; ++i) {
    const SymplecticMatrix h1 =
        (i % 3 == 0) ? rotation_matrix(1, rng.uniform(-2.5, 2.5)) : invertible_b_case();
    const SymplecticMatrix h2 = (i % 2 == 0)
                                    ? sample_symplectic(1, seed + 23 * i, SampleSpec::singular_b(0))
                                    : invertible_b_case();
    update(composition_check(h1, h2, GaussianState::standard(1), seed + i).discrepancy, 1e-6,
           "composition");
  }

  // (d) factorization shift coherence on B-singular inputs
  const int shift_cases = scaled(spec.scale, 10);
  for (int i = 0; i < shift_cases; ++i) {
    const SymplecticMatrix h = sample_symplectic(1, seed + 41 * i, SampleSpec::singular_b(0));
    const GaussianState u = GaussianState::standard(1);
    const GaussianState v1 = quantize_general(h, u, 0.4);
    const GaussianState v2 = quantize_general(h, u, 1.1);
    update((v1.M - v2.M).norm(), 1e-8, "shift coherence M'");
    update(std::abs(std::abs(v1.c / v2.c) - 1.0), 1e-8, "shift coherence |c|");
  }

  res.residual = worst_ratio;
  res.pass = worst_ratio < res.tol;
  std::ostringstream os;
  os << "worst ratio " << worst_ratio << " from " << worst_part;
  res.details = os.str();
  return res;
}

CriterionResult criterion_gradients(const SuiteSpec& spec) {
  CriterionResult res;
  res.id = 10;
  res.key = "gradient_checks";
  res.name = "analytic gradients versus central finite differences";
  res.tol = tol_for(spec, res.key, 1e-6);
  const uint64_t seed = criterion_seed(spec, res.id);
  Rng rng(seed);
  const int count = scaled(spec.scale, 100);
  const double fd_h = 1e-5;

  double worst = 0.0;

  // generating-function gradient
  for (int i = 0; i < count; ++i) {
    const int n = 1 + (i % 3);
    const SymplecticMatrix h = sampled_class(n, seed, i);
    const GeneratingFunction gf = (i % 2 == 0) ? build_genfun(h) : build_genfun_general(h);
    CVec z(n);
    Vec theta(gf.theta_dim);
    for (int j = 0; j < n; ++j) z(j) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    for (int j = 0; j < gf.theta_dim; ++j) theta(j) = rng.uniform(-1.0, 1.0);

    const PhiGrad g = phi_grad(gf, z, theta);
    Vec fd(2 * n + gf.theta_dim);
    const auto eval_at = [&](int coord, double delta) {
      CVec zz = z;
      Vec th = theta;
      if (coord < n) zz(coord) += delta;
      else if (coord < 2 * n) zz(coord - n) += cplx(0.0, delta);
      else th(coord - 2 * n) += delta;
      return phi_eval(gf, zz, th);
    };
    for (int cidx = 0; cidx < 2 * n + gf.theta_dim; ++cidx) {
      fd(cidx) = (eval_at(cidx, fd_h) - eval_at(cidx, -fd_h)) / (2.0 * fd_h);
    }
    // dz = (dPhi/dp - i dPhi/dq) / 2
    Vec analytic(2 * n + gf.theta_dim);
    analytic.segment(0, n) = 2.0 * g.dz.real();
    analytic.segment(n, n) = -2.0 * g.dz.imag();
    analytic.tail(gf.theta_dim) = g.dtheta;
    worst = std::max(worst, (analytic - fd).norm() / std::max(1.0, fd.norm()));
  }

  // explorer objective gradient
  for (int i = 0; i < count; ++i) {
    const int n = 1 + (i % 3);
    const SymplecticMatrix h0 = sampled_class(n, seed + 3, i);
    const Mat s = xmap(sampled_class(n, seed + 7, i + 1)).mat();
    const std::vector<Mat> basis = sp_orthonormal_basis(n);
    Vec x(basis.size());
    for (size_t j = 0; j < basis.size(); ++j) x(j) = 0.5 * rng.gaussian();
    Mat a = Mat::Zero(2 * n, 2 * n);
    for (size_t j = 0; j < basis.size(); ++j) a += x(j) * basis[j];

    const SpAlgebraElement ae = SpAlgebraElement::trusted(a);
    const Mat g = explore_gradient(ae, h0, s).mat();
    Vec analytic(basis.size()), fd(basis.size());
    for (size_t j = 0; j < basis.size(); ++j) {
      analytic(j) = basis[j].cwiseProduct(g).sum();
      const Mat ap = a + fd_h * basis[j];
      const Mat am = a - fd_h * basis[j];
      fd(j) = (explore_objective(SpAlgebraElement::trusted(ap), h0, s) -
               explore_objective(SpAlgebraElement::trusted(am), h0, s)) /
              (2.0 * fd_h);
    }
    worst = std::max(worst, (analytic - fd).norm() / std::max(1.0, fd.norm()));
  }

  res.residual = worst;
  res.pass = worst < res.tol;
  std::ostringstream os;
  os << 2 * count << " gradient points, max relative error " << worst;
  res.details = os.str();
  return res;
}

}  // namespace

SuiteResult run_suite(const SuiteSpec& spec) {
  using Runner = CriterionResult (*)(const SuiteSpec&);
  const Runner runners[] = {
      criterion_graph_identity, criterion_restriction,   criterion_xmap_algebra,
      criterion_examples_table, criterion_rank_witnesses, criterion_quotient,
      criterion_explorer,       criterion_phase_rank,     criterion_metaplectic,
      criterion_gradients,
  };

  SuiteResult result;
  result.spec = spec;
  result.all_pass = true;
  for (int id = 1; id <= 10; ++id) {
    if (!spec.only.empty() &&
        std::find(spec.only.begin(), spec.only.end(), id) == spec.only.end()) {
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult cr = runners[id - 1](spec);
    const auto t1 = std::chrono::steady_clock::now();
    cr.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    result.all_pass = result.all_pass && cr.pass;
    result.criteria.push_back(std::move(cr));
  }
  return result;
}

std::string suite_report_json(const SuiteResult& result, bool include_timings) {
  json j;
  j["seed"] = result.spec.seed;
  j["scale"] = result.spec.scale;
  json overrides = json::object();
  for (const auto& [k, v] : result.spec.tol_overrides) overrides[k] = v;
  j["tolerance_overrides"] = std::move(overrides);
  json arr = json::array();
  int passed = 0;
  for (const auto& c : result.criteria) {
    json e = {{"id", c.id},     {"key", c.key},           {"name", c.name},
              {"pass", c.pass}, {"residual", c.residual}, {"tolerance", c.tol},
              {"details", c.details}};
    if (include_timings) e["ms"] = c.ms;
    if (c.pass) ++passed;
    arr.push_back(std::move(e));
  }
  j["criteria"] = std::move(arr);
  j["aggregate"] = {{"total", result.criteria.size()},
                    {"passed", passed},
                    {"all_pass", result.all_pass}};
  return j.dump(2) + "\n";
}

}  // namespace symgf::acceptance
