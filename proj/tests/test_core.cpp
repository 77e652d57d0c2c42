#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symgf/core.hpp"

using namespace symgf;

namespace {

Vec random_vec(int n, Rng& rng) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.uniform(-1.0, 1.0);
  return v;
}

}  // namespace

TEST_CASE("standard J blocks and square") {
  const Mat j1 = J_mat(1);
  CHECK(j1(0, 0) == 0.0);
  CHECK(j1(0, 1) == -1.0);
  CHECK(j1(1, 0) == 1.0);
  CHECK(j1(1, 1) == 0.0);

  const Mat j2 = J_mat(2);
  CHECK((j2.topRightCorner(2, 2) + Mat::Identity(2, 2)).norm() == 0.0);
  CHECK((j2.bottomLeftCorner(2, 2) - Mat::Identity(2, 2)).norm() == 0.0);

  for (int n = 1; n <= 5; ++n) {
    const Mat j = J_mat(n);
    CHECK((j * j + Mat::Identity(2 * n, 2 * n)).norm() == 0.0);
    CHECK(is_symplectic(j).symplectic);
    CHECK(is_symplectic(j).residual_form == 0.0);
  }
}

TEST_CASE("is_symplectic verdicts") {
  CHECK(is_symplectic(Mat::Identity(4, 4)).symplectic);
  CHECK(is_symplectic(Mat::Identity(4, 4)).residual_form == 0.0);

  // determinant-preserving but not form-preserving
  Mat d(2, 2);
  d << 2.0, 0.0, 0.0, 1.0;
  const SymplecticReport rep = is_symplectic(d);
  CHECK_FALSE(rep.symplectic);
  CHECK(rep.equivalences_agree);

  CHECK_THROWS_AS(is_symplectic(Mat::Identity(3, 3)), Error);
}

TEST_CASE("sp_inverse block formula") {
  // J^-1 = -J
  const SymplecticMatrix j = SymplecticMatrix(J_mat(2));
  CHECK((sp_inverse(j).mat() + J_mat(2)).norm() == 0.0);

  // symmetric shear inverts by flipping the off-diagonal block
  Mat b(2, 2);
  b << 0.3, -0.1, -0.1, 0.8;
  Mat shear = Mat::Identity(4, 4);
  shear.topRightCorner(2, 2) = b;
  Mat expect = Mat::Identity(4, 4);
  expect.topRightCorner(2, 2) = -b;
  CHECK((sp_inverse(SymplecticMatrix(shear)).mat() - expect).norm() == 0.0);

  // seeded sample: agrees with a general-purpose LU inverse
  const SymplecticMatrix h = sample_symplectic(3, 11, SampleSpec::generic());
  const Mat lu_inv = h.mat().partialPivLu().solve(Mat::Identity(6, 6));
  CHECK((sp_inverse(h).mat() - lu_inv).norm() < 1e-10 * std::max(1.0, lu_inv.norm()));
  CHECK((sp_inverse(h).mat() * h.mat() - Mat::Identity(6, 6)).norm() < 1e-10);
}

TEST_CASE("samplers honor their contracts") {
  SUBCASE("generic samples are symplectic") {
    for (uint64_t seed : {1ull, 7ull, 42ull}) {
      for (int n : {1, 2, 3, 5}) {
        const SymplecticMatrix h = sample_symplectic(n, seed, SampleSpec::generic());
        CHECK(is_symplectic(h.mat(), 1e-9).symplectic);
      }
    }
  }
  SUBCASE("singular_b hits the requested B rank exactly") {
    for (int n : {1, 2, 3, 4}) {
      for (int r = 0; r <= n; ++r) {
        const SymplecticMatrix h = sample_symplectic(n, 5, SampleSpec::singular_b(r));
        CHECK(is_symplectic(h.mat(), 1e-9).symplectic);
        CHECK(svd_rank(h.B()) == r);
      }
    }
    const SymplecticMatrix h0 = sample_symplectic(2, 3, SampleSpec::singular_b(0));
    CHECK(h0.B().norm() == 0.0);
  }
  SUBCASE("witness family: H_n = I and H_0 = J") {
    const SymplecticMatrix hn = sample_symplectic(3, 0, SampleSpec::witness(3));
    CHECK((hn.mat() - Mat::Identity(6, 6)).norm() == 0.0);
    const SymplecticMatrix h0 = sample_symplectic(3, 0, SampleSpec::witness(0));
    CHECK((h0.mat() - J_mat(3)).norm() == 0.0);
  }
  SUBCASE("identical seeds give bit-identical matrices") {
    const Mat a = sample_symplectic(3, 99, SampleSpec::generic()).mat();
    const Mat b = sample_symplectic(3, 99, SampleSpec::generic()).mat();
    CHECK((a - b).norm() == 0.0);
    const Mat c = sample_symplectic(3, 100, SampleSpec::generic()).mat();
    CHECK((a - c).norm() != 0.0);
  }
  SUBCASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(sample_symplectic(2, 1, SampleSpec::singular_b(3)), Error);
    CHECK_THROWS_AS(sample_symplectic(2, 1, SampleSpec::witness(-1)), Error);
  }
}

TEST_CASE("complex symplectic form") {
  Rng rng(2024);
  SUBCASE("single-term evaluation and antisymmetry") {
    ComplexGraphPoint p{CVec::Constant(1, 1.0), CVec::Constant(1, 0.0)};
    ComplexGraphPoint q{CVec::Constant(1, 0.0), CVec::Constant(1, 1.0)};
    CHECK(omega_complex(p, q) == cplx(-1.0, 0.0));
    CHECK(omega_complex(p, p) == cplx(0.0, 0.0));
  }
  SUBCASE("antisymmetric up to roundoff") {
    for (int n : {1, 2, 4}) {
      ComplexGraphPoint p, q;
      p.z = random_vec(n, rng).cast<cplx>() + cplx(0, 1) * random_vec(n, rng).cast<cplx>();
      p.zeta = random_vec(n, rng).cast<cplx>() + cplx(0, 1) * random_vec(n, rng).cast<cplx>();
      q.z = random_vec(n, rng).cast<cplx>() + cplx(0, 1) * random_vec(n, rng).cast<cplx>();
      q.zeta = random_vec(n, rng).cast<cplx>() + cplx(0, 1) * random_vec(n, rng).cast<cplx>();
      CHECK(std::abs(omega_complex(p, q) + omega_complex(q, p)) < 1e-14);
    }
  }
}

TEST_CASE("graph embedding") {
  Rng rng(5);
  SUBCASE("identity and J cases") {
    const Vec x = random_vec(2, rng), xi = random_vec(2, rng);
    const auto pid = graph_embed(SymplecticMatrix(Mat::Identity(4, 4)), x, xi);
    CHECK((pid.z - (x.cast<cplx>() + cplx(0, 1) * x.cast<cplx>())).norm() == 0.0);
    CHECK((pid.zeta - (xi.cast<cplx>() + cplx(0, 1) * xi.cast<cplx>())).norm() == 0.0);

    const auto pj = graph_embed(SymplecticMatrix(J_mat(2)), x, xi);
    CHECK((pj.z - (x.cast<cplx>() - cplx(0, 1) * xi.cast<cplx>())).norm() == 0.0);
    CHECK((pj.zeta - (xi.cast<cplx>() + cplx(0, 1) * x.cast<cplx>())).norm() == 0.0);
  }
  SUBCASE("embedded graph is R-Lagrangian") {
    for (int n : {1, 2, 3}) {
      const SymplecticMatrix h = sample_symplectic(n, 17 + n, SampleSpec::generic());
      for (int t = 0; t < 20; ++t) {
        const Vec x1 = random_vec(n, rng), xi1 = random_vec(n, rng);
        const Vec x2 = random_vec(n, rng), xi2 = random_vec(n, rng);
        const auto p = graph_embed(h, x1, xi1);
        const auto q = graph_embed(h, x2, xi2);
        const double scale = std::max(1.0, p.z.norm() * q.z.norm() + p.zeta.norm() * q.zeta.norm());
        CHECK(std::abs(omega_complex(p, q).real()) < 1e-10 * scale);
      }
    }
  }
  SUBCASE("graph points of one transformation pair to purely imaginary values") {
    const SymplecticMatrix h = sample_symplectic(2, 31, SampleSpec::generic());
    const auto p = graph_embed(h, random_vec(2, rng), random_vec(2, rng));
    const auto q = graph_embed(h, random_vec(2, rng), random_vec(2, rng));
    const cplx w = omega_complex(p, q);
    CHECK(std::abs(w.real()) < 1e-10 * std::max(1.0, std::abs(w)));
  }
}

TEST_CASE("all equivalent characterizations agree on samples") {
  for (int i = 0; i < 40; ++i) {
    const int n = 1 + (i % 3);
    SampleSpec spec = (i % 3 == 0) ? SampleSpec::generic()
                      : (i % 3 == 1) ? SampleSpec::singular_b(i % (n + 1))
                                     : SampleSpec::witness(i % (n + 1));
    const SymplecticMatrix h = sample_symplectic(n, 1000 + i, spec);
    const SymplecticReport rep = is_symplectic(h.mat(), 1e-9);
    CHECK(rep.symplectic);
    CHECK(rep.equivalences_agree);
  }
}

TEST_CASE("matrix exponential sanity") {
  CHECK((matrix_exp(Mat::Zero(3, 3)) - Mat::Identity(3, 3)).norm() == 0.0);
  Mat a(2, 2);
  a << 0.0, -1.3, 1.3, 0.0;  // rotation generator
  const Mat e = matrix_exp(a);
  CHECK(std::abs(e(0, 0) - std::cos(1.3)) < 1e-14);
  CHECK(std::abs(e(1, 0) - std::sin(1.3)) < 1e-14);

  // exp of an sp element lands in Sp, including for larger norms
  Rng rng(77);
  for (int n : {1, 2, 3}) {
    const Mat m = sample_sp_element(n, rng).mat();
    CHECK(is_symplectic(matrix_exp(m), 1e-9).symplectic);
    CHECK(is_symplectic(matrix_exp(3.0 * m), 1e-8).symplectic);
  }
}

TEST_CASE("nullspace and principal angle helpers") {
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = 2.0;
  m(1, 1) = 1e-12;  // below threshold
  const Mat ns = nullspace_basis(m);
  CHECK(ns.cols() == 3);
  CHECK(svd_rank(m) == 1);
  CHECK(max_principal_angle(ns, ns) < 1e-12);
}

TEST_CASE("sp generators span and are orthonormalizable") {
  for (int n : {1, 2, 3}) {
    const auto gens = sp_generators(n);
    CHECK(static_cast<int>(gens.size()) == n * (2 * n + 1));
    const Mat j = J_mat(n);
    for (const Mat& g : gens) {
      CHECK((j * g + g.transpose() * j).norm() == 0.0);
    }
    const auto basis = sp_orthonormal_basis(n);
    for (size_t a = 0; a < basis.size(); ++a) {
      for (size_t b = 0; b < basis.size(); ++b) {
        const double ip = basis[a].cwiseProduct(basis[b]).sum();
        CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) < 1e-14);
      }
    }
  }
}
