#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symgf/capi.h"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  symgf_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("matrix handles and json round trip") {
  symgf_matrix* j = nullptr;
  REQUIRE(symgf_standard_j(2, &j) == SYMGF_OK);
  int rows = 0, cols = 0;
  CHECK(symgf_matrix_shape(j, &rows, &cols) == SYMGF_OK);
  CHECK(rows == 4);
  CHECK(cols == 4);
  double v = 0.0;
  CHECK(symgf_matrix_get(j, 0, 2, &v) == SYMGF_OK);
  CHECK(v == -1.0);

  char* text = nullptr;
  REQUIRE(symgf_matrix_to_json(j, &text) == SYMGF_OK);
  const std::string json_text = take(text);
  symgf_matrix* back = nullptr;
  REQUIRE(symgf_matrix_parse_json(json_text.c_str(), &back) == SYMGF_OK);
  std::vector<double> a(16), b(16);
  CHECK(symgf_matrix_copy_data(j, a.data(), a.size()) == SYMGF_OK);
  CHECK(symgf_matrix_copy_data(back, b.data(), b.size()) == SYMGF_OK);
  CHECK(a == b);

  symgf_matrix_free(j);
  symgf_matrix_free(back);
}

TEST_CASE("error paths set codes and messages") {
  CHECK(symgf_standard_j(0, nullptr) == SYMGF_ERR_ARGUMENT);

  symgf_matrix* bad = nullptr;
  CHECK(symgf_matrix_parse_json("{\"n\": 1}", &bad) == SYMGF_ERR_IO);
  CHECK(std::string(symgf_last_error()).size() > 0);

  CHECK(symgf_matrix_load_json("/nonexistent/path.json", &bad) == SYMGF_ERR_IO);

  // odd-dimension matrix is a dimension error for the extension
  const double id3[] = {1, 0, 0, 0, 1, 0, 0, 0, 1};
  symgf_matrix* m3 = nullptr;
  REQUIRE(symgf_matrix_create(3, 3, id3, &m3) == SYMGF_OK);
  symgf_matrix* out = nullptr;
  CHECK(symgf_xmap_extended(m3, &out) == SYMGF_ERR_DIMENSION);
  symgf_matrix_free(m3);

  // non-symplectic input is rejected where a symplectic matrix is required
  const double diag[] = {2, 0, 0, 1};
  symgf_matrix* d = nullptr;
  REQUIRE(symgf_matrix_create(2, 2, diag, &d) == SYMGF_OK);
  CHECK(symgf_xmap(d, &out) == SYMGF_ERR_ARGUMENT);
  symgf_matrix_free(d);

  // the direct quantization path needs invertible B
  symgf_matrix* id2 = nullptr;
  const double e2[] = {1, 0, 0, 1};
  REQUIRE(symgf_matrix_create(2, 2, e2, &id2) == SYMGF_OK);
  symgf_genfun* gf = nullptr;
  REQUIRE(symgf_genfun_build(id2, &gf) == SYMGF_OK);
  int n = 0, k = 0, td = 0;
  CHECK(symgf_genfun_info(gf, &n, &k, &td) == SYMGF_OK);
  CHECK(td == 2);
  symgf_genfun_free(gf);
  symgf_matrix_free(id2);
}

TEST_CASE("check reports residuals") {
  symgf_matrix* j = nullptr;
  REQUIRE(symgf_standard_j(3, &j) == SYMGF_OK);
  char* report = nullptr;
  int ok = -1;
  REQUIRE(symgf_check(j, 1e-10, &report, &ok) == SYMGF_OK);
  CHECK(ok == 1);
  const std::string rep = take(report);
  CHECK(rep.find("\"symplectic\": true") != std::string::npos);
  symgf_matrix_free(j);

  const double diag[] = {2, 0, 0, 1};
  symgf_matrix* d = nullptr;
  REQUIRE(symgf_matrix_create(2, 2, diag, &d) == SYMGF_OK);
  ok = -1;
  REQUIRE(symgf_check(d, 1e-10, nullptr, &ok) == SYMGF_OK);
  CHECK(ok == 0);
  CHECK(symgf_check(d, -1.0, nullptr, &ok) == SYMGF_ERR_ARGUMENT);
  symgf_matrix_free(d);
}

TEST_CASE("xmap, quotient and kernel through the C surface") {
  symgf_matrix* h = nullptr;
  REQUIRE(symgf_sample_symplectic(2, 7, "singular_b", 1, &h) == SYMGF_OK);

  symgf_matrix* x = nullptr;
  REQUIRE(symgf_xmap(h, &x) == SYMGF_OK);
  symgf_matrix* xe = nullptr;
  REQUIRE(symgf_xmap_extended(h, &xe) == SYMGF_OK);
  std::vector<double> bx(16), bxe(16);
  CHECK(symgf_matrix_copy_data(x, bx.data(), bx.size()) == SYMGF_OK);
  CHECK(symgf_matrix_copy_data(xe, bxe.data(), bxe.size()) == SYMGF_OK);
  for (int i = 0; i < 16; ++i) CHECK(std::abs(bx[i] - bxe[i]) < 1e-12);

  symgf_matrix* y = nullptr;
  REQUIRE(symgf_ymap(h, &y) == SYMGF_OK);
  symgf_matrix* rep = nullptr;
  REQUIRE(symgf_canonical_rep(h, &rep) == SYMGF_OK);

  symgf_matrix* basis = nullptr;
  char* kernel_report = nullptr;
  REQUIRE(symgf_xmap_kernel(h, &basis, &kernel_report) == SYMGF_OK);
  const std::string krep = take(kernel_report);
  CHECK(krep.find("nullity") != std::string::npos);

  symgf_matrix_free(h);
  symgf_matrix_free(x);
  symgf_matrix_free(xe);
  symgf_matrix_free(y);
  symgf_matrix_free(rep);
  symgf_matrix_free(basis);
}

TEST_CASE("generating function lifecycle") {
  symgf_matrix* h = nullptr;
  REQUIRE(symgf_witness_hk(2, 1, &h) == SYMGF_OK);
  symgf_genfun* gf = nullptr;
  REQUIRE(symgf_genfun_build(h, &gf) == SYMGF_OK);
  int n = 0, k = 0, td = 0;
  REQUIRE(symgf_genfun_info(gf, &n, &k, &td) == SYMGF_OK);
  CHECK(n == 2);
  CHECK(k == 1);
  CHECK(td == 4);

  // evaluation: zero input gives zero; json round-trip preserves values
  std::vector<double> zre = {0.3, -0.2}, zim = {0.1, 0.4}, theta = {0.5, -0.1, 0.2, 0.7};
  double value = 0.0;
  REQUIRE(symgf_genfun_eval(gf, zre.data(), zim.data(), theta.data(), theta.size(), &value) ==
          SYMGF_OK);
  char* gtext = nullptr;
  REQUIRE(symgf_genfun_to_json(gf, &gtext) == SYMGF_OK);
  const std::string gjson = take(gtext);
  symgf_genfun* gf2 = nullptr;
  REQUIRE(symgf_genfun_parse_json(gjson.c_str(), &gf2) == SYMGF_OK);
  double value2 = 0.0;
  REQUIRE(symgf_genfun_eval(gf2, zre.data(), zim.data(), theta.data(), theta.size(), &value2) ==
          SYMGF_OK);
  CHECK(value == value2);

  // gradients come back finite and sized correctly
  std::vector<double> dzre(2), dzim(2), dtheta(4);
  REQUIRE(symgf_genfun_grad(gf, zre.data(), zim.data(), theta.data(), theta.size(), dzre.data(),
                            dzim.data(), dtheta.data()) == SYMGF_OK);

  // verification passes the contract
  char* vreport = nullptr;
  int pass = 0;
  REQUIRE(symgf_genfun_verify(h, 3, 10, &vreport, &pass) == SYMGF_OK);
  CHECK(pass == 1);
  CHECK(take(vreport).find("restriction_identity_residual") != std::string::npos);

  // theta length mismatch is rejected
  CHECK(symgf_genfun_eval(gf, zre.data(), zim.data(), theta.data(), 2, &value) ==
        SYMGF_ERR_ARGUMENT);

  symgf_genfun_free(gf);
  symgf_genfun_free(gf2);
  symgf_matrix_free(h);
}

TEST_CASE("explore and rank scan through the C surface") {
  char* report = nullptr;
  REQUIRE(symgf_explore("{\"n\":1,\"seed\":3,\"target\":\"planted\",\"restarts\":4,"
                        "\"budget\":300}",
                        &report) == SYMGF_OK);
  const std::string rep = take(report);
  CHECK(rep.find("best_residual") != std::string::npos);

  CHECK(symgf_explore("{\"n\":1", &report) == SYMGF_ERR_CONFIG);
  CHECK(symgf_explore("{\"n\":1,\"seed\":1}", &report) == SYMGF_ERR_CONFIG);

  char* scan = nullptr;
  REQUIRE(symgf_rank_scan(2, 30, 5, &scan) == SYMGF_OK);
  CHECK(take(scan).find("histogram") != std::string::npos);
}

TEST_CASE("gaussian states and the metaplectic action") {
  const double mre[] = {0.0};
  const double mim[] = {1.0};
  symgf_gaussian* u = nullptr;
  REQUIRE(symgf_gaussian_create(1, mre, mim, 1.0, 0.0, 1.0, &u) == SYMGF_OK);
  double nu = 0.0;
  REQUIRE(symgf_gaussian_norm(u, &nu) == SYMGF_OK);
  CHECK(std::abs(nu - std::pow(M_PI, 0.25)) < 1e-12);

  // invalid state: negative imaginary part
  const double bad_im[] = {-1.0};
  symgf_gaussian* bad = nullptr;
  CHECK(symgf_gaussian_create(1, mre, bad_im, 1.0, 0.0, 1.0, &bad) == SYMGF_ERR_ARGUMENT);

  symgf_matrix* j = nullptr;
  REQUIRE(symgf_standard_j(1, &j) == SYMGF_OK);
  symgf_gaussian* v = nullptr;
  REQUIRE(symgf_meta_quantize(j, u, 0, 0.0, &v) == SYMGF_OK);
  std::vector<double> vre(1), vim(1);
  double cre = 0.0, cim = 0.0;
  REQUIRE(symgf_gaussian_copy_data(v, vre.data(), vim.data(), &cre, &cim) == SYMGF_OK);
  CHECK(std::abs(vre[0]) < 1e-12);
  CHECK(std::abs(vim[0] - 1.0) < 1e-12);

  char* creport = nullptr;
  double disc = 1.0;
  REQUIRE(symgf_meta_compose_check(j, j, u, 1, &creport, &disc) == SYMGF_OK);
  CHECK(disc < 1e-6);
  CHECK(take(creport).find("kappa_re") != std::string::npos);

  // phase rank on a general-branch function; theta-free input is a
  // precondition error
  symgf_matrix* id = nullptr;
  const double e2[] = {1, 0, 0, 1};
  REQUIRE(symgf_matrix_create(2, 2, e2, &id) == SYMGF_OK);
  symgf_genfun* gf = nullptr;
  REQUIRE(symgf_genfun_build(id, &gf) == SYMGF_OK);
  char* preport = nullptr;
  int rank = 0, pass = 0;
  REQUIRE(symgf_meta_check_phase(gf, &preport, &rank, &pass) == SYMGF_OK);
  CHECK(rank == 2);
  CHECK(pass == 1);
  take(preport);
  symgf_genfun_free(gf);

  symgf_genfun* gf_free = nullptr;
  REQUIRE(symgf_genfun_build(j, &gf_free) == SYMGF_OK);
  CHECK(symgf_meta_check_phase(gf_free, &preport, &rank, &pass) == SYMGF_ERR_PRECONDITION);
  symgf_genfun_free(gf_free);

  symgf_gaussian_free(u);
  symgf_gaussian_free(v);
  symgf_matrix_free(j);
  symgf_matrix_free(id);
}

TEST_CASE("suite runner: filtered, scaled, byte-stable, override-sensitive") {
  char* r1 = nullptr;
  int pass1 = 0;
  REQUIRE(symgf_suite_run("{\"seed\":1,\"scale\":0.05,\"only\":[4,5,6]}", &r1, &pass1) ==
          SYMGF_OK);
  const std::string rep1 = take(r1);
  CHECK(pass1 == 1);

  char* r2 = nullptr;
  int pass2 = 0;
  REQUIRE(symgf_suite_run("{\"seed\":1,\"scale\":0.05,\"only\":[4,5,6]}", &r2, &pass2) ==
          SYMGF_OK);
  CHECK(rep1 == take(r2));

  // an unreachable tolerance flags the criterion and the aggregate
  char* r3 = nullptr;
  int pass3 = 1;
  REQUIRE(symgf_suite_run(
              "{\"seed\":1,\"scale\":0.05,\"only\":[2],\"tolerances\":{\"restriction_identity\":1e-14}}",
              &r3, &pass3) == SYMGF_OK);
  CHECK(pass3 == 0);
  CHECK(take(r3).find("\"pass\": false") != std::string::npos);

  CHECK(symgf_suite_run("{\"scale\":0}", &r3, &pass3) == SYMGF_ERR_CONFIG);
}
