#include "symgf/capi.h"

#include "symgf/acceptance.hpp"
#include "symgf/explorer.hpp"
#include "symgf/genfun.hpp"
#include "symgf/json_io.hpp"
#include "symgf/metaplectic.hpp"
#include "symgf/xmap.hpp"

#include <cstdlib>
#include <cstring>
#include <new>

using namespace symgf;

struct symgf_matrix {
  Mat m;
};
struct symgf_genfun {
  GeneratingFunction g;
};
struct symgf_gaussian {
  GaussianState s;
};

namespace {

thread_local std::string g_last_error;

symgf_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::argument: return SYMGF_ERR_ARGUMENT;
    case ErrorCode::dimension: return SYMGF_ERR_DIMENSION;
    case ErrorCode::singular: return SYMGF_ERR_SINGULAR;
    case ErrorCode::degenerate: return SYMGF_ERR_DEGENERATE;
    case ErrorCode::precondition: return SYMGF_ERR_PRECONDITION;
    case ErrorCode::caustic: return SYMGF_ERR_CAUSTIC;
    case ErrorCode::io: return SYMGF_ERR_IO;
    case ErrorCode::config: return SYMGF_ERR_CONFIG;
    case ErrorCode::internal: return SYMGF_ERR_INTERNAL;
  }
  return SYMGF_ERR_INTERNAL;
}

template <typename F>
symgf_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return SYMGF_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SYMGF_ERR_INTERNAL;
  }
}

void require(bool cond, const char* what) {
  if (!cond) throw Error(ErrorCode::argument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

SymplecticMatrix as_symplectic(const symgf_matrix* m, const char* who) {
  require(m != nullptr, who);
  return SymplecticMatrix(m->m);
}

}  // namespace

extern "C" {

const char* symgf_version(void) { return "1.0.0"; }

const char* symgf_last_error(void) { return g_last_error.c_str(); }

void symgf_string_free(char* s) { std::free(s); }
void symgf_matrix_free(symgf_matrix* m) { delete m; }
void symgf_genfun_free(symgf_genfun* g) { delete g; }
void symgf_gaussian_free(symgf_gaussian* g) { delete g; }

symgf_status symgf_matrix_create(int rows, int cols, const double* row_major, symgf_matrix** out) {
  return guarded([&] {
    require(out && row_major && rows > 0 && cols > 0, "symgf_matrix_create: bad arguments");
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = row_major[i * cols + j];
    require(m.allFinite(), "symgf_matrix_create: non-finite entries");
    *out = new symgf_matrix{std::move(m)};
  });
}

symgf_status symgf_matrix_shape(const symgf_matrix* m, int* rows, int* cols) {
  return guarded([&] {
    require(m && rows && cols, "symgf_matrix_shape: bad arguments");
    *rows = static_cast<int>(m->m.rows());
    *cols = static_cast<int>(m->m.cols());
  });
}

symgf_status symgf_matrix_get(const symgf_matrix* m, int i, int j, double* out) {
  return guarded([&] {
    require(m && out, "symgf_matrix_get: bad arguments");
    require(i >= 0 && i < m->m.rows() && j >= 0 && j < m->m.cols(),
            "symgf_matrix_get: index out of range");
    *out = m->m(i, j);
  });
}

symgf_status symgf_matrix_copy_data(const symgf_matrix* m, double* buffer, size_t buffer_len) {
  return guarded([&] {
    require(m && buffer, "symgf_matrix_copy_data: bad arguments");
    const size_t need = static_cast<size_t>(m->m.size());
    require(buffer_len >= need, "symgf_matrix_copy_data: buffer too small");
    for (Eigen::Index i = 0; i < m->m.rows(); ++i)
      for (Eigen::Index j = 0; j < m->m.cols(); ++j)
        buffer[i * m->m.cols() + j] = m->m(i, j);
  });
}

symgf_status symgf_matrix_parse_json(const char* text, symgf_matrix** out) {
  return guarded([&] {
    require(text && out, "symgf_matrix_parse_json: bad arguments");
    json j;
    try {
      j = json::parse(text);
    } catch (const std::exception& e) {
      throw Error(ErrorCode::io, e.what());
    }
    *out = new symgf_matrix{matrix_from_json(j)};
  });
}

symgf_status symgf_matrix_to_json(const symgf_matrix* m, char** out) {
  return guarded([&] {
    require(m && out, "symgf_matrix_to_json: bad arguments");
    *out = dup_string(matrix_to_json(m->m).dump(2) + "\n");
  });
}

symgf_status symgf_matrix_load_json(const char* path, symgf_matrix** out) {
  return guarded([&] {
    require(path && out, "symgf_matrix_load_json: bad arguments");
    *out = new symgf_matrix{load_matrix(path)};
  });
}

symgf_status symgf_matrix_save_json(const symgf_matrix* m, const char* path) {
  return guarded([&] {
    require(m && path, "symgf_matrix_save_json: bad arguments");
    save_matrix(m->m, path);
  });
}

symgf_status symgf_standard_j(int n, symgf_matrix** out) {
  return guarded([&] {
    require(out != nullptr, "symgf_standard_j: bad arguments");
    *out = new symgf_matrix{J_mat(n)};
  });
}

symgf_status symgf_sample_symplectic(int n, uint64_t seed, const char* kind, int param,
                                     symgf_matrix** out) {
  return guarded([&] {
    require(kind && out, "symgf_sample_symplectic: bad arguments");
    SampleSpec spec;
    const std::string k(kind);
    if (k == "generic") {
      spec = SampleSpec::generic();
    } else if (k == "singular_b") {
      spec = SampleSpec::singular_b(param);
    } else if (k == "witness") {
      spec = SampleSpec::witness(param);
    } else {
      throw Error(ErrorCode::argument, "symgf_sample_symplectic: unknown kind " + k);
    }
    *out = new symgf_matrix{sample_symplectic(n, seed, spec).mat()};
  });
}

symgf_status symgf_witness_hk(int n, int k, symgf_matrix** out) {
  return guarded([&] {
    require(out != nullptr, "symgf_witness_hk: bad arguments");
    *out = new symgf_matrix{witness_Hk(n, k).mat()};
  });
}

symgf_status symgf_check(const symgf_matrix* m, double tol, char** report_json,
                         int* is_symplectic_out) {
  return guarded([&] {
    require(m != nullptr, "symgf_check: bad arguments");
    require(tol > 0.0, "symgf_check: tolerance must be positive");
    const SymplecticReport rep = is_symplectic(m->m, tol);
    if (is_symplectic_out) *is_symplectic_out = rep.symplectic ? 1 : 0;
    if (report_json) {
      json j = {{"symplectic", rep.symplectic},
                {"tolerance", rep.tol},
                {"residual_form", rep.residual_form},
                {"residual_transpose", rep.residual_transpose},
                {"residual_inverse", rep.residual_inverse},
                {"residual_block_cols", rep.residual_block_cols},
                {"residual_block_rows", rep.residual_block_rows},
                {"equivalences_agree", rep.equivalences_agree}};
      *report_json = dup_string(j.dump(2) + "\n");
    }
  });
}

symgf_status symgf_sp_inverse(const symgf_matrix* h, symgf_matrix** out) {
  return guarded([&] {
    require(out != nullptr, "symgf_sp_inverse: bad arguments");
    *out = new symgf_matrix{sp_inverse(as_symplectic(h, "symgf_sp_inverse: null matrix")).mat()};
  });
}

symgf_status symgf_xmap(const symgf_matrix* h, symgf_matrix** out) {
  return guarded([&] {
    require(out != nullptr, "symgf_xmap: bad arguments");
    *out = new symgf_matrix{xmap(as_symplectic(h, "symgf_xmap: null matrix")).mat()};
  });
}

symgf_status symgf_xmap_extended(const symgf_matrix* m, symgf_matrix** out) {
  return guarded([&] {
    require(m && out, "symgf_xmap_extended: bad arguments");
    *out = new symgf_matrix{xmap_extended(m->m).mat()};
  });
}

symgf_status symgf_ymap(const symgf_matrix* h, symgf_matrix** out) {
  return guarded([&] {
    require(out != nullptr, "symgf_ymap: bad arguments");
    *out = new symgf_matrix{ymap(as_symplectic(h, "symgf_ymap: null matrix")).mat()};
  });
}

symgf_status symgf_canonical_rep(const symgf_matrix* m, symgf_matrix** out) {
  return guarded([&] {
    require(m && out, "symgf_canonical_rep: bad arguments");
    *out = new symgf_matrix{canonical_rep(m->m).assemble()};
  });
}

symgf_status symgf_xmap_kernel(const symgf_matrix* h, symgf_matrix** out_basis,
                               char** report_json) {
  return guarded([&] {
    require(out_basis != nullptr, "symgf_xmap_kernel: bad arguments");
    const SymplecticMatrix hh = as_symplectic(h, "symgf_xmap_kernel: null matrix");
    const Mat basis = xmap_kernel(hh);
    const int n2 = 2 * hh.n();
    const Mat h2pi = hh.mat() * hh.mat() + Mat::Identity(n2, n2);
    const Mat alt = nullspace_basis(h2pi);
    json j = {{"n", hh.n()},
              {"rank", svd_rank(xmap(hh).mat())},
              {"nullity", basis.cols()},
              {"nullity_h2_plus_i", alt.cols()},
              {"max_principal_angle",
               basis.cols() == alt.cols() ? max_principal_angle(basis, alt) : -1.0}};
    *out_basis = new symgf_matrix{basis};
    if (report_json) *report_json = dup_string(j.dump(2) + "\n");
  });
}

symgf_status symgf_genfun_build(const symgf_matrix* h, symgf_genfun** out) {
  return guarded([&] {
    require(out != nullptr, "symgf_genfun_build: bad arguments");
    *out = new symgf_genfun{build_genfun(as_symplectic(h, "symgf_genfun_build: null matrix"))};
  });
}

symgf_status symgf_genfun_build_general(const symgf_matrix* h, symgf_genfun** out) {
  return guarded([&] {
    require(out != nullptr, "symgf_genfun_build_general: bad arguments");
    *out = new symgf_genfun{
        build_genfun_general(as_symplectic(h, "symgf_genfun_build_general: null matrix"))};
  });
}

symgf_status symgf_genfun_info(const symgf_genfun* g, int* n, int* k, int* theta_dim) {
  return guarded([&] {
    require(g != nullptr, "symgf_genfun_info: bad arguments");
    if (n) *n = g->g.n;
    if (k) *k = g->g.k;
    if (theta_dim) *theta_dim = g->g.theta_dim;
  });
}

symgf_status symgf_genfun_parse_json(const char* text, symgf_genfun** out) {
  return guarded([&] {
    require(text && out, "symgf_genfun_parse_json: bad arguments");
    json j;
    try {
      j = json::parse(text);
    } catch (const std::exception& e) {
      throw Error(ErrorCode::io, e.what());
    }
    *out = new symgf_genfun{genfun_from_json(j)};
  });
}

symgf_status symgf_genfun_to_json(const symgf_genfun* g, char** out) {
  return guarded([&] {
    require(g && out, "symgf_genfun_to_json: bad arguments");
    *out = dup_string(genfun_to_json(g->g).dump(2) + "\n");
  });
}

symgf_status symgf_genfun_load_json(const char* path, symgf_genfun** out) {
  return guarded([&] {
    require(path && out, "symgf_genfun_load_json: bad arguments");
    *out = new symgf_genfun{load_genfun(path)};
  });
}

symgf_status symgf_genfun_save_json(const symgf_genfun* g, const char* path) {
  return guarded([&] {
    require(g && path, "symgf_genfun_save_json: bad arguments");
    save_genfun(g->g, path);
  });
}

symgf_status symgf_genfun_eval(const symgf_genfun* g, const double* z_re, const double* z_im,
                               const double* theta, size_t theta_len, double* out) {
  return guarded([&] {
    require(g && z_re && z_im && out, "symgf_genfun_eval: bad arguments");
    require(theta_len == static_cast<size_t>(g->g.theta_dim),
            "symgf_genfun_eval: theta length must equal theta_dim");
    const int n = g->g.n;
    CVec z(n);
    for (int i = 0; i < n; ++i) z(i) = cplx(z_re[i], z_im[i]);
    Vec th(g->g.theta_dim);
    for (int i = 0; i < g->g.theta_dim; ++i) th(i) = theta[i];
    *out = phi_eval(g->g, z, th);
  });
}

symgf_status symgf_genfun_grad(const symgf_genfun* g, const double* z_re, const double* z_im,
                               const double* theta, size_t theta_len, double* dz_re, double* dz_im,
                               double* dtheta) {
  return guarded([&] {
    require(g && z_re && z_im && dz_re && dz_im, "symgf_genfun_grad: bad arguments");
    require(theta_len == static_cast<size_t>(g->g.theta_dim),
            "symgf_genfun_grad: theta length must equal theta_dim");
    const int n = g->g.n;
    CVec z(n);
    for (int i = 0; i < n; ++i) z(i) = cplx(z_re[i], z_im[i]);
    Vec th(g->g.theta_dim);
    for (int i = 0; i < g->g.theta_dim; ++i) th(i) = theta[i];
    const PhiGrad gr = phi_grad(g->g, z, th);
    for (int i = 0; i < n; ++i) {
      dz_re[i] = gr.dz(i).real();
      dz_im[i] = gr.dz(i).imag();
    }
    if (g->g.theta_dim > 0) {
      require(dtheta != nullptr, "symgf_genfun_grad: dtheta required for the general branch");
      for (int i = 0; i < g->g.theta_dim; ++i) dtheta[i] = gr.dtheta(i);
    }
  });
}

symgf_status symgf_genfun_verify(const symgf_matrix* h, uint64_t seed, int trials,
                                 char** report_json, int* pass) {
  return guarded([&] {
    require(trials > 0, "symgf_genfun_verify: trials must be positive");
    const SymplecticMatrix hh = as_symplectic(h, "symgf_genfun_verify: null matrix");
    const GeneratingFunction gf = build_genfun(hh);
    const GraphVerify v = verify_genfun(gf, hh, seed, trials);
    const bool ok = v.worst() < 1e-8;
    if (pass) *pass = ok ? 1 : 0;
    if (report_json) {
      json j = {{"seed", seed},
                {"trials", trials},
                {"tolerance", 1e-8},
                {"branch", gf.theta_dim == 0 ? "invertible" : "general"},
                {"k", gf.k},
                {"graph_residual", v.graph_residual},
                {"reverse_inclusion_residual", v.reverse_residual},
                {"restriction_identity_residual", v.restriction_residual},
                {"pass", ok}};
      *report_json = dup_string(j.dump(2) + "\n");
    }
  });
}

symgf_status symgf_explore(const char* config_json, char** report_json) {
  return guarded([&] {
    require(config_json && report_json, "symgf_explore: bad arguments");
    json cfg;
    try {
      cfg = json::parse(config_json);
    } catch (const std::exception& e) {
      throw Error(ErrorCode::config, e.what());
    }
    const int n = cfg.value("n", 1);
    const uint64_t seed = cfg.value("seed", 1ull);
    const int restarts = cfg.value("restarts", 8);
    const int budget = cfg.value("budget", 500);
    if (n < 1 || restarts < 1 || budget < 1) {
      throw Error(ErrorCode::config, "symgf_explore: n, restarts, budget must be positive");
    }

    json out;
    out["config"] = {{"n", n}, {"seed", seed}, {"restarts", restarts}, {"budget", budget}};
    if (!cfg.contains("target")) {
      throw Error(ErrorCode::config, "symgf_explore: missing \"target\"");
    }

    if (cfg["target"].is_string() && cfg["target"] == "sweep") {
      std::vector<double> s_values;
      if (cfg.contains("s_values")) {
        for (const auto& v : cfg["s_values"]) s_values.push_back(v.get<double>());
      }
      const int targets = cfg.value("targets", 100);
      const SweepResult sweep =
          image_evidence_sweep(n, targets, seed, restarts, budget, s_values);
      out["sweep"] = sweep_to_json(sweep);
    } else {
      SearchProblem prob;
      prob.n = n;
      prob.seed = seed;
      prob.restarts = restarts;
      prob.budget = budget;
      prob.H0 = Mat::Identity(2 * n, 2 * n);
      if (cfg["target"].is_string() && cfg["target"] == "planted") {
        const SymplecticMatrix planted = sample_symplectic(n, seed, SampleSpec::generic());
        prob.S = xmap(planted).mat();
        out["planted"] = true;
      } else {
        prob.S = matrix_from_json(cfg["target"]);
        out["planted"] = false;
      }
      out["targets"] = json::array({json{{"S", matrix_to_json(prob.S)}}});
      const SearchReport rep = solve(prob);
      out["targets"][0].update(search_report_to_json(rep));
    }
    *report_json = dup_string(out.dump(2) + "\n");
  });
}

symgf_status symgf_rank_scan(int n, int samples, uint64_t seed, char** report_json) {
  return guarded([&] {
    require(report_json != nullptr, "symgf_rank_scan: bad arguments");
    *report_json = dup_string(rank_scan_to_json(rank_scan(n, samples, seed)).dump(2) + "\n");
  });
}

symgf_status symgf_gaussian_create(int n, const double* m_re, const double* m_im, double c_re,
                                   double c_im, double h, symgf_gaussian** out) {
  return guarded([&] {
    require(m_re && m_im && out, "symgf_gaussian_create: bad arguments");
    GaussianState s;
    s.n = n;
    s.M.resize(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s.M(i, j) = cplx(m_re[i * n + j], m_im[i * n + j]);
    s.c = cplx(c_re, c_im);
    s.h = h;
    s.validate();
    *out = new symgf_gaussian{std::move(s)};
  });
}

symgf_status symgf_gaussian_info(const symgf_gaussian* g, int* n, double* h) {
  return guarded([&] {
    require(g != nullptr, "symgf_gaussian_info: bad arguments");
    if (n) *n = g->s.n;
    if (h) *h = g->s.h;
  });
}

symgf_status symgf_gaussian_copy_data(const symgf_gaussian* g, double* m_re, double* m_im,
                                      double* c_re, double* c_im) {
  return guarded([&] {
    require(g && m_re && m_im && c_re && c_im, "symgf_gaussian_copy_data: bad arguments");
    const int n = g->s.n;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        m_re[i * n + j] = g->s.M(i, j).real();
        m_im[i * n + j] = g->s.M(i, j).imag();
      }
    *c_re = g->s.c.real();
    *c_im = g->s.c.imag();
  });
}

symgf_status symgf_gaussian_parse_json(const char* text, symgf_gaussian** out) {
  return guarded([&] {
    require(text && out, "symgf_gaussian_parse_json: bad arguments");
    json j;
    try {
      j = json::parse(text);
    } catch (const std::exception& e) {
      throw Error(ErrorCode::io, e.what());
    }
    *out = new symgf_gaussian{gaussian_from_json(j)};
  });
}

symgf_status symgf_gaussian_to_json(const symgf_gaussian* g, char** out) {
  return guarded([&] {
    require(g && out, "symgf_gaussian_to_json: bad arguments");
    *out = dup_string(gaussian_to_json(g->s).dump(2) + "\n");
  });
}

symgf_status symgf_gaussian_load_json(const char* path, symgf_gaussian** out) {
  return guarded([&] {
    require(path && out, "symgf_gaussian_load_json: bad arguments");
    *out = new symgf_gaussian{load_gaussian(path)};
  });
}

symgf_status symgf_gaussian_save_json(const symgf_gaussian* g, const char* path) {
  return guarded([&] {
    require(g && path, "symgf_gaussian_save_json: bad arguments");
    save_gaussian(g->s, path);
  });
}

symgf_status symgf_gaussian_norm(const symgf_gaussian* g, double* out) {
  return guarded([&] {
    require(g && out, "symgf_gaussian_norm: bad arguments");
    *out = state_norm(g->s);
  });
}

symgf_status symgf_meta_quantize(const symgf_matrix* h, const symgf_gaussian* u, int use_t_shift,
                                 double t_shift, symgf_gaussian** out) {
  return guarded([&] {
    require(u && out, "symgf_meta_quantize: bad arguments");
    const SymplecticMatrix hh = as_symplectic(h, "symgf_meta_quantize: null matrix");
    std::optional<double> shift;
    if (use_t_shift) shift = t_shift;
    *out = new symgf_gaussian{quantize_general(hh, u->s, shift)};
  });
}

symgf_status symgf_meta_compose_check(const symgf_matrix* h1, const symgf_matrix* h2,
                                      const symgf_gaussian* u, uint64_t seed, char** report_json,
                                      double* discrepancy) {
  return guarded([&] {
    require(u != nullptr, "symgf_meta_compose_check: bad arguments");
    const SymplecticMatrix a = as_symplectic(h1, "symgf_meta_compose_check: null matrix");
    const SymplecticMatrix b = as_symplectic(h2, "symgf_meta_compose_check: null matrix");
    const ComposeReport rep = composition_check(a, b, u->s, seed);
    if (discrepancy) *discrepancy = rep.discrepancy;
    if (report_json) {
      json j = {{"seed", rep.seed},
                {"discrepancy", rep.discrepancy},
                {"tolerance", 1e-6},
                {"kappa_re", rep.kappa.real()},
                {"kappa_im", rep.kappa.imag()},
                {"norm_composed", rep.norm_v1},
                {"norm_product", rep.norm_v2},
                {"pass", rep.discrepancy < 1e-6}};
      *report_json = dup_string(j.dump(2) + "\n");
    }
  });
}

symgf_status symgf_meta_check_phase(const symgf_genfun* g, char** report_json, int* rank,
                                    int* pass) {
  return guarded([&] {
    require(g != nullptr, "symgf_meta_check_phase: bad arguments");
    const PhaseRankResult pr = phase_nondegeneracy_check(g->g);
    if (rank) *rank = pr.rank;
    if (pass) *pass = pr.pass ? 1 : 0;
    if (report_json) {
      json j = {{"rank", pr.rank},
                {"expected", pr.expected},
                {"sigma_min", pr.sigma_min},
                {"sigma_max", pr.sigma_max},
                {"structure_ok", pr.structure_ok},
                {"pass", pr.pass}};
      *report_json = dup_string(j.dump(2) + "\n");
    }
  });
}

symgf_status symgf_suite_run(const char* spec_json, char** report_json, int* all_pass) {
  return guarded([&] {
    acceptance::SuiteSpec spec;
    bool timings = false;
    if (spec_json && *spec_json) {
      json j;
      try {
        j = json::parse(spec_json);
      } catch (const std::exception& e) {
        throw Error(ErrorCode::config, e.what());
      }
      spec.seed = j.value("seed", 1ull);
      spec.scale = j.value("scale", 1.0);
      if (spec.scale <= 0.0 || spec.scale > 1.0) {
        throw Error(ErrorCode::config, "symgf_suite_run: scale must be in (0, 1]");
      }
      if (j.contains("only")) {
        for (const auto& v : j["only"]) spec.only.push_back(v.get<int>());
      }
      if (j.contains("tolerances")) {
        for (const auto& [k, v] : j["tolerances"].items()) {
          const double tol = v.get<double>();
          if (tol <= 0.0) throw Error(ErrorCode::config, "symgf_suite_run: tolerances must be positive");
          spec.tol_overrides[k] = tol;
        }
      }
      timings = j.value("timings", false);
    }
    const acceptance::SuiteResult result = acceptance::run_suite(spec);
    if (all_pass) *all_pass = result.all_pass ? 1 : 0;
    if (report_json) *report_json = dup_string(acceptance::suite_report_json(result, timings));
  });
}

}  // extern "C"
