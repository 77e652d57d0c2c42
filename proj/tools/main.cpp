// Command-line front end; all functionality is reached through the C API of
// the shared library (symgf/capi.h).

#include "symgf/capi.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;

struct MatrixDeleter {
  void operator()(symgf_matrix* m) const { symgf_matrix_free(m); }
};
struct GenfunDeleter {
  void operator()(symgf_genfun* g) const { symgf_genfun_free(g); }
};
struct GaussianDeleter {
  void operator()(symgf_gaussian* g) const { symgf_gaussian_free(g); }
};
using MatrixPtr = std::unique_ptr<symgf_matrix, MatrixDeleter>;
using GenfunPtr = std::unique_ptr<symgf_genfun, GenfunDeleter>;
using GaussianPtr = std::unique_ptr<symgf_gaussian, GaussianDeleter>;

struct CliError {
  int exit_code;
  std::string message;
};

int exit_code_of(symgf_status s) {
  switch (s) {
    case SYMGF_OK:
      return kExitOk;
    case SYMGF_ERR_ARGUMENT:
    case SYMGF_ERR_DIMENSION:
    case SYMGF_ERR_IO:
    case SYMGF_ERR_CONFIG:
      return kExitUsage;
    default:
      return kExitVerifyFail;
  }
}

void check_status(symgf_status s) {
  if (s != SYMGF_OK) throw CliError{exit_code_of(s), symgf_last_error()};
}

std::string take_string(char* s) {
  std::string out = s ? s : "";
  symgf_string_free(s);
  return out;
}

MatrixPtr load_matrix(const std::string& path) {
  symgf_matrix* m = nullptr;
  check_status(symgf_matrix_load_json(path.c_str(), &m));
  return MatrixPtr(m);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw CliError{kExitUsage, "cannot open " + out_path + " for writing"};
  out << text;
}

void save_or_print_matrix(symgf_matrix* m, const std::string& out_path) {
  char* text = nullptr;
  check_status(symgf_matrix_to_json(m, &text));
  emit(take_string(text), out_path);
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw CliError{kExitUsage, "cannot parse number '" + item + "'"};
    }
  }
  return out;
}

struct SuiteOptions {
  uint64_t seed = 1;
  double scale = 1.0;
  std::vector<int> only;
  std::vector<std::string> tols;  // key=value
  bool timings = false;
  std::string out_path;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symgf: generating functions, the skew-image map, and the metaplectic "
               "action for real linear symplectomorphisms"};
  app.require_subcommand(1);

  // ---- check ----
  auto* cmd_check = app.add_subcommand("check", "test a matrix for symplecticity");
  std::string check_path, check_format = "text";
  double check_tol = 1e-10;
  cmd_check->add_option("matrix", check_path, "matrix JSON file")->required();
  cmd_check->add_option("--tol", check_tol, "residual tolerance (default 1e-10)");
  cmd_check->add_option("--format", check_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  // ---- xmap ----
  auto* cmd_xmap = app.add_subcommand("xmap", "apply the skew-image map");
  std::string xmap_path, xmap_out;
  bool xmap_extended_flag = false;
  cmd_xmap->add_option("matrix", xmap_path, "matrix JSON file")->required();
  cmd_xmap->add_option("-o,--output", xmap_out, "output file (default stdout)");
  cmd_xmap->add_flag("--extended", xmap_extended_flag,
                     "use the extension J M + M^T J valid for any even-dimensional M");

  // ---- canonical-rep ----
  auto* cmd_rep = app.add_subcommand("canonical-rep",
                                     "unique coset representative modulo the symplectic algebra");
  std::string rep_path, rep_out;
  cmd_rep->add_option("matrix", rep_path, "matrix JSON file")->required();
  cmd_rep->add_option("-o,--output", rep_out, "output file (default stdout)");

  // ---- kernel ----
  auto* cmd_kernel = app.add_subcommand("kernel", "kernel of the skew image of a symplectic matrix");
  std::string kernel_path, kernel_format = "text";
  cmd_kernel->add_option("matrix", kernel_path, "matrix JSON file")->required();
  cmd_kernel->add_option("--format", kernel_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  // ---- witness ----
  auto* cmd_witness = app.add_subcommand("witness", "rank-2k witness matrix H_k");
  int wit_n = 1, wit_k = 0;
  std::string wit_out;
  cmd_witness->add_option("--n", wit_n, "half-dimension n")->required();
  cmd_witness->add_option("--k", wit_k, "witness index 0..n")->required();
  cmd_witness->add_option("-o,--output", wit_out, "output file (default stdout)");

  // ---- sample ----
  auto* cmd_sample = app.add_subcommand("sample", "deterministic symplectic sampler");
  int sam_n = 1, sam_param = 0;
  uint64_t sam_seed = 1;
  std::string sam_kind = "generic", sam_out;
  cmd_sample->add_option("--n", sam_n, "half-dimension n")->required();
  cmd_sample->add_option("--seed", sam_seed, "seed (default 1)");
  cmd_sample->add_option("--kind", sam_kind, "generic | singular_b | witness")
      ->check(CLI::IsMember({"generic", "singular_b", "witness"}));
  cmd_sample->add_option("--param", sam_param, "rank r (singular_b) or index k (witness)");
  cmd_sample->add_option("-o,--output", sam_out, "output file (default stdout)");

  // ---- genfun ----
  auto* cmd_genfun = app.add_subcommand("genfun", "generating function construction");
  cmd_genfun->require_subcommand(1);
  auto* gf_build = cmd_genfun->add_subcommand("build", "construct Phi for a symplectic matrix");
  std::string gfb_path, gfb_out;
  bool gfb_general = false;
  gf_build->add_option("matrix", gfb_path, "matrix JSON file")->required();
  gf_build->add_option("-o,--output", gfb_out, "output Phi JSON file")->required();
  gf_build->add_flag("--general", gfb_general, "force the auxiliary-parameter construction");

  auto* gf_verify = cmd_genfun->add_subcommand("verify", "graph and restriction identities");
  std::string gfv_path;
  uint64_t gfv_seed = 1;
  int gfv_trials = 20;
  double gfv_tol = 1e-8;
  gf_verify->add_option("matrix", gfv_path, "matrix JSON file")->required();
  gf_verify->add_option("--seed", gfv_seed, "seed (default 1)");
  gf_verify->add_option("--trials", gfv_trials, "sample count (default 20)");
  gf_verify->add_option("--tol", gfv_tol, "residual contract (default 1e-8)");

  auto* gf_eval = cmd_genfun->add_subcommand("eval", "evaluate Phi and its gradient");
  std::string gfe_path, gfe_zre, gfe_zim, gfe_theta;
  gf_eval->add_option("phi", gfe_path, "Phi JSON file")->required();
  gf_eval->add_option("--z-re", gfe_zre, "comma-separated Re z")->required();
  gf_eval->add_option("--z-im", gfe_zim, "comma-separated Im z")->required();
  gf_eval->add_option("--theta", gfe_theta, "comma-separated theta (general branch)");

  // ---- explore ----
  auto* cmd_explore = app.add_subcommand("explore", "descent search for X(H) = S");
  int ex_n = 1, ex_restarts = 8, ex_budget = 500, ex_sweep = 0;
  uint64_t ex_seed = 1;
  std::string ex_target, ex_svalues, ex_out;
  bool ex_planted = false;
  cmd_explore->add_option("--n", ex_n, "half-dimension n")->required();
  cmd_explore->add_option("--target", ex_target, "target skew matrix JSON file");
  cmd_explore->add_flag("--target-planted", ex_planted, "use a planted feasible target");
  cmd_explore->add_option("--sweep", ex_sweep, "run a sweep over this many random targets");
  cmd_explore->add_option("--s-values", ex_svalues, "n=1 only: comma-separated s for S = s J");
  cmd_explore->add_option("--seed", ex_seed, "seed (default 1)");
  cmd_explore->add_option("--restarts", ex_restarts, "restart count (default 8)");
  cmd_explore->add_option("--budget", ex_budget, "iterations per restart (default 500)");
  cmd_explore->add_option("-o,--output", ex_out, "output file (default stdout)");

  // ---- rank-scan ----
  auto* cmd_rank = app.add_subcommand("rank-scan", "histogram of rank of the skew image");
  int rs_n = 1, rs_samples = 100;
  uint64_t rs_seed = 1;
  std::string rs_format = "text", rs_out;
  cmd_rank->add_option("--n", rs_n, "half-dimension n")->required();
  cmd_rank->add_option("--samples", rs_samples, "sample count (default 100)");
  cmd_rank->add_option("--seed", rs_seed, "seed (default 1)");
  cmd_rank->add_option("--format", rs_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd_rank->add_option("-o,--output", rs_out, "output file (default stdout)");

  // ---- meta ----
  auto* cmd_meta = app.add_subcommand("meta", "metaplectic action on Gaussian states");
  cmd_meta->require_subcommand(1);
  auto* meta_q = cmd_meta->add_subcommand("quantize", "apply mu(H) to a Gaussian state");
  std::string mq_h, mq_gauss, mq_out;
  double mq_hbar = 0.0, mq_tshift = 0.0;
  bool mq_has_tshift = false;
  meta_q->add_option("matrix", mq_h, "matrix JSON file")->required();
  meta_q->add_option("--gaussian", mq_gauss, "Gaussian state JSON file")->required();
  meta_q->add_option("--h", mq_hbar, "override the state's semiclassical parameter");
  meta_q->add_option("--t-shift", mq_tshift, "explicit factorization angle")
      ->each([&](const std::string&) { mq_has_tshift = true; });
  meta_q->add_option("-o,--output", mq_out, "output file (default stdout)");

  auto* meta_c = cmd_meta->add_subcommand("compose", "composition up to a unimodular scalar");
  std::string mc_h1, mc_h2, mc_gauss;
  uint64_t mc_seed = 1;
  meta_c->add_option("matrix1", mc_h1, "first matrix JSON file")->required();
  meta_c->add_option("matrix2", mc_h2, "second matrix JSON file")->required();
  meta_c->add_option("--gaussian", mc_gauss, "state file (default: standard Gaussian)");
  meta_c->add_option("--seed", mc_seed, "seed recorded in the report");

  auto* meta_p = cmd_meta->add_subcommand("check-phase", "nondegenerate-phase rank test");
  std::string mp_phi;
  meta_p->add_option("phi", mp_phi, "Phi JSON file")->required();

  // ---- suite ----
  auto* cmd_suite = app.add_subcommand("suite", "run the acceptance suite");
  SuiteOptions suite;
  cmd_suite->add_option("--seed", suite.seed, "seed (default 1)");
  cmd_suite->add_option("--scale", suite.scale, "trial-count multiplier in (0,1]");
  cmd_suite->add_option("--only", suite.only, "criterion ids to run");
  cmd_suite->add_option("--tol", suite.tols, "tolerance override key=value (repeatable)");
  cmd_suite->add_flag("--timings", suite.timings, "include wall times (breaks byte-stability)");
  cmd_suite->add_option("-o,--output", suite.out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*cmd_check) {
      MatrixPtr m = load_matrix(check_path);
      char* report = nullptr;
      int ok = 0;
      check_status(symgf_check(m.get(), check_tol, &report, &ok));
      const std::string rep = take_string(report);
      if (check_format == "json") {
        std::cout << rep;
      } else {
        const json j = json::parse(rep);
        std::cout << "symplectic: " << (ok ? "true" : "false") << "\n"
                  << "tolerance:  " << check_tol << "\n"
                  << "residual:   " << j["residual_form"].get<double>() << "\n"
                  << "equivalences agree: " << (j["equivalences_agree"].get<bool>() ? "yes" : "no")
                  << "\n";
      }
      return ok ? kExitOk : kExitVerifyFail;
    }

    if (*cmd_xmap) {
      MatrixPtr m = load_matrix(xmap_path);
      symgf_matrix* out = nullptr;
      check_status(xmap_extended_flag ? symgf_xmap_extended(m.get(), &out)
                                      : symgf_xmap(m.get(), &out));
      MatrixPtr holder(out);
      save_or_print_matrix(out, xmap_out);
      return kExitOk;
    }

    if (*cmd_rep) {
      MatrixPtr m = load_matrix(rep_path);
      symgf_matrix* out = nullptr;
      check_status(symgf_canonical_rep(m.get(), &out));
      MatrixPtr holder(out);
      save_or_print_matrix(out, rep_out);
      return kExitOk;
    }

    if (*cmd_kernel) {
      MatrixPtr m = load_matrix(kernel_path);
      symgf_matrix* basis = nullptr;
      char* report = nullptr;
      check_status(symgf_xmap_kernel(m.get(), &basis, &report));
      MatrixPtr holder(basis);
      const json j = json::parse(take_string(report));
      if (kernel_format == "json") {
        json out = j;
        int rows = 0, cols = 0;
        check_status(symgf_matrix_shape(basis, &rows, &cols));
        json vecs = json::array();
        for (int c = 0; c < cols; ++c) {
          json v = json::array();
          for (int r = 0; r < rows; ++r) {
            double x = 0;
            check_status(symgf_matrix_get(basis, r, c, &x));
            v.push_back(x);
          }
          vecs.push_back(std::move(v));
        }
        out["basis"] = std::move(vecs);
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << "n:        " << j["n"].get<int>() << "\n"
                  << "rank:     " << j["rank"].get<int>() << "\n"
                  << "nullity:  " << j["nullity"].get<int>() << "\n"
                  << "nullity of H^2+I: " << j["nullity_h2_plus_i"].get<int>() << "\n"
                  << "max principal angle: " << j["max_principal_angle"].get<double>() << "\n";
        int rows = 0, cols = 0;
        check_status(symgf_matrix_shape(basis, &rows, &cols));
        for (int c = 0; c < cols; ++c) {
          std::cout << "v" << c << ":";
          for (int r = 0; r < rows; ++r) {
            double x = 0;
            check_status(symgf_matrix_get(basis, r, c, &x));
            std::cout << " " << x;
          }
          std::cout << "\n";
        }
      }
      return kExitOk;
    }

    if (*cmd_witness) {
      symgf_matrix* out = nullptr;
      check_status(symgf_witness_hk(wit_n, wit_k, &out));
      MatrixPtr holder(out);
      save_or_print_matrix(out, wit_out);
      return kExitOk;
    }

    if (*cmd_sample) {
      symgf_matrix* out = nullptr;
      check_status(symgf_sample_symplectic(sam_n, sam_seed, sam_kind.c_str(), sam_param, &out));
      MatrixPtr holder(out);
      save_or_print_matrix(out, sam_out);
      return kExitOk;
    }

    if (*gf_build) {
      MatrixPtr m = load_matrix(gfb_path);
      symgf_genfun* gf = nullptr;
      check_status(gfb_general ? symgf_genfun_build_general(m.get(), &gf)
                               : symgf_genfun_build(m.get(), &gf));
      GenfunPtr holder(gf);
      check_status(symgf_genfun_save_json(gf, gfb_out.c_str()));
      int n = 0, k = 0, td = 0;
      check_status(symgf_genfun_info(gf, &n, &k, &td));
      std::cout << "built Phi: n=" << n << " k=" << k
                << " branch=" << (td == 0 ? "invertible" : "general") << " -> " << gfb_out << "\n";
      return kExitOk;
    }

    if (*gf_verify) {
      MatrixPtr m = load_matrix(gfv_path);
      char* report = nullptr;
      int pass = 0;
      check_status(symgf_genfun_verify(m.get(), gfv_seed, gfv_trials, &report, &pass));
      const json j = json::parse(take_string(report));
      const double worst = std::max({j["graph_residual"].get<double>(),
                                     j["reverse_inclusion_residual"].get<double>(),
                                     j["restriction_identity_residual"].get<double>()});
      std::cout << "seed: " << gfv_seed << "  trials: " << gfv_trials << "  tolerance: " << gfv_tol
                << "\n"
                << "graph residual:                 " << j["graph_residual"].get<double>() << "\n"
                << "reverse inclusion residual:     "
                << j["reverse_inclusion_residual"].get<double>() << "\n"
                << "restriction identity residual:  "
                << j["restriction_identity_residual"].get<double>() << "\n"
                << "worst: " << worst << " -> " << (worst < gfv_tol ? "pass" : "FAIL") << "\n";
      return worst < gfv_tol ? kExitOk : kExitVerifyFail;
    }

    if (*gf_eval) {
      symgf_genfun* gf = nullptr;
      check_status(symgf_genfun_load_json(gfe_path.c_str(), &gf));
      GenfunPtr holder(gf);
      int n = 0, k = 0, td = 0;
      check_status(symgf_genfun_info(gf, &n, &k, &td));
      const auto zre = parse_list(gfe_zre);
      const auto zim = parse_list(gfe_zim);
      const auto theta = parse_list(gfe_theta);
      if (static_cast<int>(zre.size()) != n || static_cast<int>(zim.size()) != n) {
        throw CliError{kExitUsage, "z must have n = " + std::to_string(n) + " components"};
      }
      if (static_cast<int>(theta.size()) != td) {
        throw CliError{kExitUsage, "theta must have " + std::to_string(td) + " components"};
      }
      double value = 0.0;
      check_status(symgf_genfun_eval(gf, zre.data(), zim.data(), theta.data(), theta.size(),
                                     &value));
      std::vector<double> dzre(n), dzim(n), dtheta(std::max(1, td));
      check_status(symgf_genfun_grad(gf, zre.data(), zim.data(), theta.data(), theta.size(),
                                     dzre.data(), dzim.data(), dtheta.data()));
      json out = {{"value", value}, {"dz_re", dzre}, {"dz_im", dzim}};
      if (td > 0) out["dtheta"] = std::vector<double>(dtheta.begin(), dtheta.begin() + td);
      std::cout << out.dump(2) << "\n";
      return kExitOk;
    }

    if (*cmd_explore) {
      json cfg = {{"n", ex_n}, {"seed", ex_seed}, {"restarts", ex_restarts}, {"budget", ex_budget}};
      const int modes = (ex_target.empty() ? 0 : 1) + (ex_planted ? 1 : 0) +
                        ((ex_sweep > 0 || !ex_svalues.empty()) ? 1 : 0);
      if (modes != 1) {
        throw CliError{kExitUsage,
                       "choose exactly one of --target, --target-planted, --sweep/--s-values"};
      }
      if (!ex_target.empty()) {
        std::ifstream in(ex_target);
        if (!in) throw CliError{kExitUsage, "cannot open " + ex_target};
        json t;
        in >> t;
        cfg["target"] = t;
      } else if (ex_planted) {
        cfg["target"] = "planted";
      } else {
        cfg["target"] = "sweep";
        cfg["targets"] = ex_sweep > 0 ? ex_sweep : 0;
        if (!ex_svalues.empty()) cfg["s_values"] = parse_list(ex_svalues);
      }
      char* report = nullptr;
      check_status(symgf_explore(cfg.dump().c_str(), &report));
      const std::string text = take_string(report);
      emit(text, ex_out);
      const json j = json::parse(text);
      if (ex_planted) {
        const double res = j["targets"][0]["best_residual"].get<double>();
        std::cerr << "planted target residual: " << res << "\n";
        return res < 1e-6 ? kExitOk : kExitVerifyFail;
      }
      return kExitOk;
    }

    if (*cmd_rank) {
      char* report = nullptr;
      check_status(symgf_rank_scan(rs_n, rs_samples, rs_seed, &report));
      const std::string text = take_string(report);
      if (rs_format == "json") {
        emit(text, rs_out);
      } else {
        const json j = json::parse(text);
        std::ostringstream os;
        os << "rank histogram (n=" << rs_n << ", samples=" << rs_samples << ", seed=" << rs_seed
           << ")\n";
        os << "rank  count\n";
        for (const auto& [rank, count] : j["histogram"].items()) {
          os << rank << "     " << count.get<int>() << "\n";
        }
        emit(os.str(), rs_out);
      }
      return kExitOk;
    }

    if (*meta_q) {
      MatrixPtr m = load_matrix(mq_h);
      symgf_gaussian* u = nullptr;
      check_status(symgf_gaussian_load_json(mq_gauss.c_str(), &u));
      GaussianPtr uh(u);
      if (mq_hbar > 0.0) {  // rebuild the state with the overridden parameter
        int n = 0;
        double h0 = 0.0;
        check_status(symgf_gaussian_info(u, &n, &h0));
        std::vector<double> mre(n * n), mim(n * n);
        double cre = 0.0, cim = 0.0;
        check_status(symgf_gaussian_copy_data(u, mre.data(), mim.data(), &cre, &cim));
        symgf_gaussian* u2 = nullptr;
        check_status(symgf_gaussian_create(n, mre.data(), mim.data(), cre, cim, mq_hbar, &u2));
        uh.reset(u2);
      }
      symgf_gaussian* v = nullptr;
      check_status(symgf_meta_quantize(m.get(), uh.get(), mq_has_tshift ? 1 : 0, mq_tshift, &v));
      GaussianPtr vh(v);
      char* text = nullptr;
      check_status(symgf_gaussian_to_json(v, &text));
      emit(take_string(text), mq_out);
      return kExitOk;
    }

    if (*meta_c) {
      MatrixPtr h1 = load_matrix(mc_h1);
      MatrixPtr h2 = load_matrix(mc_h2);
      GaussianPtr u;
      if (mc_gauss.empty()) {
        int rows = 0, cols = 0;
        check_status(symgf_matrix_shape(h1.get(), &rows, &cols));
        const int n = rows / 2;
        std::vector<double> mre(n * n, 0.0), mim(n * n, 0.0);
        for (int i = 0; i < n; ++i) mim[i * n + i] = 1.0;
        symgf_gaussian* g = nullptr;
        check_status(symgf_gaussian_create(n, mre.data(), mim.data(), 1.0, 0.0, 1.0, &g));
        u.reset(g);
      } else {
        symgf_gaussian* g = nullptr;
        check_status(symgf_gaussian_load_json(mc_gauss.c_str(), &g));
        u.reset(g);
      }
      char* report = nullptr;
      double disc = 0.0;
      check_status(symgf_meta_compose_check(h1.get(), h2.get(), u.get(), mc_seed, &report, &disc));
      std::cout << take_string(report);
      return disc < 1e-6 ? kExitOk : kExitVerifyFail;
    }

    if (*meta_p) {
      symgf_genfun* gf = nullptr;
      check_status(symgf_genfun_load_json(mp_phi.c_str(), &gf));
      GenfunPtr holder(gf);
      char* report = nullptr;
      int rank = 0, pass = 0;
      check_status(symgf_meta_check_phase(gf, &report, &rank, &pass));
      std::cout << take_string(report);
      return pass ? kExitOk : kExitVerifyFail;
    }

    if (*cmd_suite) {
      json spec = {{"seed", suite.seed}, {"scale", suite.scale}, {"timings", suite.timings}};
      if (!suite.only.empty()) spec["only"] = suite.only;
      if (!suite.tols.empty()) {
        json tols = json::object();
        for (const auto& kv : suite.tols) {
          const auto eq = kv.find('=');
          if (eq == std::string::npos) {
            throw CliError{kExitUsage, "tolerance override must be key=value: " + kv};
          }
          try {
            tols[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
          } catch (const std::exception&) {
            throw CliError{kExitUsage, "cannot parse tolerance value in: " + kv};
          }
        }
        spec["tolerances"] = std::move(tols);
      }
      char* report = nullptr;
      int all_pass = 0;
      check_status(symgf_suite_run(spec.dump().c_str(), &report, &all_pass));
      emit(take_string(report), suite.out_path);
      return all_pass ? kExitOk : kExitVerifyFail;
    }

    std::cerr << "unknown subcommand\n";
    return kExitUsage;
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFail;
  }
}
