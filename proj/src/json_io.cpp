#include "symgf/json_io.hpp"

#include <fstream>

namespace symgf {

namespace {

json rows_of(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_of(const json& rows, const char* who) {
  if (!rows.is_array() || rows.empty()) {
    throw Error(ErrorCode::io, std::string(who) + ": expected a non-empty array of rows");
  }
  const size_t nr = rows.size();
  const size_t nc = rows[0].size();
  Mat m(nr, nc);
  for (size_t i = 0; i < nr; ++i) {
    if (!rows[i].is_array() || rows[i].size() != nc) {
      throw Error(ErrorCode::io, std::string(who) + ": ragged rows");
    }
    for (size_t j = 0; j < nc; ++j) {
      if (!rows[i][j].is_number()) {
        throw Error(ErrorCode::io, std::string(who) + ": non-numeric entry");
      }
      m(i, j) = rows[i][j].get<double>();
    }
  }
  if (!m.allFinite()) throw Error(ErrorCode::io, std::string(who) + ": non-finite entry");
  return m;
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::io, path + ": " + e.what());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io, "cannot open " + path + " for writing");
  out << text;
  if (!out) throw Error(ErrorCode::io, "failed writing " + path);
}

json matrix_to_json(const Mat& m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0) {
    throw Error(ErrorCode::dimension, "matrix_to_json: 2n x 2n matrix required");
  }
  json j;
  j["n"] = static_cast<int>(m.rows()) / 2;
  j["rows"] = rows_of(m);
  return j;
}

Mat matrix_from_json(const json& j) {
  if (!j.contains("n") || !j.contains("rows")) {
    throw Error(ErrorCode::io, "matrix json: expected keys \"n\" and \"rows\"");
  }
  const int n = j["n"].get<int>();
  if (n < 1) throw Error(ErrorCode::io, "matrix json: n must be positive");
  const Mat m = mat_of(j["rows"], "matrix json");
  if (m.rows() != 2 * n || m.cols() != 2 * n) {
    throw Error(ErrorCode::io, "matrix json: rows must form a 2n x 2n matrix");
  }
  return m;
}

Mat load_matrix(const std::string& path) { return matrix_from_json(read_json_file(path)); }

void save_matrix(const Mat& m, const std::string& path) {
  write_text_file(path, matrix_to_json(m).dump(2) + "\n");
}

json genfun_to_json(const GeneratingFunction& gf) {
  json j;
  j["n"] = gf.n;
  j["k"] = gf.k;
  j["Q"] = rows_of(gf.Q);
  json basis;
  json b = json::array();
  for (Eigen::Index c = 0; c < gf.basis.b.cols(); ++c) {
    json v = json::array();
    for (Eigen::Index r = 0; r < gf.basis.b.rows(); ++r) v.push_back(gf.basis.b(r, c));
    b.push_back(std::move(v));
  }
  json beta = json::array();
  for (Eigen::Index c = 0; c < gf.basis.beta.cols(); ++c) {
    json v = json::array();
    for (Eigen::Index r = 0; r < gf.basis.beta.rows(); ++r) v.push_back(gf.basis.beta(r, c));
    beta.push_back(std::move(v));
  }
  basis["b"] = std::move(b);
  basis["beta"] = std::move(beta);
  j["basis"] = std::move(basis);
  return j;
}

GeneratingFunction genfun_from_json(const json& j) {
  for (const char* key : {"n", "k", "Q", "basis"}) {
    if (!j.contains(key)) {
      throw Error(ErrorCode::io, std::string("genfun json: missing key \"") + key + "\"");
    }
  }
  GeneratingFunction gf;
  gf.n = j["n"].get<int>();
  gf.k = j["k"].get<int>();
  if (gf.n < 1 || gf.k < 0 || gf.k > gf.n) throw Error(ErrorCode::io, "genfun json: bad n or k");
  gf.Q = mat_of(j["Q"], "genfun json Q");
  if (gf.Q.rows() != gf.Q.cols()) throw Error(ErrorCode::io, "genfun json: Q must be square");
  if (gf.Q.rows() == 2 * gf.n) {
    gf.theta_dim = 0;
  } else if (gf.Q.rows() == 4 * gf.n) {
    gf.theta_dim = 2 * gf.n;
  } else {
    throw Error(ErrorCode::io, "genfun json: Q must be 2n x 2n or 4n x 4n");
  }
  if ((gf.Q - gf.Q.transpose()).norm() > 1e-12 * std::max(1.0, gf.Q.norm())) {
    throw Error(ErrorCode::io, "genfun json: Q must be symmetric");
  }
  gf.Q = 0.5 * (gf.Q + gf.Q.transpose());

  const json& basis = j["basis"];
  gf.basis.n = gf.n;
  gf.basis.k = gf.k;
  const auto vecs_to_cols = [&](const json& arr, const char* who) {
    if (!arr.is_array()) throw Error(ErrorCode::io, std::string(who) + ": expected array");
    Mat m(gf.n, static_cast<Eigen::Index>(arr.size()));
    for (size_t c = 0; c < arr.size(); ++c) {
      if (!arr[c].is_array() || arr[c].size() != static_cast<size_t>(gf.n)) {
        throw Error(ErrorCode::io, std::string(who) + ": vectors must have length n");
      }
      for (int r = 0; r < gf.n; ++r) m(r, c) = arr[c][r].get<double>();
    }
    return m;
  };
  gf.basis.b = vecs_to_cols(basis.at("b"), "genfun json basis.b");
  gf.basis.beta = vecs_to_cols(basis.at("beta"), "genfun json basis.beta");
  return gf;
}

GeneratingFunction load_genfun(const std::string& path) {
  return genfun_from_json(read_json_file(path));
}

void save_genfun(const GeneratingFunction& gf, const std::string& path) {
  write_text_file(path, genfun_to_json(gf).dump(2) + "\n");
}

json gaussian_to_json(const GaussianState& u) {
  json j;
  j["n"] = u.n;
  j["M_re"] = rows_of(u.M.real());
  j["M_im"] = rows_of(u.M.imag());
  j["c_re"] = u.c.real();
  j["c_im"] = u.c.imag();
  j["h"] = u.h;
  return j;
}

GaussianState gaussian_from_json(const json& j) {
  for (const char* key : {"n", "M_re", "M_im", "c_re", "c_im", "h"}) {
    if (!j.contains(key)) {
      throw Error(ErrorCode::io, std::string("gaussian json: missing key \"") + key + "\"");
    }
  }
  GaussianState u;
  u.n = j["n"].get<int>();
  const Mat re = mat_of(j["M_re"], "gaussian json M_re");
  const Mat im = mat_of(j["M_im"], "gaussian json M_im");
  if (re.rows() != u.n || re.cols() != u.n || im.rows() != u.n || im.cols() != u.n) {
    throw Error(ErrorCode::io, "gaussian json: M blocks must be n x n");
  }
  u.M = re.cast<cplx>() + cplx(0.0, 1.0) * im.cast<cplx>();
  u.c = cplx(j["c_re"].get<double>(), j["c_im"].get<double>());
  u.h = j["h"].get<double>();
  u.validate();
  return u;
}

GaussianState load_gaussian(const std::string& path) {
  return gaussian_from_json(read_json_file(path));
}

void save_gaussian(const GaussianState& u, const std::string& path) {
  write_text_file(path, gaussian_to_json(u).dump(2) + "\n");
}

json search_report_to_json(const SearchReport& rep) {
  json j;
  j["best_residual"] = rep.best_residual;
  j["H_best"] = rep.best_H.size() ? matrix_to_json(rep.best_H) : json();
  j["iters_total"] = rep.iters_total;
  j["best_grad_norm"] = rep.best_grad_norm;
  json rs = json::array();
  for (const auto& r : rep.restarts) {
    rs.push_back({{"index", r.index},
                  {"base", r.base},
                  {"start_residual", r.start_residual},
                  {"final_residual", r.final_residual},
                  {"grad_norm", r.grad_norm},
                  {"iters", r.iters}});
  }
  j["restarts"] = std::move(rs);
  return j;
}

json sweep_to_json(const SweepResult& res) {
  json j;
  j["n"] = res.n;
  j["seed"] = res.seed;
  j["restarts"] = res.restarts;
  j["budget"] = res.budget;
  json targets = json::array();
  for (const auto& t : res.targets) {
    targets.push_back({{"index", t.index},
                       {"S", matrix_to_json(t.S)},
                       {"best_residual", t.best_residual},
                       {"H_best", matrix_to_json(t.best_H)},
                       {"iters", t.iters}});
  }
  j["targets"] = std::move(targets);
  j["aggregate"] = {{"min_residual", res.min_residual},
                    {"max_residual", res.max_residual},
                    {"mean_residual", res.mean_residual},
                    {"below_1e-6", res.below_1e6},
                    {"count", res.targets.size()}};
  return j;
}

json rank_scan_to_json(const RankScanResult& res) {
  json j;
  j["n"] = res.n;
  j["samples"] = res.samples;
  j["seed"] = res.seed;
  json hist = json::object();
  for (const auto& [rank, count] : res.histogram) hist[std::to_string(rank)] = count;
  j["histogram"] = std::move(hist);
  return j;
}

}  // namespace symgf
