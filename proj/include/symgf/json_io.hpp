#pragma once

#include "symgf/explorer.hpp"
#include "symgf/genfun.hpp"
#include "symgf/metaplectic.hpp"

#include <json.hpp>

#include <string>

namespace symgf {

using json = nlohmann::json;

// Matrix files: {"n": int, "rows": [[...]]} with 2n rows of 2n numbers.
json matrix_to_json(const Mat& m);
Mat matrix_from_json(const json& j);
Mat load_matrix(const std::string& path);
void save_matrix(const Mat& m, const std::string& path);

// Generating functions: {"n", "k", "Q", "basis": {"b": [...], "beta": [...]}}.
// Q is 2n x 2n for the theta-free branch and 4n x 4n for the general branch.
json genfun_to_json(const GeneratingFunction& gf);
GeneratingFunction genfun_from_json(const json& j);
GeneratingFunction load_genfun(const std::string& path);
void save_genfun(const GeneratingFunction& gf, const std::string& path);

// Gaussian states: {"n", "M_re", "M_im", "c_re", "c_im", "h"}.
json gaussian_to_json(const GaussianState& u);
GaussianState gaussian_from_json(const json& j);
GaussianState load_gaussian(const std::string& path);
void save_gaussian(const GaussianState& u, const std::string& path);

// Report shapes used by the CLI and the suite runner.
json search_report_to_json(const SearchReport& rep);
json sweep_to_json(const SweepResult& res);
json rank_scan_to_json(const RankScanResult& res);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace symgf
