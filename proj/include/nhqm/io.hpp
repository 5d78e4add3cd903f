#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include <json.hpp>

#include "nhqm/potential.hpp"
#include "nhqm/spectral_singularity.hpp"

namespace nhqm {

// Potential schema:
//   {"deltas":[{"x":0.0,"z":[re,im]}...], "segments":[{"a":-1.0,"b":0.0,"v":[re,im]}...]}
// Complex numbers are two-element arrays; absent lists mean empty.
Potential potential_from_json(const nlohmann::json& j);
nlohmann::json potential_to_json(const Potential& potential);

// Matrix schema: {"n":2, "rows":[[[re,im],...],...]}.
Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m);

Potential load_potential(const std::string& path);
Eigen::MatrixXcd load_matrix(const std::string& path);

// Fixed 17-significant-digit decimal formatting used by every CSV and
// report so identical inputs produce byte-identical files.
std::string format_g17(double value);

// Columns: k,re_T,im_T,re_Rl,im_Rl,abs2_T,abs2_Rl,deficit,epsilon
// (epsilon empty when undefined).
std::string resonance_csv(const std::vector<ResonancePoint>& curve);

// Columns: k_star,e_star,residual.
std::string singularity_csv(const std::vector<SpectralSingularity>& singularities);

// Reproducibility sidecar written next to every output file.
struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  nlohmann::json parameters;
  std::string output;
  std::string version;
  std::string timestamp;  // ISO 8601 UTC

  nlohmann::json to_json() const;
};

void write_text_file(const std::string& path, const std::string& contents);
void write_manifest(const RunManifest& manifest);  // to output + ".manifest.json"

}  // namespace nhqm
