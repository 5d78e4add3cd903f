#include "nhqm/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "nhqm/errors.hpp"

namespace nhqm {

namespace {

cdouble complex_from_json(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InvalidInputError(field + " must be a [re, im] array");
  return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json complex_to_json(cdouble z) { return nlohmann::json::array({z.real(), z.imag()}); }

double number_field(const nlohmann::json& j, const char* name, const std::string& where) {
  if (!j.contains(name) || !j[name].is_number())
    throw InvalidInputError(where + "." + name + " must be a number");
  return j[name].get<double>();
}

}  // namespace

Potential potential_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidInputError("potential must be a JSON object");
  std::vector<DeltaTerm> deltas;
  std::vector<SegmentTerm> segments;
  if (j.contains("deltas")) {
    if (!j["deltas"].is_array()) throw InvalidInputError("deltas must be an array");
    for (std::size_t i = 0; i < j["deltas"].size(); ++i) {
      const auto& d = j["deltas"][i];
      const std::string where = "deltas[" + std::to_string(i) + "]";
      if (!d.is_object()) throw InvalidInputError(where + " must be an object");
      if (!d.contains("z")) throw InvalidInputError(where + ".z is missing");
      deltas.push_back({number_field(d, "x", where), complex_from_json(d["z"], where + ".z")});
    }
  }
  if (j.contains("segments")) {
    if (!j["segments"].is_array()) throw InvalidInputError("segments must be an array");
    for (std::size_t i = 0; i < j["segments"].size(); ++i) {
      const auto& s = j["segments"][i];
      const std::string where = "segments[" + std::to_string(i) + "]";
      if (!s.is_object()) throw InvalidInputError(where + " must be an object");
      if (!s.contains("v")) throw InvalidInputError(where + ".v is missing");
      segments.push_back({number_field(s, "a", where), number_field(s, "b", where),
                          complex_from_json(s["v"], where + ".v")});
    }
  }
  return Potential(std::move(deltas), std::move(segments));
}

nlohmann::json potential_to_json(const Potential& potential) {
  nlohmann::json j;
  j["deltas"] = nlohmann::json::array();
  for (const auto& d : potential.deltas())
    j["deltas"].push_back({{"x", d.x}, {"z", complex_to_json(d.z)}});
  j["segments"] = nlohmann::json::array();
  for (const auto& s : potential.segments())
    j["segments"].push_back({{"a", s.a}, {"b", s.b}, {"v", complex_to_json(s.v)}});
  return j;
}

Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
    throw InvalidInputError("matrix.n must be an integer");
  const auto n = j["n"].get<Eigen::Index>();
  if (n <= 0) throw InvalidInputError("matrix.n must be positive");
  if (!j.contains("rows") || !j["rows"].is_array() || j["rows"].size() != static_cast<std::size_t>(n))
    throw InvalidInputError("matrix.rows must be an array of n rows");
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = j["rows"][static_cast<std::size_t>(r)];
    const std::string where = "matrix.rows[" + std::to_string(r) + "]";
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
      throw InvalidInputError(where + " must have n entries");
    for (Eigen::Index c = 0; c < n; ++c)
      m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)],
                                  where + "[" + std::to_string(c) + "]");
  }
  return m;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m) {
  nlohmann::json j;
  j["n"] = m.rows();
  j["rows"] = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    j["rows"].push_back(std::move(row));
  }
  return j;
}

namespace {

nlohmann::json parse_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError(std::string(what) + " file not readable: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(std::string(what) + " file " + path + ": " + e.what());
  }
  return j;
}

}  // namespace

Potential load_potential(const std::string& path) {
  return potential_from_json(parse_file(path, "potential"));
}

Eigen::MatrixXcd load_matrix(const std::string& path) {
  return matrix_from_json(parse_file(path, "matrix"));
}

std::string format_g17(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string resonance_csv(const std::vector<ResonancePoint>& curve) {
  std::string out = "k,re_T,im_T,re_Rl,im_Rl,abs2_T,abs2_Rl,deficit,epsilon\n";
  for (const auto& p : curve) {
    out += format_g17(p.k) + ',' + format_g17(p.t.real()) + ',' + format_g17(p.t.imag()) + ',' +
           format_g17(p.r_left.real()) + ',' + format_g17(p.r_left.imag()) + ',' +
           format_g17(p.t_abs2) + ',' + format_g17(p.r_abs2) + ',' + format_g17(p.deficit) + ',';
    if (p.epsilon) out += format_g17(*p.epsilon);
    out += '\n';
  }
  return out;
}

std::string singularity_csv(const std::vector<SpectralSingularity>& singularities) {
  std::string out = "k_star,e_star,residual\n";
  for (const auto& s : singularities)
    out += format_g17(s.k_star) + ',' + format_g17(s.e_star) + ',' + format_g17(s.residual) + '\n';
  return out;
}

nlohmann::json RunManifest::to_json() const {
  return {{"command", command}, {"inputs", inputs},   {"parameters", parameters},
          {"output", output},   {"version", version}, {"timestamp", timestamp}};
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInputError("cannot open output file: " + path);
  out << contents;
  if (!out) throw InvalidInputError("failed writing output file: " + path);
}

void write_manifest(const RunManifest& manifest) {
  write_text_file(manifest.output + ".manifest.json", manifest.to_json().dump(2) + "\n");
}

}  // namespace nhqm
