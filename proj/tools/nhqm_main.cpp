// Command-line front end: resonance scans, spectral-singularity searches and
// hermitization of finite-dimensional quasi-Hermitian matrices.
//
// Exit codes: 0 ok, 2 input parse/validation failure, 3 non-real spectrum,
// 4 exceptional point.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nhqm/errors.hpp"
#include "nhqm/io.hpp"
#include "nhqm/pseudo_hermitian.hpp"
#include "nhqm/spectral_singularity.hpp"
#include "nhqm/version.hpp"

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

double default_tolerance(double fallback) {
  if (const char* env = std::getenv("NHQM_TOLERANCE")) {
    char* end = nullptr;
    const double value = std::strtod(env, &end);
    if (end != env && value > 0.0) return value;
    std::cerr << "warning: ignoring invalid NHQM_TOLERANCE='" << env << "'\n";
  }
  return fallback;
}

struct ScanArgs {
  std::string potential_path, out_path;
  double k_min = 0.0, k_max = 0.0;
  std::size_t points = 0;
};

int run_scan(const ScanArgs& args) {
  const nhqm::Potential potential = nhqm::load_potential(args.potential_path);
  if (!(args.k_min > 0.0) || !(args.k_max > args.k_min))
    throw nhqm::InvalidInputError("scan: need 0 < k-min < k-max");
  if (args.points < 2) throw nhqm::InvalidInputError("scan: need at least 2 points");

  std::vector<double> grid(args.points);
  const double dk = (args.k_max - args.k_min) / static_cast<double>(args.points - 1);
  for (std::size_t i = 0; i < args.points; ++i)
    grid[i] = args.k_min + dk * static_cast<double>(i);

  nhqm::write_text_file(args.out_path, nhqm::resonance_csv(nhqm::resonance_curve(potential, grid)));
  nhqm::write_manifest({"scan",
                        {args.potential_path},
                        {{"k_min", args.k_min}, {"k_max", args.k_max}, {"points", args.points}},
                        args.out_path,
                        nhqm::kVersion,
                        utc_timestamp()});
  return 0;
}

struct FindArgs {
  std::string potential_path, out_path;
  double k_min = 0.0, k_max = 0.0;
  std::size_t points = 512;
  double tolerance = 0.0;
};

int run_find(const FindArgs& args) {
  const nhqm::Potential potential = nhqm::load_potential(args.potential_path);
  const auto found =
      nhqm::find_singularities(potential, args.k_min, args.k_max, args.points, args.tolerance);
  nhqm::write_text_file(args.out_path, nhqm::singularity_csv(found));
  nhqm::write_manifest({"find",
                        {args.potential_path},
                        {{"k_min", args.k_min},
                         {"k_max", args.k_max},
                         {"points", args.points},
                         {"tolerance", args.tolerance}},
                        args.out_path,
                        nhqm::kVersion,
                        utc_timestamp()});
  return 0;
}

struct HermitizeArgs {
  std::string matrix_path, out_path;
  double tolerance = 0.0;
};

int run_hermitize(const HermitizeArgs& args) {
  const Eigen::MatrixXcd h = nhqm::load_matrix(args.matrix_path);
  const nhqm::BiorthonormalSystem system = nhqm::biorthonormal_eig(h);
  const nhqm::MetricDecomposition decomposition =
      nhqm::metric_from_spectrum(system, args.tolerance);

  const Eigen::MatrixXcd& eta = decomposition.metric;
  const double h_norm = std::max(1e-300, h.norm());
  const double eta_norm = std::max(1e-300, eta.norm());

  nlohmann::json report;
  report["eigenvalues"] = nlohmann::json::array();
  for (Eigen::Index i = 0; i < system.dimension(); ++i)
    report["eigenvalues"].push_back(
        {system.eigenvalues(i).real(), system.eigenvalues(i).imag()});
  report["eta"] = nhqm::matrix_to_json(eta);
  report["sqrt_eta"] = nhqm::matrix_to_json(decomposition.sqrt_metric);
  report["h"] = nhqm::matrix_to_json(decomposition.hermitian_h);
  report["residuals"] = {
      {"pseudo_hermiticity", (h.adjoint() * eta - eta * h).norm() / (h_norm * eta_norm)},
      {"h_hermiticity", (decomposition.hermitian_h - decomposition.hermitian_h.adjoint()).norm() /
                            std::max(1e-300, decomposition.hermitian_h.norm())},
      {"sqrt_consistency",
       (decomposition.sqrt_metric * decomposition.sqrt_metric - eta).norm() / eta_norm}};

  nhqm::write_text_file(args.out_path, report.dump(2) + "\n");
  nhqm::write_manifest({"hermitize",
                        {args.matrix_path},
                        {{"tolerance", args.tolerance}},
                        args.out_path,
                        nhqm::kVersion,
                        utc_timestamp()});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scattering data, spectral singularities and metric operators for 1D complex "
               "potentials"};
  app.set_version_flag("--version", nhqm::kVersion);
  app.require_subcommand(1);

  ScanArgs scan;
  CLI::App* scan_cmd = app.add_subcommand("scan", "Resonance curve over a wavenumber grid (CSV)");
  scan_cmd->add_option("--potential", scan.potential_path, "Potential JSON file")->required();
  scan_cmd->add_option("--k-min", scan.k_min, "Lowest wavenumber")->required();
  scan_cmd->add_option("--k-max", scan.k_max, "Highest wavenumber")->required();
  scan_cmd->add_option("--points", scan.points, "Grid size")->required();
  scan_cmd->add_option("--out", scan.out_path, "Output CSV path")->required();

  FindArgs find;
  CLI::App* find_cmd = app.add_subcommand("find", "Locate spectral singularities (CSV)");
  find_cmd->add_option("--potential", find.potential_path, "Potential JSON file")->required();
  find_cmd->add_option("--k-min", find.k_min, "Lowest wavenumber")->required();
  find_cmd->add_option("--k-max", find.k_max, "Highest wavenumber")->required();
  find_cmd->add_option("--points", find.points, "Scan grid size");
  find_cmd->add_option("--tolerance", find.tolerance, "Residual acceptance on |m22|")
      ->default_val(default_tolerance(1e-8));
  find_cmd->add_option("--out", find.out_path, "Output CSV path")->required();

  HermitizeArgs hermitize;
  CLI::App* herm_cmd =
      app.add_subcommand("hermitize", "Metric operator and equivalent Hermitian matrix (JSON)");
  herm_cmd->add_option("--matrix", hermitize.matrix_path, "Matrix JSON file")->required();
  herm_cmd->add_option("--tolerance", hermitize.tolerance, "Spectrum reality tolerance")
      ->default_val(default_tolerance(1e-9));
  herm_cmd->add_option("--out", hermitize.out_path, "Output JSON path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (scan_cmd->parsed()) return run_scan(scan);
    if (find_cmd->parsed()) return run_find(find);
    return run_hermitize(hermitize);
  } catch (const nhqm::NoPositiveMetricError& e) {
    std::cerr << "error: " << e.what() << "\noffending eigenvalues:\n";
    for (const auto& lambda : e.eigenvalues())
      std::cerr << "  " << nhqm::format_g17(lambda.real()) << " + "
                << nhqm::format_g17(lambda.imag()) << "i\n";
    return 3;
  } catch (const nhqm::ExceptionalPointError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const nhqm::InvalidInputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
