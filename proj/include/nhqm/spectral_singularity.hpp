#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nhqm/potential.hpp"
#include "nhqm/transfer_matrix.hpp"

namespace nhqm {

// Real wavenumber k* at which |m22| vanishes: the Jost solutions become
// linearly dependent and all scattering amplitudes diverge.
struct SpectralSingularity {
  double k_star = 0.0;
  double e_star = 0.0;   // k_star^2
  double residual = 0.0; // |m22(k_star)|
  Potential parameters;  // snapshot of the potential it belongs to
  bool on_boundary = false;  // refined against a scan-range edge
};

// One point of a |T|^2, |R|^2 scan. epsilon = 1 - lambda/(2k) is filled only
// for the single imaginary delta z = i*lambda.
struct ResonancePoint {
  double k = 0.0;
  cdouble t;
  cdouble r_left;
  double t_abs2 = 0.0;
  double r_abs2 = 0.0;
  double deficit = 0.0;  // t_abs2 + r_abs2; +inf at an exact singularity
  std::optional<double> epsilon;
};

// Closed form for z*delta(x): m22 = 0 iff z = 2ik, so a real positive k*
// exists exactly when z is purely imaginary with Im z > 0, and k* = Im(z)/2.
// Purity test: |Re z| <= 1e-12 |z|.
std::optional<SpectralSingularity> delta_singularity(cdouble z);

// Scans |m22(k)| on a uniform grid, refines every strict local minimum by
// golden-section search (relative width 1e-12) and keeps those with
// |m22| <= residual_tol. Grid-edge minima are refined one-sided and flagged.
std::vector<SpectralSingularity> find_singularities(const Potential& potential, double k_min,
                                                    double k_max, std::size_t grid_points = 512,
                                                    double residual_tol = 1e-8);

// Scattering amplitudes over a wavenumber grid; exact singularities are
// emitted with infinite deficit rather than raised.
std::vector<ResonancePoint> resonance_curve(const Potential& potential,
                                            const std::vector<double>& k_values);

// find_singularities on the gain/loss barrier i*zeta on (-a,0), -i*zeta on (0,a).
std::vector<SpectralSingularity> pt_barrier_singularities(double zeta, double a, double k_min,
                                                          double k_max,
                                                          std::size_t grid_points = 512,
                                                          double residual_tol = 1e-8);

}  // namespace nhqm
