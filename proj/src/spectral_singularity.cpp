#include "nhqm/spectral_singularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nhqm/errors.hpp"

namespace nhqm {

namespace {

double abs_m22(const Potential& potential, double k) { return std::abs(compose(potential, k).m22); }

// Golden-section minimization of |m22| on [a, b] to relative width 1e-12.
double golden_minimize(const Potential& potential, double a, double b) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = abs_m22(potential, x1);
  double f2 = abs_m22(potential, x2);
  const double width_goal = 1e-12 * std::max(1.0, std::abs(b));
  while (b - a > width_goal) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = abs_m22(potential, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = abs_m22(potential, x2);
    }
  }
  return 0.5 * (a + b);
}

std::optional<double> single_imaginary_delta_strength(const Potential& potential) {
  if (potential.segments().empty() && potential.deltas().size() == 1) {
    const cdouble z = potential.deltas()[0].z;
    if (std::abs(z) > 0.0 && std::abs(z.real()) <= 1e-12 * std::abs(z)) return z.imag();
  }
  return std::nullopt;
}

}  // namespace

std::optional<SpectralSingularity> delta_singularity(cdouble z) {
  if (z == cdouble(0.0)) throw InvalidInputError("delta_singularity: z must be nonzero");
  if (std::abs(z.real()) > 1e-12 * std::abs(z)) return std::nullopt;  // not purely imaginary
  if (!(z.imag() > 0.0)) return std::nullopt;  // k* = Im(z)/2 must be positive

  SpectralSingularity out;
  out.k_star = 0.5 * z.imag();
  out.e_star = out.k_star * out.k_star;
  out.residual = std::abs(delta_transfer(z, out.k_star).m22);
  out.parameters = Potential::single_delta(z);
  return out;
}

std::vector<SpectralSingularity> find_singularities(const Potential& potential, double k_min,
                                                    double k_max, std::size_t grid_points,
                                                    double residual_tol) {
  if (!(k_min > 0.0) || !(k_max > k_min) || !std::isfinite(k_max)) {
    std::ostringstream msg;
    msg << "find_singularities: need 0 < k_min < k_max, got (" << k_min << ", " << k_max << ")";
    throw InvalidInputError(msg.str());
  }
  if (grid_points < 16) throw InvalidInputError("find_singularities: grid_points must be >= 16");

  std::vector<double> grid(grid_points), values(grid_points);
  const double dk = (k_max - k_min) / static_cast<double>(grid_points - 1);
  for (std::size_t i = 0; i < grid_points; ++i) {
    grid[i] = k_min + dk * static_cast<double>(i);
    values[i] = abs_m22(potential, grid[i]);
  }

  std::vector<SpectralSingularity> found;
  const auto refine = [&](double lo, double hi, bool boundary) {
    const double k_star = golden_minimize(potential, lo, hi);
    const double residual = abs_m22(potential, k_star);
    if (residual > residual_tol) return;
    for (const auto& prior : found)
      if (std::abs(prior.k_star - k_star) <= 1e-9 * std::max(1.0, k_star)) return;
    SpectralSingularity s;
    s.k_star = k_star;
    s.e_star = k_star * k_star;
    s.residual = residual;
    s.parameters = potential;
    s.on_boundary = boundary;
    found.push_back(std::move(s));
  };

  if (values[0] < values[1]) refine(grid[0], grid[1], true);
  for (std::size_t i = 1; i + 1 < grid_points; ++i)
    if (values[i] < values[i - 1] && values[i] < values[i + 1])
      refine(grid[i - 1], grid[i + 1], false);
  if (values[grid_points - 1] < values[grid_points - 2])
    refine(grid[grid_points - 2], grid[grid_points - 1], true);

  std::sort(found.begin(), found.end(),
            [](const SpectralSingularity& l, const SpectralSingularity& r) {
              return l.k_star < r.k_star;
            });
  return found;
}

std::vector<ResonancePoint> resonance_curve(const Potential& potential,
                                            const std::vector<double>& k_values) {
  std::vector<ResonancePoint> curve;
  curve.reserve(k_values.size());
  const std::optional<double> lambda = single_imaginary_delta_strength(potential);
  for (double k : k_values) {
    const TransferMatrix m = compose(potential, k);  // validates k
    ResonancePoint p;
    p.k = k;
    if (lambda) p.epsilon = 1.0 - *lambda / (2.0 * k);
    if (std::abs(m.m22) < kM22UnderflowGuard) {
      const double inf = std::numeric_limits<double>::infinity();
      p.t = cdouble(inf, inf);
      p.r_left = cdouble(inf, inf);
      p.t_abs2 = inf;
      p.r_abs2 = inf;
      p.deficit = inf;
    } else {
      const ScatteringData data = scattering_data(m);
      p.t = data.t;
      p.r_left = data.r_left;
      p.t_abs2 = std::norm(data.t);
      p.r_abs2 = std::norm(data.r_left);
      p.deficit = p.t_abs2 + p.r_abs2;
    }
    curve.push_back(p);
  }
  return curve;
}

std::vector<SpectralSingularity> pt_barrier_singularities(double zeta, double a, double k_min,
                                                          double k_max, std::size_t grid_points,
                                                          double residual_tol) {
  if (!(a > 0.0)) throw InvalidInputError("pt_barrier_singularities: a must be positive");
  return find_singularities(Potential::pt_barrier(zeta, a), k_min, k_max, grid_points,
                            residual_tol);
}

}  // namespace nhqm
