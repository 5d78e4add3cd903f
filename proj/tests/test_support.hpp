#pragma once

#include <random>
#include <vector>

#include "nhqm/potential.hpp"
#include "nhqm/transfer_matrix.hpp"

namespace nhqm_test {

using nhqm::cdouble;

// Random compactly supported potential: up to 4 deltas and 3 non-overlapping
// segments inside [-3, 3], |z|, |v| <= 5, deltas never strictly inside a
// segment.
inline nhqm::Potential random_potential(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n_seg_dist(0, 3);
  std::uniform_int_distribution<int> n_del_dist(0, 4);
  std::uniform_real_distribution<double> pos(-3.0, 3.0);
  std::uniform_real_distribution<double> mag(0.05, 5.0);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);

  const auto random_complex = [&] { return std::polar(mag(rng), angle(rng)); };

  const int n_seg = n_seg_dist(rng);
  std::vector<double> edges;
  while (static_cast<int>(edges.size()) < 2 * n_seg) {
    const double x = pos(rng);
    bool ok = true;
    for (double e : edges) ok = ok && std::abs(x - e) > 0.1;
    if (ok) edges.push_back(x);
  }
  std::sort(edges.begin(), edges.end());
  std::vector<nhqm::SegmentTerm> segments;
  for (int i = 0; i < n_seg; ++i)
    segments.push_back({edges[2 * i], edges[2 * i + 1], random_complex()});

  const int n_del = n_del_dist(rng);
  std::vector<nhqm::DeltaTerm> deltas;
  while (static_cast<int>(deltas.size()) < n_del) {
    const double x = pos(rng);
    bool inside = false;
    for (const auto& s : segments) inside = inside || (x > s.a && x < s.b);
    if (!inside) deltas.push_back({x, random_complex()});
  }
  return nhqm::Potential(std::move(deltas), std::move(segments));
}

// Largest entrywise difference relative to the largest entry of a.
inline double relative_matrix_error(const nhqm::TransferMatrix& a, const nhqm::TransferMatrix& b) {
  const double scale =
      std::max({std::abs(a.m11), std::abs(a.m12), std::abs(a.m21), std::abs(a.m22), 1e-300});
  const double diff = std::max({std::abs(a.m11 - b.m11), std::abs(a.m12 - b.m12),
                                std::abs(a.m21 - b.m21), std::abs(a.m22 - b.m22)});
  return diff / scale;
}

// A-priori bound on ln ||M(k)||: sub-multiplicative product of per-feature
// norm bounds. Entries of size ||M|| limit how well det M = 1 can survive
// rounding to double (error ~ ||M||^2 eps), so absolute det assertions only
// make sense for draws with bounded opacity.
inline double composition_opacity(const nhqm::Potential& p, double k) {
  double total = 0.0;
  for (const auto& d : p.deltas()) total += std::log1p(std::abs(d.z) / k);
  for (const auto& s : p.segments()) {
    const cdouble kappa = std::sqrt(cdouble(k * k) - s.v);
    const double mag = std::max(std::abs(kappa), 1e-6);
    const double amp = 1.0 + std::max(mag, 1.0 / mag);
    total += std::abs(kappa.imag()) * (s.b - s.a) +
             std::log(2.0 * std::max(1.0, k) * std::max(1.0, 1.0 / k) * amp);
  }
  return total;
}

// Draw (potential, k) from the standard family, restricted to composed
// matrices guaranteed to stay below norm ~1e3.
inline std::pair<nhqm::Potential, double> random_bounded_pair(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> k_dist(0.1, 10.0);
  for (;;) {
    nhqm::Potential p = random_potential(rng);
    const double k = k_dist(rng);
    if (composition_opacity(p, k) <= std::log(1000.0)) return {std::move(p), k};
  }
}

}  // namespace nhqm_test
