#include "nhqm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "nhqm/errors.hpp"

namespace nhqm {

namespace {

struct WaveState {
  cdouble psi;
  cdouble dpsi;
};

WaveState rhs(const WaveState& y, cdouble q) { return {y.dpsi, q * y.psi}; }

WaveState axpy(const WaveState& y, double h, const WaveState& d) {
  return {y.psi + h * d.psi, y.dpsi + h * d.dpsi};
}

// One Cash-Karp 4(5) step for psi'' = q psi; returns the embedded error
// estimate and advances y with the fifth-order solution.
double cash_karp_step(WaveState& y, double h, cdouble q) {
  const WaveState k1 = rhs(y, q);
  WaveState t = axpy(y, h * (1.0 / 5.0), k1);
  const WaveState k2 = rhs(t, q);
  t = {y.psi + h * (3.0 / 40.0 * k1.psi + 9.0 / 40.0 * k2.psi),
       y.dpsi + h * (3.0 / 40.0 * k1.dpsi + 9.0 / 40.0 * k2.dpsi)};
  const WaveState k3 = rhs(t, q);
  t = {y.psi + h * (3.0 / 10.0 * k1.psi - 9.0 / 10.0 * k2.psi + 6.0 / 5.0 * k3.psi),
       y.dpsi + h * (3.0 / 10.0 * k1.dpsi - 9.0 / 10.0 * k2.dpsi + 6.0 / 5.0 * k3.dpsi)};
  const WaveState k4 = rhs(t, q);
  t = {y.psi + h * (-11.0 / 54.0 * k1.psi + 5.0 / 2.0 * k2.psi - 70.0 / 27.0 * k3.psi +
                    35.0 / 27.0 * k4.psi),
       y.dpsi + h * (-11.0 / 54.0 * k1.dpsi + 5.0 / 2.0 * k2.dpsi - 70.0 / 27.0 * k3.dpsi +
                     35.0 / 27.0 * k4.dpsi)};
  const WaveState k5 = rhs(t, q);
  t = {y.psi + h * (1631.0 / 55296.0 * k1.psi + 175.0 / 512.0 * k2.psi +
                    575.0 / 13824.0 * k3.psi + 44275.0 / 110592.0 * k4.psi +
                    253.0 / 4096.0 * k5.psi),
       y.dpsi + h * (1631.0 / 55296.0 * k1.dpsi + 175.0 / 512.0 * k2.dpsi +
                     575.0 / 13824.0 * k3.dpsi + 44275.0 / 110592.0 * k4.dpsi +
                     253.0 / 4096.0 * k5.dpsi)};
  const WaveState k6 = rhs(t, q);

  const auto comb5 = [&](cdouble c1, cdouble c3, cdouble c4, cdouble c6) {
    return 37.0 / 378.0 * c1 + 250.0 / 621.0 * c3 + 125.0 / 594.0 * c4 + 512.0 / 1771.0 * c6;
  };
  const auto comb4 = [&](cdouble c1, cdouble c3, cdouble c4, cdouble c5, cdouble c6) {
    return 2825.0 / 27648.0 * c1 + 18575.0 / 48384.0 * c3 + 13525.0 / 55296.0 * c4 +
           277.0 / 14336.0 * c5 + 1.0 / 4.0 * c6;
  };

  const cdouble d5_psi = comb5(k1.psi, k3.psi, k4.psi, k6.psi);
  const cdouble d5_dpsi = comb5(k1.dpsi, k3.dpsi, k4.dpsi, k6.dpsi);
  const cdouble d4_psi = comb4(k1.psi, k3.psi, k4.psi, k5.psi, k6.psi);
  const cdouble d4_dpsi = comb4(k1.dpsi, k3.dpsi, k4.dpsi, k5.dpsi, k6.dpsi);

  const double err =
      h * std::max(std::abs(d5_psi - d4_psi), std::abs(d5_dpsi - d4_dpsi));
  y = {y.psi + h * d5_psi, y.dpsi + h * d5_dpsi};
  return err;
}

// Integrate from xa to xb through a constant potential value v.
void integrate_interval(WaveState& y, double xa, double xb, cdouble v, double k, double span,
                        const OracleConfig& cfg) {
  const cdouble q = v - cdouble(k * k);
  const double h_min = span * 1e-14;
  double x = xa;
  double h = std::min(cfg.step, xb - xa);
  while (xb - x > h_min) {
    h = std::min(h, xb - x);
    WaveState trial = y;
    const double err = cash_karp_step(trial, h, q);
    const double scale = std::max({1.0, std::abs(trial.psi), std::abs(trial.dpsi)});
    const double allowed = cfg.tolerance * (h / span) * scale;
    if (err > allowed && h > h_min) {
      h = std::max(h_min, h * std::max(0.2, 0.9 * std::pow(allowed / err, 0.25)));
      continue;
    }
    if (err > allowed)
      throw OracleConfigError("ode_transfer: step underflow, tolerance is infeasible");
    y = trial;
    x += h;
    const double grow = (err > 0.0) ? 0.9 * std::pow(allowed / err, 0.2) : 2.0;
    h = std::min(cfg.step, h * std::clamp(grow, 0.2, 2.0));
  }
}

}  // namespace

TransferMatrix ode_transfer(const Potential& potential, double k, const OracleConfig& config) {
  if (!(k > 0.0) || !std::isfinite(k))
    throw InvalidInputError("ode_transfer: wavenumber k must be positive and finite");
  if (!(config.step > 0.0) || !(config.tolerance > 0.0) || config.padding < 0.0)
    throw OracleConfigError("ode_transfer: step and tolerance must be positive, padding >= 0");

  const auto [lo, hi] = potential.support();
  const double x_lo = lo - config.padding;
  const double x_hi = hi + config.padding;
  const double span = std::max(x_hi - x_lo, 1e-3);

  // Breakpoints: segment edges and delta positions, in order.
  std::vector<double> breaks{x_lo, x_hi};
  for (const auto& s : potential.segments()) {
    breaks.push_back(s.a);
    breaks.push_back(s.b);
  }
  for (const auto& d : potential.deltas()) breaks.push_back(d.x);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  const auto value_at = [&](double x) -> cdouble {
    for (const auto& s : potential.segments())
      if (x > s.a && x < s.b) return s.v;
    return 0.0;
  };
  const auto jump_at = [&](double x) -> cdouble {
    cdouble z = 0.0;
    for (const auto& d : potential.deltas())
      if (d.x == x) z += d.z;
    return z;
  };

  const cdouble ik(0.0, k);
  TransferMatrix m;
  m.k = k;
  for (int column = 0; column < 2; ++column) {
    // Column 0: (A-, B-) = (1, 0); column 1: (0, 1).
    const double sign = (column == 0) ? 1.0 : -1.0;
    WaveState y{std::exp(sign * ik * x_lo), sign * ik * std::exp(sign * ik * x_lo)};

    for (std::size_t i = 0; i < breaks.size(); ++i) {
      const cdouble z = jump_at(breaks[i]);
      if (z != 0.0) y.dpsi += z * y.psi;
      if (i + 1 < breaks.size()) {
        const cdouble v = value_at(0.5 * (breaks[i] + breaks[i + 1]));
        integrate_interval(y, breaks[i], breaks[i + 1], v, k, span, config);
      }
    }

    const cdouble a_plus = 0.5 * (y.psi + y.dpsi / ik) * std::exp(-ik * x_hi);
    const cdouble b_plus = 0.5 * (y.psi - y.dpsi / ik) * std::exp(ik * x_hi);
    if (column == 0) {
      m.m11 = a_plus;
      m.m21 = b_plus;
    } else {
      m.m12 = a_plus;
      m.m22 = b_plus;
    }
  }
  return m;
}

MetricConeReport hermitian_pair_check(const Eigen::MatrixXcd& hamiltonian,
                                      const MetricDecomposition& decomposition) {
  const Eigen::Index n = hamiltonian.rows();
  if (n == 0 || hamiltonian.cols() != n)
    throw InvalidInputError("hermitian_pair_check: hamiltonian must be square");
  if (decomposition.metric.rows() != n)
    throw InvalidInputError("hermitian_pair_check: metric dimension mismatch");

  // vec(H^dag X - X H) = (I (x) H^dag - H^T (x) I) vec X.
  const Eigen::MatrixXcd h_adj = hamiltonian.adjoint();
  Eigen::MatrixXcd sylvester = Eigen::MatrixXcd::Zero(n * n, n * n);
  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(n, n);
  for (Eigen::Index bi = 0; bi < n; ++bi)
    for (Eigen::Index bj = 0; bj < n; ++bj)
      sylvester.block(bi * n, bj * n, n, n) =
          identity(bi, bj) * h_adj - hamiltonian.transpose()(bi, bj) * identity;

  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sylvester, Eigen::ComputeFullV);
  const double sv_max = svd.singularValues()(0);
  std::vector<Eigen::MatrixXcd> hermitian_basis;
  for (Eigen::Index c = n * n - 1; c >= 0; --c) {
    if (svd.singularValues()(c) > 1e-10 * std::max(sv_max, 1.0)) break;
    const Eigen::MatrixXcd x =
        Eigen::Map<const Eigen::MatrixXcd>(svd.matrixV().col(c).data(), n, n);
    // Hermitian and anti-Hermitian parts both solve the equation.
    for (const Eigen::MatrixXcd& part :
         {Eigen::MatrixXcd(0.5 * (x + x.adjoint())),
          Eigen::MatrixXcd(cdouble(0.0, -0.5) * (x - x.adjoint()))}) {
      Eigen::MatrixXcd candidate = part;
      for (const auto& e : hermitian_basis)
        candidate -= (e.cwiseProduct(candidate.conjugate()).sum()).real() * e;
      if (candidate.norm() > 1e-8) hermitian_basis.push_back(candidate / candidate.norm());
    }
  }

  MetricConeReport report;
  report.solution_dimension = static_cast<int>(hermitian_basis.size());

  const Eigen::MatrixXcd eta = decomposition.metric / std::max(1e-300, decomposition.metric.norm());
  Eigen::MatrixXcd projection = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& e : hermitian_basis)
    projection += (e.cwiseProduct(eta.conjugate()).sum()).real() * e;
  report.angle = std::asin(std::min(1.0, (eta - projection).norm()));

  // Positivity search over the solution space.
  const auto min_eigenvalue = [](const Eigen::MatrixXcd& x) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (x + x.adjoint()));
    const double largest = es.eigenvalues().cwiseAbs().maxCoeff();
    return es.eigenvalues().minCoeff() / std::max(largest, 1e-300);
  };
  double best = -1.0;
  if (!hermitian_basis.empty()) {
    std::vector<Eigen::MatrixXcd> candidates;
    Eigen::MatrixXcd id_proj = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& e : hermitian_basis)
      id_proj += (e.cwiseProduct(Eigen::MatrixXcd::Identity(n, n).conjugate()).sum()).real() * e;
    candidates.push_back(id_proj);
    candidates.push_back(projection);
    for (const auto& e : hermitian_basis) {
      candidates.push_back(e);
      candidates.push_back(-e);
    }
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
      Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n, n);
      for (const auto& e : hermitian_basis) x += gauss(rng) * e;
      candidates.push_back(x);
    }
    for (const auto& x : candidates) {
      if (x.norm() < 1e-12) continue;
      best = std::max(best, min_eigenvalue(x));
    }
  }
  report.best_min_eigenvalue = best;
  report.feasible = best > 1e-10;
  return report;
}

}  // namespace nhqm
