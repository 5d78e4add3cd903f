#include "nhqm/pseudo_hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include "nhqm/errors.hpp"

namespace nhqm {

namespace {

constexpr double kRankDeficiencyRatio = 1e-8;

void require_square_finite(const Eigen::MatrixXcd& m, const char* who) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << who << ": matrix must be square and non-empty, got " << m.rows() << "x" << m.cols();
    throw InvalidInputError(msg.str());
  }
  if (!m.allFinite()) throw InvalidInputError(std::string(who) + ": matrix has non-finite entries");
}

// Splitting of a near-degenerate eigenvalue pair that is explained by pure
// rounding of an exactly defective pair: |l1 - l2|^2 <~ eps * scale * coupling,
// where the coupling is the off-diagonal Schur entry. A diagonalizable
// degenerate pair has zero coupling and is not flagged.
bool rounding_consistent_defect(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& eigenvalues) {
  const double scale = std::max(1.0, h.norm());
  const double gap_guard = 1e-6 * scale;

  bool suspicious = false;
  for (Eigen::Index i = 0; i < eigenvalues.size() && !suspicious; ++i)
    for (Eigen::Index j = i + 1; j < eigenvalues.size() && !suspicious; ++j)
      suspicious = std::abs(eigenvalues(i) - eigenvalues(j)) <= gap_guard;
  if (!suspicious) return false;

  const Eigen::ComplexSchur<Eigen::MatrixXcd> schur(h, /*computeU=*/false);
  const Eigen::MatrixXcd& t = schur.matrixT();
  const double eps_floor = 100.0 * std::numeric_limits<double>::epsilon() * scale;
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < t.cols(); ++j) {
      const double gap = std::abs(t(i, i) - t(j, j));
      const double coupling = std::abs(t(i, j));
      if (coupling > eps_floor && gap * gap <= eps_floor * coupling) return true;
    }
  }
  return false;
}

}  // namespace

Eigen::MatrixXcd BiorthonormalSystem::hamiltonian() const {
  return right_vectors * eigenvalues.asDiagonal() * left_vectors.adjoint();
}

BiorthonormalSystem biorthonormal_eig(const Eigen::MatrixXcd& hamiltonian) {
  require_square_finite(hamiltonian, "biorthonormal_eig");
  const Eigen::Index n = hamiltonian.rows();

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(hamiltonian, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    throw InvalidInputError("biorthonormal_eig: eigensolver failed to converge");

  Eigen::VectorXcd values = solver.eigenvalues();
  Eigen::MatrixXcd vectors = solver.eigenvectors();

  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(vectors);
  const double sv_max = svd.singularValues()(0);
  const double sv_min = svd.singularValues()(n - 1);
  if (sv_min < kRankDeficiencyRatio * sv_max || rounding_consistent_defect(hamiltonian, values)) {
    std::ostringstream msg;
    msg << "exceptional point: eigenvectors coalesce (singular value ratio "
        << sv_min / sv_max << ")";
    throw ExceptionalPointError(msg.str());
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const auto la = values(a), lb = values(b);
    if (la.real() != lb.real()) return la.real() < lb.real();
    return la.imag() < lb.imag();
  });

  BiorthonormalSystem system;
  system.eigenvalues.resize(n);
  system.right_vectors.resize(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    system.eigenvalues(c) = values(order[static_cast<std::size_t>(c)]);
    system.right_vectors.col(c) = vectors.col(order[static_cast<std::size_t>(c)]);
  }

  // phi_n = columns of (V^{-1})^dag, so <phi_m|psi_n> = delta_mn exactly.
  system.left_vectors = system.right_vectors.inverse().adjoint();

  // Balance ||phi_n|| = ||psi_n|| without touching biorthonormality.
  for (Eigen::Index c = 0; c < n; ++c) {
    const double scale = std::sqrt(system.left_vectors.col(c).norm() /
                                   system.right_vectors.col(c).norm());
    system.right_vectors.col(c) *= scale;
    system.left_vectors.col(c) /= scale;
  }
  return system;
}

BiorthonormalSystem rescaled(const BiorthonormalSystem& system, const Eigen::VectorXcd& scales) {
  if (scales.size() != system.dimension())
    throw InvalidInputError("rescaled: one scale per eigenvector required");
  BiorthonormalSystem out = system;
  for (Eigen::Index c = 0; c < scales.size(); ++c) {
    const cdouble s = scales(c);
    if (std::abs(s) == 0.0) throw InvalidInputError("rescaled: scales must be nonzero");
    out.right_vectors.col(c) *= s;
    out.left_vectors.col(c) /= std::conj(s);
  }
  return out;
}

bool is_spectrum_real(const BiorthonormalSystem& system, double tol) {
  for (Eigen::Index i = 0; i < system.dimension(); ++i) {
    const cdouble lambda = system.eigenvalues(i);
    if (std::abs(lambda.imag()) > tol * std::max(1.0, std::abs(lambda))) return false;
  }
  return true;
}

namespace {

void require_parity(const Eigen::MatrixXd& parity, Eigen::Index n, const char* who) {
  if (parity.rows() != n || parity.cols() != n)
    throw InvalidInputError(std::string(who) + ": parity dimension mismatch");
  const double residual =
      (parity * parity - Eigen::MatrixXd::Identity(n, n)).norm() / std::sqrt(double(n));
  if (residual > 1e-12)
    throw InvalidInputError(std::string(who) + ": parity matrix is not an involution");
}

// Greedy conjugation-symmetry matching of the eigenvalue multiset.
double conjugation_asymmetry(const Eigen::VectorXcd& values) {
  std::vector<cdouble> pool(values.data(), values.data() + values.size());
  double worst = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const cdouble target = std::conj(values(i));
    auto best = pool.begin();
    double best_dist = std::numeric_limits<double>::infinity();
    for (auto it = pool.begin(); it != pool.end(); ++it) {
      const double d = std::abs(*it - target);
      if (d < best_dist) {
        best_dist = d;
        best = it;
      }
    }
    worst = std::max(worst, best_dist / std::max(1.0, std::abs(target)));
    pool.erase(best);
  }
  return worst;
}

}  // namespace

AntilinearSymmetryReport check_antilinear_symmetry(const Eigen::MatrixXcd& hamiltonian,
                                                   const Eigen::MatrixXd& parity) {
  require_square_finite(hamiltonian, "check_antilinear_symmetry");
  require_parity(parity, hamiltonian.rows(), "check_antilinear_symmetry");

  AntilinearSymmetryReport report;
  const Eigen::MatrixXcd transformed = parity * hamiltonian.conjugate() * parity;
  report.symmetry_residual =
      (transformed - hamiltonian).norm() / std::max(1.0, hamiltonian.norm());
  report.symmetric = report.symmetry_residual <= 1e-9;

  // Eigenvalues only; defective matrices still carry a spectral multiset.
  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(hamiltonian, false);
  report.spectrum_residual = conjugation_asymmetry(solver.eigenvalues());
  report.spectrum_conjugation_symmetric = report.spectrum_residual <= 1e-8;
  return report;
}

MetricDecomposition metric_from_spectrum(const BiorthonormalSystem& system, double reality_tol) {
  if (!is_spectrum_real(system, reality_tol)) {
    std::vector<cdouble> values(system.eigenvalues.data(),
                                system.eigenvalues.data() + system.eigenvalues.size());
    throw NoPositiveMetricError(
        "metric_from_spectrum: spectrum is not real, no positive metric renders H Hermitian",
        values);
  }

  MetricDecomposition out;
  Eigen::MatrixXcd eta = system.left_vectors * system.left_vectors.adjoint();
  eta = 0.5 * (eta + eta.adjoint().eval());  // keep it exactly Hermitian
  out.metric = eta;

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(eta);
  if (es.info() != Eigen::Success)
    throw InvalidInputError("metric_from_spectrum: metric eigendecomposition failed");
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw NoPositiveMetricError(
        "metric_from_spectrum: metric lost positivity (system too ill-conditioned)",
        {system.eigenvalues.data(), system.eigenvalues.data() + system.eigenvalues.size()});

  const Eigen::VectorXcd roots = es.eigenvalues().cwiseSqrt().cast<cdouble>();
  out.sqrt_metric = es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
  const Eigen::VectorXcd inv_roots = roots.cwiseInverse();
  const Eigen::MatrixXcd inv_sqrt =
      es.eigenvectors() * inv_roots.asDiagonal() * es.eigenvectors().adjoint();

  out.hermitian_h = out.sqrt_metric * system.hamiltonian() * inv_sqrt;
  out.hermitian_h = 0.5 * (out.hermitian_h + out.hermitian_h.adjoint().eval());
  return out;
}

COperatorReport c_operator_check(const MetricDecomposition& decomposition,
                                 const Eigen::MatrixXcd& hamiltonian,
                                 const Eigen::MatrixXd& parity, double tol) {
  require_square_finite(hamiltonian, "c_operator_check");
  const Eigen::Index n = hamiltonian.rows();
  require_parity(parity, n, "c_operator_check");
  if (decomposition.metric.rows() != n)
    throw InvalidInputError("c_operator_check: metric dimension mismatch");

  const Eigen::MatrixXcd& eta = decomposition.metric;
  const Eigen::MatrixXcd c = parity * eta;  // from eta = P C with P^2 = 1
  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(n, n);

  COperatorReport report;
  const double c_norm = std::max(1e-300, c.norm());
  report.involution_residual = (c * c - identity).norm() / (c_norm * c_norm);
  report.h_commutator_residual = (c * hamiltonian - hamiltonian * c).norm() /
                                 (c_norm * std::max(1.0, hamiltonian.norm()));
  // [C, PT] = 0 on the coordinate basis reduces to C P = P conj(C).
  report.pt_commutator_residual = (c * parity - parity * c.conjugate()).norm() / c_norm;

  // Q = -log eta, then rebuild eta from it.
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(eta);
  const Eigen::VectorXcd logs = es.eigenvalues().array().log().matrix().cast<cdouble>();
  const Eigen::MatrixXcd q = -(es.eigenvectors() * logs.asDiagonal() * es.eigenvectors().adjoint());
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> qs(q);
  const Eigen::VectorXcd exp_neg = (-qs.eigenvalues()).array().exp().matrix().cast<cdouble>();
  const Eigen::MatrixXcd rebuilt =
      qs.eigenvectors() * exp_neg.asDiagonal() * qs.eigenvectors().adjoint();
  report.log_metric_residual = (rebuilt - eta).norm() / std::max(1e-300, eta.norm());

  report.involution_holds = report.involution_residual <= tol;
  report.commutes_with_h = report.h_commutator_residual <= tol;
  report.commutes_with_pt = report.pt_commutator_residual <= tol;
  return report;
}

}  // namespace nhqm
