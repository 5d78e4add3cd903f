#pragma once

#include <Eigen/Dense>

#include "nhqm/types.hpp"

namespace nhqm {

// Biorthonormal eigensystem of a diagonalizable matrix H: right eigenvectors
// psi_n (columns of right_vectors), left eigenvectors phi_n of H^dag with
// conjugate eigenvalues, normalized so <phi_m|psi_n> = delta_mn and
// sum_n |psi_n><phi_n| = 1.
struct BiorthonormalSystem {
  Eigen::VectorXcd eigenvalues;   // ascending by (Re, Im)
  Eigen::MatrixXcd right_vectors; // column n = psi_n
  Eigen::MatrixXcd left_vectors;  // column n = phi_n

  Eigen::Index dimension() const { return eigenvalues.size(); }

  // H reconstructed as sum_n lambda_n |psi_n><phi_n|.
  Eigen::MatrixXcd hamiltonian() const;
};

// Right/left eigendecomposition with biorthonormal scaling and balanced
// norms ||phi_n|| = ||psi_n||. Throws ExceptionalPointError when the
// eigenvector matrix is numerically rank-deficient (smallest singular value
// below 1e-8 of the largest) or when an eigenvalue pair's splitting is
// consistent with pure rounding of a defective pair.
BiorthonormalSystem biorthonormal_eig(const Eigen::MatrixXcd& hamiltonian);

// Same system with psi_n -> c_n psi_n, phi_n -> phi_n / conj(c_n); the
// biorthonormality is preserved for any nonzero scales. This is the
// normalization freedom the metric construction inherits.
BiorthonormalSystem rescaled(const BiorthonormalSystem& system, const Eigen::VectorXcd& scales);

// True iff |Im lambda_n| <= tol * max(1, |lambda_n|) for every eigenvalue.
bool is_spectrum_real(const BiorthonormalSystem& system, double tol);

struct AntilinearSymmetryReport {
  bool symmetric = false;       // P conj(H) P == H within tolerance
  double symmetry_residual = 0.0;
  bool spectrum_conjugation_symmetric = false;  // {lambda} == {conj(lambda)}
  double spectrum_residual = 0.0;
};

// Checks PT-symmetry with T = entrywise conjugation and the induced spectral
// law (eigenvalues symmetric about the real axis). P must be a real
// symmetric involution.
AntilinearSymmetryReport check_antilinear_symmetry(const Eigen::MatrixXcd& hamiltonian,
                                                   const Eigen::MatrixXd& parity);

// Metric operator and equivalent Hermitian Hamiltonian:
//   eta      = sum_n |phi_n><phi_n|   (positive-definite),
//   h        = eta^{1/2} H eta^{-1/2} (Hermitian, isospectral with H).
struct MetricDecomposition {
  Eigen::MatrixXcd metric;       // eta
  Eigen::MatrixXcd sqrt_metric;  // eta^{1/2}, positive Hermitian
  Eigen::MatrixXcd hermitian_h;  // h
};

// Spectral-method metric from a biorthonormal system. Requires a real
// spectrum; throws NoPositiveMetricError otherwise. The result depends on
// the system's normalization (see rescaled); its defining properties
// H^dag eta = eta H and h = h^dag do not.
MetricDecomposition metric_from_spectrum(const BiorthonormalSystem& system,
                                         double reality_tol = 1e-9);

struct COperatorReport {
  double involution_residual = 0.0;      // ||C^2 - 1|| / ||C||^2
  double h_commutator_residual = 0.0;    // ||[C,H]|| / (||C|| ||H||)
  double pt_commutator_residual = 0.0;   // ||C P - P conj(C)|| / ||C||
  double log_metric_residual = 0.0;      // ||exp(-Q) - eta|| / ||eta|| with Q = -log eta
  bool involution_holds = false;
  bool commutes_with_h = false;
  bool commutes_with_pt = false;
};

// Diagnostic for the CPT construction: forms C = P eta and reports the
// residuals of C^2 = 1, [C,H] = 0 and [C,PT] = 0, plus the reconstruction
// of eta from its Hermitian logarithm. Conditions may legitimately fail for
// metrics that are not the CPT one.
COperatorReport c_operator_check(const MetricDecomposition& decomposition,
                                 const Eigen::MatrixXcd& hamiltonian,
                                 const Eigen::MatrixXd& parity,
                                 double tol = 1e-8);

}  // namespace nhqm
