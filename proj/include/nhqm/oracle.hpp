#pragma once

#include <Eigen/Dense>

#include "nhqm/potential.hpp"
#include "nhqm/pseudo_hermitian.hpp"
#include "nhqm/transfer_matrix.hpp"

namespace nhqm {

// Brute-force validators. Everything here exists to cross-check the
// closed-form paths; nothing in the main library depends on it.

struct OracleConfig {
  double step = 0.05;       // hard cap on the integrator step
  double tolerance = 1e-10; // global error target across the support
  double padding = 1.0;     // free-region margin before fitting asymptotics
};

// Numerical transfer matrix: integrates -psi'' + v psi = k^2 psi across the
// padded support with an adaptive Cash-Karp 4(5) scheme, applies the exact
// jump psi'(x0+) - psi'(x0-) = z psi(x0) at each delta, and fits the
// asymptotic coefficients (A, B) on both sides for two independent initial
// conditions. |det M - 1| <= 10 * tolerance on return.
TransferMatrix ode_transfer(const Potential& potential, double k, const OracleConfig& config = {});

// Independent check of a metric decomposition: solves H^dag X = X H over
// Hermitian X as a dense real linear system (no eigendecomposition), then
// measures how far eta sits from the solution space and whether the space
// contains a positive-definite element at all.
struct MetricConeReport {
  double angle = 0.0;          // angle between eta and the solution span
  bool feasible = false;       // a positive-definite solution was found
  int solution_dimension = 0;  // real dimension of the Hermitian solution space
  double best_min_eigenvalue = 0.0;  // over the positivity search candidates
};

MetricConeReport hermitian_pair_check(const Eigen::MatrixXcd& hamiltonian,
                                      const MetricDecomposition& decomposition);

}  // namespace nhqm
