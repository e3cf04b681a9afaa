#pragma once

#include <vector>

#include "wmtomo/complex_matrix.hpp"

namespace wmtomo::projection {

struct ProjectionConfig {
  int max_iters = 2000;
  double tol = 1e-9;  // Frobenius change of the iterate per round
};

// Euclidean projection onto the probability simplex {p >= 0, sum p = 1}:
// sort descending, locate the support by the threshold test, clip.
std::vector<double> simplex_project(const std::vector<double>& v);

// Frobenius-nearest density matrix, in closed form: eigendecompose, project
// the spectrum onto the simplex, reconstruct. Unique minimizer, so the
// config carries no knobs that matter here; it is accepted for signature
// symmetry with the process path. Throws NotHermitian beyond 1e-8.
linalg::ComplexMatrix project_state(const linalg::ComplexMatrix& raw,
                                    const ProjectionConfig& cfg = {});

// Validates dim(E_i) = d, |basis| = d*d, tr(E_i' E_j) = d delta_ij within
// 1e-8. Throws NotOrthogonalBasis.
void check_operator_basis(const std::vector<linalg::ComplexMatrix>& basis);

// Frobenius projection onto the affine set of Hermitian chi satisfying the
// trace-preservation constraint sum_mn chi_mn E_n' E_m = I, via the normal
// equations of the constraint map. Throws SingularConstraint when the
// constraint cannot be met (never for a Pauli basis).
linalg::ComplexMatrix tp_affine_project(
    const linalg::ComplexMatrix& chi,
    const std::vector<linalg::ComplexMatrix>& basis);

struct ProcessProjection {
  linalg::ComplexMatrix chi;
  bool converged;
  int iterations;
};

// Dykstra's alternating projections between the PSD cone (eigenvalue clip,
// no trace step: the affine set fixes the trace) and the trace-preservation
// set. Non-convergence returns the best iterate with converged = false.
ProcessProjection project_process(
    const linalg::ComplexMatrix& raw_chi,
    const std::vector<linalg::ComplexMatrix>& basis,
    const ProjectionConfig& cfg = {});

}  // namespace wmtomo::projection
