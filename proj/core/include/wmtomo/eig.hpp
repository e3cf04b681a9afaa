#pragma once

#include <vector>

#include "wmtomo/complex_matrix.hpp"

namespace wmtomo::linalg {

// Eigendecomposition of a Hermitian matrix. Columns of eigenvectors pair with
// eigenvalues; V diag(lambda) V' reconstructs the input within 1e-10.
struct HermitianEig {
  std::vector<double> eigenvalues;  // sorted descending
  ComplexMatrix eigenvectors;       // unitary, columns are eigenvectors
};

// Cyclic complex Jacobi. Deterministic ordering: descending eigenvalue, ties
// broken by lexicographic comparison of eigenvector entries after phase
// normalization (first nonzero component made real positive).
// Throws NotHermitian when m is farther than 1e-8 (Frobenius) from its adjoint.
HermitianEig eigh(const ComplexMatrix& m);

// exp(-i * theta * g) for Hermitian g. Uses the closed form
// cos(theta) I - i sin(theta) g when g^2 = I, otherwise goes through eigh.
ComplexMatrix exp_generator(const ComplexMatrix& g, double theta);

}  // namespace wmtomo::linalg
