#pragma once

#include <vector>

#include "qspa/complex_matrix.hpp"

namespace qspa {

/// Eigendecomposition of a hermitian matrix: m = U diag(eigenvalues) U^dagger
/// with eigenvalues ascending and U's columns the orthonormal eigenvectors.
struct HermitianEig {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

/// Cyclic Jacobi diagonalization. Input must be hermitian within the
/// configured tolerance (throws HermiticityError with the defect norm
/// otherwise). Off-diagonal target 1e-12 relative to the matrix scale,
/// at most 100 sweeps.
HermitianEig hermitian_eig(const ComplexMatrix& m);

/// Principal square root of a positive-semidefinite hermitian matrix.
/// Eigenvalues in [-psd_clip, 0) are clipped to zero; anything below
/// throws PositivityError with the offending value.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

}  // namespace qspa
