#pragma once

#include <cstddef>
#include <vector>

#include "qspa/complex_matrix.hpp"
#include "qspa/rng.hpp"

namespace qspa::states {

/// Validated density matrix: hermitian, unit trace, positive semidefinite
/// (all within the configured tolerances). Construct through validate().
class DensityMatrix {
 public:
  static DensityMatrix validate(const ComplexMatrix& mat);

  std::size_t dim() const { return mat_.rows(); }
  const ComplexMatrix& mat() const { return mat_; }

  /// Eigenvalues ascending, clipped into [0, 1] for downstream powering.
  std::vector<double> eigenvalues() const;

 private:
  explicit DensityMatrix(ComplexMatrix mat) : mat_(std::move(mat)) {}
  ComplexMatrix mat_;
};

enum class EntropyKind { tsallis, renyi, von_neumann };

struct EntropyValue {
  EntropyKind kind;
  double order;  // q for tsallis, alpha for renyi, unused for von Neumann
  double value;
};

/// Haar-random pure state |phi><phi|.
DensityMatrix random_pure(std::size_t d, SplitMix64& rng);

/// Ginibre construction G G^dagger / Tr(G G^dagger); full rank almost surely.
DensityMatrix random_mixed(std::size_t d, SplitMix64& rng);

/// Tr(rho^2), in [1/d, 1].
double purity(const DensityMatrix& rho);

/// Sum of k-th powers of the eigenvalues. The stable path for moments when
/// no multicopy operator is wanted.
double power_moment(const DensityMatrix& rho, std::size_t k);

/// (1 - sum p_i^q) / (q - 1); q > 0, q != 1.
EntropyValue tsallis_entropy(const DensityMatrix& rho, double q);

/// ln(sum p_i^alpha) / (1 - alpha); alpha > 0, alpha != 1. Eigenvalues
/// below 1e-14 are dropped.
EntropyValue renyi_entropy(const DensityMatrix& rho, double alpha);

EntropyValue von_neumann_entropy(const DensityMatrix& rho);

/// Projector onto (1/sqrt(d)) sum_i |i>|i>, a state on C^d (x) C^d with
/// both marginals maximally mixed.
DensityMatrix max_entangled(std::size_t d);

}  // namespace qspa::states
