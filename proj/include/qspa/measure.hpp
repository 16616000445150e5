#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "qspa/complex_matrix.hpp"
#include "qspa/multicopy.hpp"
#include "qspa/rng.hpp"
#include "qspa/spectrum.hpp"
#include "qspa/states.hpp"

namespace qspa::measure {

/// Result of a finite-shot projective measurement of one hermitian
/// observable.
struct ShotEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(shots)
  std::size_t shots = 0;
  std::string observable_id;
};

/// Samples projective outcomes of hermitian O on the state sigma:
/// eigenvalues within 1e-10 are merged into one outcome, probabilities are
/// the eigenspace weights <v|sigma|v>. Unbiased for Tr(O sigma).
ShotEstimate sample_observable(const ComplexMatrix& o,
                               const states::DensityMatrix& sigma,
                               std::size_t shots, SplitMix64& rng,
                               const std::string& observable_id = "");

/// Shot estimate of a multicopy mean <<A>> on rho^(x)n. Non-hermitian A
/// costs two batches (hermitian and antihermitian parts), recombined as
/// <A_h> - i <A_a>.
struct MulticopyShotEstimate {
  std::complex<double> mean;
  double std_error = 0.0;  // quadrature over the contributing batches
  std::size_t shots_per_observable = 0;
  std::size_t observables_used = 0;
  std::string observable_id;
};

MulticopyShotEstimate estimate_multicopy(const multicopy::MulticopyObservable& a,
                                         const states::DensityMatrix& rho,
                                         std::size_t shots, SplitMix64& rng);

struct MomentShotResult {
  spectrum::MomentVector moments;
  std::vector<double> std_errors;  // per moment; 0 for the fixed m_1
  std::size_t observables_used = 0;
};

/// Shot-estimated moments m_2..m_{k_max} through shift-operator
/// observables; m_1 is pinned at 1.
MomentShotResult estimate_moments_shots(
    const states::DensityMatrix& rho, std::size_t k_max,
    std::size_t shots_per_moment, SplitMix64& rng,
    std::size_t max_dim = multicopy::kDefaultOperatorBudget);

}  // namespace qspa::measure
