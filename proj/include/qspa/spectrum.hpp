#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "qspa/multicopy.hpp"
#include "qspa/states.hpp"

namespace qspa::spectrum {

/// Power moments m_k = Tr(rho^k), k = 1..d, with m_1 = 1.
struct MomentVector {
  std::size_t d = 0;
  std::vector<double> m;

  /// Moment-cone sanity: 1/d^{k-1} - slack <= m_k <= 1 + slack and
  /// m_{k+1} <= m_k + slack. Throws on violation.
  void validate(double slack) const;
};

struct SpectrumEstimate {
  std::vector<double> eigenvalues;  // descending, clipped, summing to 1
  double residual = 0.0;            // max_k |m_k(recovered) - m_k(input)|
  bool projected = false;           // clipping/renormalization was applied
};

/// Elementary symmetric polynomials e_1..e_d from power sums via Newton's
/// identities: e_k = (1/k) sum_{i=1}^{k} (-1)^{i-1} e_{k-i} m_i.
std::vector<double> newton_elementary(const MomentVector& m);

/// Roots of x^d - e_1 x^{d-1} + e_2 x^{d-2} - ... found by Durand-Kerner
/// simultaneous iteration (update tolerance 1e-13, at most 500 rounds;
/// iterates whose residual sits at the floating-point noise floor of the
/// polynomial are accepted as converged). Throws ConvergenceError with the
/// last residual otherwise.
std::vector<std::complex<double>> roots_from_elementary(const std::vector<double>& e);

/// Full inversion: moments -> elementary -> roots -> projected spectrum.
/// Roots with |imag| > 0.05 mean the moments are inconsistent with any
/// spectrum and raise a numeric error.
SpectrumEstimate estimate_spectrum(const MomentVector& m);

struct SpectrumFromStateResult {
  SpectrumEstimate estimate;
  MomentVector moments;
  std::string method;  // "shift" or "eig"
  std::size_t observables_used = 0;
  std::string notice;
};

/// End-to-end estimation from a state: moments through the 2d-3 shift-
/// operator observables when d^d fits the operator budget, otherwise the
/// eigenvalue path with an explicit notice.
SpectrumFromStateResult spectrum_from_state(
    const states::DensityMatrix& rho,
    std::size_t max_dim = multicopy::kDefaultOperatorBudget);

/// Exact moments m_1..m_d via eigenvalues (the independent route for
/// tests and the large-d fallback).
MomentVector moments_from_eigenvalues(const states::DensityMatrix& rho);

}  // namespace qspa::spectrum
