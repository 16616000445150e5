#pragma once

#include <cstddef>

#include "qspa/complex_matrix.hpp"
#include "qspa/multicopy.hpp"
#include "qspa/rng.hpp"
#include "qspa/states.hpp"

namespace qspa::nogo {

/// Quantifies why no channel can turn rho^(x)n into rho^n: any admissible
/// fixed operator acts as identity on the symmetric subspace, so
/// Tr(P_sym rho^(x)n) lower-bounds the would-be success probability
/// Tr(rho^n); the gap is strictly positive for mixed states.
struct NogoGapReport {
  std::size_t d = 0;
  std::size_t n = 0;
  double state_purity = 0.0;
  double sym_overlap = 0.0;  // Tr(P_sym rho^(x)n)
  double target = 0.0;       // Tr(rho^n)
  double gap = 0.0;          // sym_overlap - target
};

/// Projector onto the completely symmetric subspace of (C^d)^(x)n:
/// the average of all n! permutation operators.
ComplexMatrix sym_projector(std::size_t d, std::size_t n,
                            std::size_t max_dim = multicopy::kDefaultOperatorBudget);

NogoGapReport nogo_gap(const states::DensityMatrix& rho, std::size_t n,
                       std::size_t max_dim = multicopy::kDefaultOperatorBudget);

/// The hypothetical two-copy squaring channel's required output:
/// (1 - Tr(rho^2)) I/d + rho^2. Always a valid state.
ComplexMatrix map2_target(const states::DensityMatrix& rho);

/// The natural CP candidate for the squaring map: symmetrize two copies,
/// then trace out the second.
ComplexMatrix symmetrize_trace_out(const ComplexMatrix& sigma, std::size_t d);

struct Map2CheckReport {
  std::size_t d = 0;
  std::size_t trials = 0;
  double max_deviation = 0.0;
  double mean_deviation = 0.0;
};

/// Compares the candidate channel against the squaring target on random
/// mixed states: the deviation vanishes identically for qubits and stays
/// bounded away from zero for d >= 3.
Map2CheckReport map2_linearization_check(std::size_t d, std::size_t trials,
                                         SplitMix64& rng);

}  // namespace qspa::nogo
