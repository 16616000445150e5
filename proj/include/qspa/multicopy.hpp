#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qspa/complex_matrix.hpp"
#include "qspa/states.hpp"

namespace qspa::multicopy {

/// Default cap on the dimension of materialized multicopy operators.
inline constexpr std::size_t kDefaultOperatorBudget = 4096;

/// Operator on n copies of a d-dimensional system; its mean on rho^(x)n
/// defines a (generally nonlinear) functional of rho.
struct MulticopyObservable {
  std::size_t n = 0;
  std::size_t d = 0;
  ComplexMatrix op;
  bool hermitian = false;
};

/// Basis-permutation operator P with P |i_0,...,i_{n-1}> =
/// |i_{new_order[0]},...,i_{new_order[n-1]}>.
ComplexMatrix tensor_permutation_operator(const std::vector<std::size_t>& dims,
                                          const std::vector<std::size_t>& new_order);

/// Conjugates m by the permutation that reorders tensor factors, so that a
/// product operator A_0 (x) ... (x) A_{n-1} becomes
/// A_{new_order[0]} (x) ... (x) A_{new_order[n-1]}.
ComplexMatrix permute_subsystems(const ComplexMatrix& m,
                                 const std::vector<std::size_t>& dims,
                                 const std::vector<std::size_t>& new_order);

/// Two-copy swap V: V (u (x) v) = v (x) u. Hermitian, V^2 = I, and
/// Tr(V A (x) B) = Tr(AB).
MulticopyObservable swap_operator(std::size_t d);

/// Cyclic shift on n copies: V (u_1 (x) ... (x) u_n) =
/// u_2 (x) ... (x) u_n (x) u_1. Satisfies
/// Tr(V A_1 (x) ... (x) A_n) = Tr(A_1 ... A_n); hermitian only for n <= 2.
MulticopyObservable shift_operator(std::size_t d, std::size_t n,
                                   std::size_t max_dim = kDefaultOperatorBudget);

/// X_h = (X + X^dagger)/2 and X_a = (i/2)(X - X^dagger), the two hermitian
/// observables whose means recombine as <X> = <X_h> - i <X_a>.
MulticopyObservable herm_part(const MulticopyObservable& x);
MulticopyObservable antiherm_part(const MulticopyObservable& x);

/// Tr(A rho^(x)n), contracted without materializing rho^(x)n.
std::complex<double> multicopy_mean(const MulticopyObservable& a,
                                    const states::DensityMatrix& rho);

/// Tr(rho^k) through the k-copy shift operator (k = 1 returns 1). Throws
/// BudgetError when d^k exceeds the operator budget; use
/// states::power_moment for the eigenvalue path in that regime.
double moment(const states::DensityMatrix& rho, std::size_t k,
              std::size_t max_dim = kDefaultOperatorBudget);

enum class Side { A, B };

/// Two-copy entanglement witness value for side X at q = 2:
///   Tr(rho_X^2) - Tr(rho_AB^2),
/// the mean of V_{XX'} (x) I - V_{AA'} (x) V_{BB'} on rho_AB^(x)2.
/// Nonnegative on all separable states.
double witness_value_q2(const states::DensityMatrix& rho_ab, std::size_t d_a,
                        std::size_t d_b, Side side,
                        std::size_t max_dim = kDefaultOperatorBudget);

/// Materialized four-party witness observable, ordered [A, B, A', B'].
MulticopyObservable witness_observable_q2(std::size_t d_a, std::size_t d_b,
                                          Side side,
                                          std::size_t max_dim = kDefaultOperatorBudget);

struct WitnessReport {
  double value_a = 0.0;
  double value_b = 0.0;
  bool entangled_detected = false;
  double q = 2.0;
};

/// Both sides at q = 2; detection at tolerance 1e-9.
WitnessReport witness_q2(const states::DensityMatrix& rho_ab, std::size_t d_a,
                         std::size_t d_b,
                         std::size_t max_dim = kDefaultOperatorBudget);

/// n-copy generalisation (n >= 3): Tr(rho_X^n) - Tr(rho_AB^n), evaluated
/// through hermitian/antihermitian parts of shift operators (two hermitian
/// observables per trace). Nonnegative on separable states.
double quasi_witness_qn(const states::DensityMatrix& rho_ab, std::size_t d_a,
                        std::size_t d_b, Side side, std::size_t n,
                        std::size_t max_dim = kDefaultOperatorBudget);

struct EntropicCheckEntry {
  double q = 0.0;
  double diff_a = 0.0;  // S_q(rho_AB) - S_q(rho_A)
  double diff_b = 0.0;
};

struct EntropicCheckReport {
  std::vector<EntropicCheckEntry> entries;
  bool entangled_detected = false;
};

/// Tsallis-entropy separability conditions S_q(rho_AB) - S_q(rho_X) >= 0
/// evaluated from eigenvalues for each listed q; detection when any
/// difference falls below -1e-9.
EntropicCheckReport entropic_separability_check(const states::DensityMatrix& rho_ab,
                                                std::size_t d_a, std::size_t d_b,
                                                const std::vector<double>& qs);

}  // namespace qspa::multicopy
