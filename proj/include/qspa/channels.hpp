#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qspa/complex_matrix.hpp"
#include "qspa/rng.hpp"
#include "qspa/states.hpp"

namespace qspa::channels {

/// Operator-sum form: x -> sum_i V_i x V_i^dagger with d_out x d_in ops.
struct KrausMap {
  std::size_t d_in = 0;
  std::size_t d_out = 0;
  std::vector<ComplexMatrix> ops;
};

/// Choi operator of a hermitian map: [id (x) map](P+), with P+ the
/// normalized maximally entangled projector and the first tensor factor
/// carrying the (untouched) input copy.
struct ChoiMatrix {
  std::size_t d_in = 0;
  std::size_t d_out = 0;
  ComplexMatrix mat;
};

/// A linear hermiticity-preserving map, held as Kraus operators (CP maps)
/// or as a Choi matrix (general hermitian maps such as transposition).
class HermitianMapSpec {
 public:
  static HermitianMapSpec from_kraus(KrausMap kraus);
  static HermitianMapSpec from_choi(ChoiMatrix choi);

  std::size_t d_in() const;
  std::size_t d_out() const;
  bool holds_kraus() const { return kraus_.has_value(); }
  const KrausMap& kraus() const { return kraus_.value(); }
  const ChoiMatrix& choi() const { return choi_.value(); }

 private:
  HermitianMapSpec() = default;
  std::optional<KrausMap> kraus_;
  std::optional<ChoiMatrix> choi_;
};

ComplexMatrix apply(const HermitianMapSpec& map, const ComplexMatrix& x);
ComplexMatrix apply(const KrausMap& map, const ComplexMatrix& x);

ChoiMatrix choi_from_map(const HermitianMapSpec& map);

/// Operator-sum reconstruction from a PSD Choi matrix. Throws NotCpError
/// (with the minimal eigenvalue) when the Choi has negativity beyond the
/// reconstruction tolerance.
KrausMap kraus_from_choi(const ChoiMatrix& choi);

/// (flag, minimal Choi eigenvalue).
std::pair<bool, double> is_cp(const HermitianMapSpec& map);
/// (flag, ||Theta^*(I) - I||_F).
std::pair<bool, double> is_tp(const HermitianMapSpec& map);

/// Adjoint map applied to the identity: sum V_i^dagger V_i in Kraus form,
/// d * transpose(Tr_out Choi) in Choi form. Tr[Theta(rho)] = Tr[Theta^*(I) rho].
ComplexMatrix adjoint_on_identity(const HermitianMapSpec& map);

/// alpha = max over states of Tr[Theta(rho)] = top eigenvalue of Theta^*(I).
/// Throws when alpha <= 0 (the optimal-approximation recipe divides by it).
double alpha_of(const HermitianMapSpec& map);

/// True when every output is proportional to the identity, i.e. the map
/// carries no Bloch-vector information to preserve.
bool is_trivial(const HermitianMapSpec& map);

/// Optimal structural physical approximation of a hermitian map:
///   theta_bar(rho) = delta I + gamma Theta(rho),
///   gamma = 1 / (lambda d d' + alpha),  delta = lambda d gamma,
/// with lambda = max(0, -lambda') and lambda' the minimal Choi eigenvalue.
struct SpaResult {
  KrausMap theta_bar;
  double lambda_prime = 0.0;
  double lambda = 0.0;
  double alpha = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
  double p_star = 0.0;
  double a = 0.0;  // noise level lambda * d
  double t = 0.0;  // normalizer lambda * d * d' + alpha
};

SpaResult spa_optimal(const HermitianMapSpec& map);

/// Approximation at explicit noise level a and normalizer t:
///   x -> (a Tr(x) I + Theta(x)) / t.
/// Requires a above the CP threshold and t large enough that all output
/// traces stay <= 1.
KrausMap spa_at(const HermitianMapSpec& map, double a, double t);

/// Completes a trace-nonincreasing map with the discard operator
/// V_0 = sqrt(I - sum V_i^dagger V_i), prepended at index 0.
KrausMap dilate_trace_nonincreasing(const KrausMap& map);

struct Realization {
  std::size_t outcome = 0;  // 0 is the discard branch
  states::DensityMatrix post_state;
  bool success = false;
};

/// Dilated map with per-outcome probabilities for a fixed input state,
/// precomputed once so repeated sampling is cheap.
struct RealizationSampler {
  std::vector<double> probs;            // normalized; index 0 discards
  std::vector<ComplexMatrix> branches;  // unnormalized V_i rho V_i^dagger
  std::size_t sample_outcome(SplitMix64& rng) const;
};

RealizationSampler prepare_realization(const KrausMap& map,
                                       const states::DensityMatrix& rho);

/// One probabilistic run of a trace-nonincreasing map: dilates, samples the
/// outcome with probability Tr(V_i rho V_i^dagger) and returns the
/// normalized conditional state.
Realization realize_probabilistic(const KrausMap& map,
                                  const states::DensityMatrix& rho,
                                  SplitMix64& rng);

/// Registry for the CLI: "transpose", "depolarize", "identity" (with or
/// without a "builtin:" prefix).
HermitianMapSpec builtin_map(const std::string& name, std::size_t d);

}  // namespace qspa::channels
