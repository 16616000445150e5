#include "qspa/measure.hpp"

#include <cmath>
#include <sstream>

#include "qspa/eig.hpp"
#include "qspa/error.hpp"

namespace qspa::measure {

ShotEstimate sample_observable(const ComplexMatrix& o,
                               const states::DensityMatrix& sigma,
                               std::size_t shots, SplitMix64& rng,
                               const std::string& observable_id) {
  if (!o.is_square() || o.rows() != sigma.dim()) {
    std::ostringstream msg;
    msg << "observable is " << o.rows() << "x" << o.cols()
        << " but the state has dimension " << sigma.dim();
    throw DimensionError(msg.str());
  }
  if (shots == 0)
    throw Error(ErrorKind::validation, "sample_observable needs shots >= 1");

  const HermitianEig eig = hermitian_eig(o);
  const std::size_t n = eig.eigenvalues.size();

  // Per-eigenvector weights <v_i| sigma |v_i>, merged over eigenspaces
  // whose eigenvalues agree within 1e-10.
  std::vector<double> outcomes;
  std::vector<double> probs;
  double total = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    double value_acc = 0.0;
    double prob_acc = 0.0;
    while (j < n && eig.eigenvalues[j] - eig.eigenvalues[i] <= 1e-10) {
      Complex quad = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        Complex row_acc = 0.0;
        for (std::size_t c = 0; c < n; ++c)
          row_acc += sigma.mat()(r, c) * eig.eigenvectors(c, j);
        quad += std::conj(eig.eigenvectors(r, j)) * row_acc;
      }
      value_acc += eig.eigenvalues[j];
      prob_acc += std::max(0.0, quad.real());
      ++j;
    }
    outcomes.push_back(value_acc / static_cast<double>(j - i));
    probs.push_back(prob_acc);
    total += prob_acc;
    i = j;
  }
  if (std::abs(total - 1.0) > 1e-8) {
    std::ostringstream msg;
    msg << "outcome probabilities sum to " << total
        << "; eigenbasis weights are numerically inconsistent";
    throw Error(ErrorKind::numeric, msg.str());
  }
  for (double& p : probs) p /= total;

  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t s = 0; s < shots; ++s) {
    const double x = outcomes[rng.categorical(probs)];
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / static_cast<double>(shots);
  double std_error = 0.0;
  if (shots > 1) {
    const double var = std::max(
        0.0, (sum_sq - static_cast<double>(shots) * mean * mean) /
                 static_cast<double>(shots - 1));
    std_error = std::sqrt(var / static_cast<double>(shots));
  }
  return ShotEstimate{mean, std_error, shots, observable_id};
}

namespace {

states::DensityMatrix tensor_copies(const states::DensityMatrix& rho,
                                    std::size_t n) {
  return states::DensityMatrix::validate(kron_power(rho.mat(), n));
}

}  // namespace

MulticopyShotEstimate estimate_multicopy(const multicopy::MulticopyObservable& a,
                                         const states::DensityMatrix& rho,
                                         std::size_t shots, SplitMix64& rng) {
  if (a.d != rho.dim()) {
    std::ostringstream msg;
    msg << "observable expects single-copy dimension " << a.d
        << " but the state has dimension " << rho.dim();
    throw DimensionError(msg.str());
  }
  const states::DensityMatrix sigma = tensor_copies(rho, a.n);

  MulticopyShotEstimate out;
  out.shots_per_observable = shots;
  if (a.hermitian) {
    const ShotEstimate est = sample_observable(a.op, sigma, shots, rng, "A");
    out.mean = est.mean;
    out.std_error = est.std_error;
    out.observables_used = 1;
    return out;
  }
  SplitMix64 rng_h = rng.split(0);
  SplitMix64 rng_a = rng.split(1);
  const ShotEstimate est_h =
      sample_observable(multicopy::herm_part(a).op, sigma, shots, rng_h, "A_h");
  const ShotEstimate est_a = sample_observable(multicopy::antiherm_part(a).op,
                                               sigma, shots, rng_a, "A_a");
  out.mean = std::complex<double>(est_h.mean, -est_a.mean);
  out.std_error = std::hypot(est_h.std_error, est_a.std_error);
  out.observables_used = 2;
  return out;
}

MomentShotResult estimate_moments_shots(const states::DensityMatrix& rho,
                                        std::size_t k_max,
                                        std::size_t shots_per_moment,
                                        SplitMix64& rng, std::size_t max_dim) {
  if (k_max < 2)
    throw Error(ErrorKind::validation, "estimate_moments_shots needs k_max >= 2");

  MomentShotResult out;
  out.moments.d = k_max;
  out.moments.m.assign(k_max, 0.0);
  out.moments.m[0] = 1.0;
  out.std_errors.assign(k_max, 0.0);

  for (std::size_t k = 2; k <= k_max; ++k) {
    const multicopy::MulticopyObservable shift =
        multicopy::shift_operator(rho.dim(), k, max_dim);
    SplitMix64 stream = rng.split(k);
    const MulticopyShotEstimate est =
        estimate_multicopy(shift, rho, shots_per_moment, stream);
    out.moments.m[k - 1] = est.mean.real();
    out.std_errors[k - 1] = est.std_error;
    out.observables_used += est.observables_used;
  }
  return out;
}

}  // namespace qspa::measure
