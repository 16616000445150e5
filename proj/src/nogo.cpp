#include "qspa/nogo.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "qspa/error.hpp"

namespace qspa::nogo {

ComplexMatrix sym_projector(std::size_t d, std::size_t n, std::size_t max_dim) {
  if (d < 1 || n < 1) throw DimensionError("sym_projector needs d, n >= 1");
  std::size_t dim = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (dim > max_dim / d) {
      std::ostringstream msg;
      msg << "sym_projector dimension " << d << "^" << n
          << " exceeds the budget of " << max_dim;
      throw BudgetError(msg.str());
    }
    dim *= d;
  }

  std::vector<std::size_t> dims(n, d);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});

  ComplexMatrix acc(dim, dim);
  std::size_t count = 0;
  do {
    acc += multicopy::tensor_permutation_operator(dims, perm);
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc.scaled(1.0 / static_cast<double>(count));
}

NogoGapReport nogo_gap(const states::DensityMatrix& rho, std::size_t n,
                       std::size_t max_dim) {
  if (n < 2) throw DimensionError("nogo_gap needs n >= 2");
  const ComplexMatrix p_sym = sym_projector(rho.dim(), n, max_dim);

  multicopy::MulticopyObservable obs;
  obs.n = n;
  obs.d = rho.dim();
  obs.op = p_sym;
  obs.hermitian = true;

  NogoGapReport report;
  report.d = rho.dim();
  report.n = n;
  report.state_purity = states::purity(rho);
  report.sym_overlap = multicopy::multicopy_mean(obs, rho).real();
  report.target = states::power_moment(rho, n);
  report.gap = report.sym_overlap - report.target;
  return report;
}

ComplexMatrix map2_target(const states::DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  const double noise_weight = 1.0 - states::purity(rho);
  ComplexMatrix out = rho.mat() * rho.mat();
  const double iso = noise_weight / static_cast<double>(d);
  for (std::size_t i = 0; i < d; ++i) out(i, i) += iso;
  return out;
}

ComplexMatrix symmetrize_trace_out(const ComplexMatrix& sigma, std::size_t d) {
  if (!sigma.is_square() || sigma.rows() != d * d) {
    std::ostringstream msg;
    msg << "two-copy input must be " << d * d << "x" << d * d << ", got "
        << sigma.rows() << "x" << sigma.cols();
    throw DimensionError(msg.str());
  }
  const ComplexMatrix v = multicopy::swap_operator(d).op;
  const ComplexMatrix symmetrized = (sigma + v * sigma * v).scaled(0.5);
  return partial_trace(symmetrized, {d, d}, {0});
}

Map2CheckReport map2_linearization_check(std::size_t d, std::size_t trials,
                                         SplitMix64& rng) {
  if (d < 2) throw DimensionError("map2_linearization_check needs d >= 2");
  if (trials < 1)
    throw Error(ErrorKind::validation, "map2_linearization_check needs trials >= 1");

  Map2CheckReport report;
  report.d = d;
  report.trials = trials;
  double sum = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const states::DensityMatrix rho = states::random_mixed(d, rng);
    const ComplexMatrix two_copy = kron(rho.mat(), rho.mat());
    const ComplexMatrix candidate = symmetrize_trace_out(two_copy, d);
    const double dev = (candidate - map2_target(rho)).frobenius_norm();
    report.max_deviation = std::max(report.max_deviation, dev);
    sum += dev;
  }
  report.mean_deviation = sum / static_cast<double>(trials);
  return report;
}

}  // namespace qspa::nogo
