#include "qspa/states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qspa/eig.hpp"
#include "qspa/error.hpp"
#include "qspa/tolerances.hpp"

namespace qspa::states {

DensityMatrix DensityMatrix::validate(const ComplexMatrix& mat) {
  if (!mat.is_square()) throw DimensionError("density matrix must be square");
  if (mat.rows() == 0) throw DimensionError("density matrix must be nonempty");
  if (!mat.all_finite())
    throw Error(ErrorKind::validation, "density matrix has non-finite entries");

  const Tolerances& tol = tolerances();
  const double defect = mat.hermiticity_defect();
  if (defect > tol.hermiticity) {
    std::ostringstream msg;
    msg << "density matrix not hermitian, defect " << defect;
    throw HermiticityError(msg.str(), defect);
  }
  const double tr = mat.trace().real();
  if (std::abs(tr - 1.0) > tol.hermiticity) {
    std::ostringstream msg;
    msg << "density matrix trace is " << tr << ", expected 1";
    throw TraceError(msg.str(), tr);
  }
  const HermitianEig eig = hermitian_eig(mat);
  const double min_eig = eig.eigenvalues.front();
  if (min_eig < -tol.psd_clip) {
    std::ostringstream msg;
    msg << "density matrix has negative eigenvalue " << min_eig;
    throw PositivityError(msg.str(), min_eig);
  }
  return DensityMatrix(mat);
}

std::vector<double> DensityMatrix::eigenvalues() const {
  std::vector<double> vals = hermitian_eig(mat_).eigenvalues;
  for (double& v : vals) v = std::clamp(v, 0.0, 1.0);
  return vals;
}

DensityMatrix random_pure(std::size_t d, SplitMix64& rng) {
  if (d < 1) throw DimensionError("random_pure needs d >= 1");
  std::vector<Complex> psi(d);
  double norm2 = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    psi[i] = rng.complex_gaussian();
    norm2 += std::norm(psi[i]);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  ComplexMatrix mat(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      mat(i, j) = psi[i] * std::conj(psi[j]) * (inv * inv);
  return DensityMatrix::validate(mat);
}

DensityMatrix random_mixed(std::size_t d, SplitMix64& rng) {
  if (d < 1) throw DimensionError("random_mixed needs d >= 1");
  ComplexMatrix g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g(i, j) = rng.complex_gaussian();
  ComplexMatrix w = g * g.dagger();
  const double tr = w.trace().real();
  return DensityMatrix::validate(w.scaled(1.0 / tr));
}

double purity(const DensityMatrix& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for hermitian rho.
  double s = 0.0;
  for (const Complex& z : rho.mat().entries()) s += std::norm(z);
  return s;
}

double power_moment(const DensityMatrix& rho, std::size_t k) {
  if (k < 1) throw DimensionError("power_moment needs k >= 1");
  if (k == 1) return 1.0;
  double s = 0.0;
  for (double p : rho.eigenvalues()) s += std::pow(p, static_cast<double>(k));
  return s;
}

namespace {

double power_sum(const DensityMatrix& rho, double q) {
  double s = 0.0;
  for (double p : rho.eigenvalues()) {
    if (p < 1e-14) continue;
    s += std::pow(p, q);
  }
  return s;
}

}  // namespace

EntropyValue tsallis_entropy(const DensityMatrix& rho, double q) {
  if (q <= 0.0)
    throw Error(ErrorKind::validation, "tsallis entropy needs q > 0");
  if (q == 1.0)
    throw Error(ErrorKind::validation,
                "tsallis entropy undefined at q = 1; use the von Neumann entropy");
  return EntropyValue{EntropyKind::tsallis, q, (1.0 - power_sum(rho, q)) / (q - 1.0)};
}

EntropyValue renyi_entropy(const DensityMatrix& rho, double alpha) {
  if (alpha <= 0.0)
    throw Error(ErrorKind::validation, "renyi entropy needs alpha > 0");
  if (alpha == 1.0)
    throw Error(ErrorKind::validation,
                "renyi entropy undefined at alpha = 1; use the von Neumann entropy");
  return EntropyValue{EntropyKind::renyi, alpha,
                      std::log(power_sum(rho, alpha)) / (1.0 - alpha)};
}

EntropyValue von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double p : rho.eigenvalues()) {
    if (p < 1e-14) continue;
    s -= p * std::log(p);
  }
  return EntropyValue{EntropyKind::von_neumann, 1.0, s};
}

DensityMatrix max_entangled(std::size_t d) {
  if (d < 2) throw DimensionError("max_entangled needs d >= 2");
  ComplexMatrix mat(d * d, d * d);
  const double inv_d = 1.0 / static_cast<double>(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      mat(i * d + i, j * d + j) = inv_d;
  return DensityMatrix::validate(mat);
}

}  // namespace qspa::states
