#include "qspa/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qspa/error.hpp"
#include "qspa/tolerances.hpp"

namespace qspa {

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t p = 0; p < a.rows(); ++p)
    for (std::size_t q = p + 1; q < a.cols(); ++q) s += std::norm(a(p, q));
  return std::sqrt(2.0 * s);
}

}  // namespace

HermitianEig hermitian_eig(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("hermitian_eig needs a square matrix");
  const double defect = m.hermiticity_defect();
  if (defect > tolerances().hermiticity) {
    std::ostringstream msg;
    msg << "hermitian_eig input not hermitian, defect " << defect;
    throw HermiticityError(msg.str(), defect);
  }

  const std::size_t n = m.rows();
  // Symmetrize so sub-tolerance asymmetry cannot bias the rotations.
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = std::max(1.0, a.frobenius_norm());
  const double target = 1e-12 * scale;
  const int max_sweeps = 100;

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) <= target) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r <= 1e-300) continue;
        const Complex phase = apq / r;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (app - aqq) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sigma = t * c;
        // 2x2 unitary on (p,q): [[c, -conj(s)], [s, c]], s = sigma*conj(phase).
        const Complex s = sigma * std::conj(phase);
        const Complex s_conj = std::conj(s);

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp + s * akq;
          a(k, q) = -s_conj * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk + s_conj * aqk;
          a(q, k) = -s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp + s * vkq;
          v(k, q) = -s_conj * vkp + c * vkq;
        }
        // Rotation zeroes the (p,q) pair; stamp out rounding residue.
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }
  const double residual = off_diagonal_norm(a);
  if (residual > 1e3 * target) {
    std::ostringstream msg;
    msg << "Jacobi iteration failed to converge after " << max_sweeps
        << " sweeps, off-diagonal norm " << residual;
    throw ConvergenceError(msg.str(), residual);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });

  HermitianEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.eigenvalues[c] = diag[order[c]];
    for (std::size_t rix = 0; rix < n; ++rix)
      out.eigenvectors(rix, c) = v(rix, order[c]);
  }
  return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  HermitianEig eig = hermitian_eig(m);
  const double clip = tolerances().psd_clip;
  for (double lambda : eig.eigenvalues) {
    if (lambda < -clip) {
      std::ostringstream msg;
      msg << "psd_sqrt input has negative eigenvalue " << lambda;
      throw PositivityError(msg.str(), lambda);
    }
  }
  const std::size_t n = m.rows();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    // Eigenvalues inside the clip band count as exact zeros; otherwise the
    // square root amplifies rounding noise to sqrt(eps).
    const double lambda = eig.eigenvalues[k];
    const double root = lambda <= clip ? 0.0 : std::sqrt(lambda);
    if (root == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex uik = eig.eigenvectors(i, k);
      if (uik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += root * uik * std::conj(eig.eigenvectors(j, k));
    }
  }
  return out;
}

}  // namespace qspa
