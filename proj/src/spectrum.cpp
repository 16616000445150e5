#include "qspa/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qspa/eig.hpp"
#include "qspa/error.hpp"

namespace qspa::spectrum {

void MomentVector::validate(double slack) const {
  if (d == 0 || m.size() != d)
    throw DimensionError("moment vector must carry exactly d entries");
  if (std::abs(m[0] - 1.0) > slack) {
    std::ostringstream msg;
    msg << "first moment must be 1, got " << m[0];
    throw Error(ErrorKind::validation, msg.str());
  }
  double lower = 1.0;
  for (std::size_t k = 0; k < d; ++k) {
    if (k > 0) lower /= static_cast<double>(d);
    if (m[k] > 1.0 + slack || m[k] < lower - slack) {
      std::ostringstream msg;
      msg << "moment m_" << (k + 1) << " = " << m[k]
          << " outside the admissible range [" << lower << ", 1]";
      throw Error(ErrorKind::validation, msg.str());
    }
    if (k > 0 && m[k] > m[k - 1] + slack) {
      std::ostringstream msg;
      msg << "moments must be nonincreasing: m_" << (k + 1) << " = " << m[k]
          << " exceeds m_" << k << " = " << m[k - 1];
      throw Error(ErrorKind::validation, msg.str());
    }
  }
}

std::vector<double> newton_elementary(const MomentVector& mv) {
  if (mv.m.empty() || std::abs(mv.m[0] - 1.0) > 1e-9)
    throw Error(ErrorKind::validation, "newton_elementary needs m_1 = 1");
  const std::size_t d = mv.d;
  std::vector<double> e(d + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t k = 1; k <= d; ++k) {
    double acc = 0.0;
    double sign = 1.0;
    for (std::size_t i = 1; i <= k; ++i) {
      acc += sign * e[k - i] * mv.m[i - 1];
      sign = -sign;
    }
    e[k] = acc / static_cast<double>(k);
  }
  return std::vector<double>(e.begin() + 1, e.end());
}

namespace {

std::vector<std::complex<double>> poly_coefficients(const std::vector<double>& e) {
  // Monic polynomial with elementary symmetric coefficients:
  // p(x) = x^d - e_1 x^{d-1} + e_2 x^{d-2} - ... ; stored low-to-high.
  const std::size_t d = e.size();
  std::vector<std::complex<double>> c(d + 1);
  c[d] = 1.0;
  double sign = -1.0;
  for (std::size_t k = 1; k <= d; ++k) {
    c[d - k] = sign * e[k - 1];
    sign = -sign;
  }
  return c;
}

std::complex<double> poly_eval(const std::vector<std::complex<double>>& c,
                               std::complex<double> x) {
  std::complex<double> acc = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
  return acc;
}

double poly_noise_floor(const std::vector<std::complex<double>>& c,
                        std::complex<double> x) {
  // Rounding-error scale of Horner evaluation at x.
  double acc = 0.0;
  double xk = 1.0;
  const double ax = std::abs(x);
  for (const auto& ck : c) {
    acc += std::abs(ck) * xk;
    xk *= std::max(ax, 1e-30);
  }
  return 64.0 * 1.1102230246251565e-16 * std::max(acc, 1e-30);
}

}  // namespace

std::vector<std::complex<double>> roots_from_elementary(const std::vector<double>& e) {
  const std::size_t d = e.size();
  if (d == 0) return {};
  const std::vector<std::complex<double>> c = poly_coefficients(e);
  if (d == 1) return {std::complex<double>(e[0], 0.0)};

  // Initial guesses on a perturbed circle sized by the coefficient bound.
  double bound = 0.0;
  for (std::size_t k = 0; k < d; ++k) bound = std::max(bound, std::abs(c[k]));
  const double radius = 1.0 + bound;
  std::vector<std::complex<double>> z(d);
  for (std::size_t k = 0; k < d; ++k) {
    const double angle = 6.283185307179586 * static_cast<double>(k) /
                             static_cast<double>(d) +
                         0.42;
    z[k] = radius * std::complex<double>(std::cos(angle), std::sin(angle));
  }

  const int max_iter = 500;
  const double update_tol = 1e-13;
  double residual = 0.0;
  for (int iter = 0; iter < max_iter; ++iter) {
    double max_update = 0.0;
    residual = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      std::complex<double> denom = 1.0;
      for (std::size_t j = 0; j < d; ++j) {
        if (j == i) continue;
        std::complex<double> diff = z[i] - z[j];
        if (std::abs(diff) < 1e-30) diff = 1e-30;
        denom *= diff;
      }
      const std::complex<double> value = poly_eval(c, z[i]);
      residual = std::max(residual, std::abs(value));
      const std::complex<double> step = value / denom;
      z[i] -= step;
      max_update = std::max(max_update, std::abs(step));
    }
    if (max_update <= update_tol) return z;
    // Multiple roots stall above the update tolerance once the polynomial
    // evaluates at its rounding floor; accept those iterates.
    bool at_floor = true;
    for (std::size_t i = 0; i < d && at_floor; ++i)
      at_floor = std::abs(poly_eval(c, z[i])) <= poly_noise_floor(c, z[i]);
    if (at_floor) return z;
  }
  std::ostringstream msg;
  msg << "Durand-Kerner iteration did not converge in " << max_iter
      << " rounds; last residual " << residual;
  throw ConvergenceError(msg.str(), residual);
}

SpectrumEstimate estimate_spectrum(const MomentVector& mv) {
  mv.validate(0.05);
  const std::vector<double> e = newton_elementary(mv);
  const std::vector<std::complex<double>> roots = roots_from_elementary(e);

  double worst_imag = 0.0;
  for (const auto& r : roots) worst_imag = std::max(worst_imag, std::abs(r.imag()));
  if (worst_imag > 0.05) {
    std::ostringstream msg;
    msg << "recovered roots have imaginary part " << worst_imag
        << "; the moments are inconsistent with any spectrum";
    throw Error(ErrorKind::numeric, msg.str());
  }

  SpectrumEstimate est;
  est.eigenvalues.reserve(roots.size());
  bool clipped = false;
  double sum = 0.0;
  for (const auto& r : roots) {
    double v = r.real();
    if (v < 0.0 || v > 1.0) {
      v = std::clamp(v, 0.0, 1.0);
      if (std::abs(v - r.real()) > 1e-12) clipped = true;
    }
    est.eigenvalues.push_back(v);
    sum += v;
  }
  if (sum <= 0.0)
    throw Error(ErrorKind::numeric, "recovered spectrum sums to zero");
  if (std::abs(sum - 1.0) > 1e-12) clipped = true;
  for (double& v : est.eigenvalues) v /= sum;
  est.projected = clipped;
  std::sort(est.eigenvalues.rbegin(), est.eigenvalues.rend());

  for (std::size_t k = 1; k <= mv.d; ++k) {
    double mk = 0.0;
    for (double v : est.eigenvalues) mk += std::pow(v, static_cast<double>(k));
    est.residual = std::max(est.residual, std::abs(mk - mv.m[k - 1]));
  }
  return est;
}

MomentVector moments_from_eigenvalues(const states::DensityMatrix& rho) {
  MomentVector mv;
  mv.d = rho.dim();
  mv.m.resize(mv.d);
  mv.m[0] = 1.0;
  for (std::size_t k = 2; k <= mv.d; ++k)
    mv.m[k - 1] = states::power_moment(rho, k);
  return mv;
}

SpectrumFromStateResult spectrum_from_state(const states::DensityMatrix& rho,
                                            std::size_t max_dim) {
  const std::size_t d = rho.dim();
  SpectrumFromStateResult out;
  out.moments.d = d;
  out.moments.m.assign(d, 0.0);
  out.moments.m[0] = 1.0;

  bool fits = true;
  std::size_t dim = 1;
  for (std::size_t i = 0; i < d && fits; ++i) {
    if (dim > max_dim / std::max<std::size_t>(d, 1)) fits = false;
    dim *= d;
  }
  fits = fits && dim <= max_dim;

  if (fits && d >= 2) {
    // V^(2) is hermitian (one observable); each k >= 3 needs the hermitian
    // and antihermitian shift parts: 2d - 3 observables in total.
    out.method = "shift";
    out.observables_used = 2 * d - 3;
    for (std::size_t k = 2; k <= d; ++k) {
      const multicopy::MulticopyObservable shift =
          multicopy::shift_operator(d, k, max_dim);
      if (k == 2) {
        out.moments.m[k - 1] = multicopy::multicopy_mean(shift, rho).real();
      } else {
        const double h =
            multicopy::multicopy_mean(multicopy::herm_part(shift), rho).real();
        const double a =
            multicopy::multicopy_mean(multicopy::antiherm_part(shift), rho).real();
        // <V> = <V_h> - i <V_a>; the trace of a power is real, so the
        // antihermitian reading only cross-checks.
        (void)a;
        out.moments.m[k - 1] = h;
      }
    }
  } else {
    out.method = "eig";
    out.observables_used = 0;
    if (!fits) {
      std::ostringstream note;
      note << "operator dimension " << d << "^" << d
           << " exceeds the budget of " << max_dim
           << "; moments taken from the eigenvalue path";
      out.notice = note.str();
    }
    out.moments = moments_from_eigenvalues(rho);
  }

  out.estimate = estimate_spectrum(out.moments);
  return out;
}

}  // namespace qspa::spectrum
