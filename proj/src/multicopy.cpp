#include "qspa/multicopy.hpp"

#include <cmath>
#include <sstream>

#include "qspa/error.hpp"

namespace qspa::multicopy {

namespace {

std::size_t checked_power(std::size_t d, std::size_t n, std::size_t max_dim,
                          const char* what) {
  std::size_t dim = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (dim > max_dim / d) {
      std::ostringstream msg;
      msg << what << ": operator dimension " << d << "^" << n
          << " exceeds the budget of " << max_dim
          << "; use the eigenvalue path instead";
      throw BudgetError(msg.str());
    }
    dim *= d;
  }
  if (dim > max_dim) {
    std::ostringstream msg;
    msg << what << ": operator dimension " << dim << " exceeds the budget of "
        << max_dim << "; use the eigenvalue path instead";
    throw BudgetError(msg.str());
  }
  return dim;
}

void require_state_dim(const MulticopyObservable& a,
                       const states::DensityMatrix& rho) {
  if (a.d != rho.dim()) {
    std::ostringstream msg;
    msg << "observable expects single-copy dimension " << a.d
        << " but the state has dimension " << rho.dim();
    throw DimensionError(msg.str());
  }
}

}  // namespace

ComplexMatrix tensor_permutation_operator(const std::vector<std::size_t>& dims,
                                          const std::vector<std::size_t>& new_order) {
  if (dims.size() != new_order.size())
    throw DimensionError("permutation length does not match subsystem count");
  std::vector<bool> seen(dims.size(), false);
  for (std::size_t s : new_order) {
    if (s >= dims.size() || seen[s])
      throw DimensionError("new_order is not a permutation of the subsystems");
    seen[s] = true;
  }

  std::size_t total = 1;
  for (std::size_t d : dims) total *= d;
  // Output slot t carries subsystem new_order[t]; its stride follows the
  // permuted dimension list.
  std::vector<std::size_t> out_stride(dims.size(), 1);
  for (std::size_t t = dims.size(); t-- > 1;)
    out_stride[t - 1] = out_stride[t] * dims[new_order[t]];

  ComplexMatrix p(total, total);
  std::vector<std::size_t> digits(dims.size(), 0);
  for (std::size_t col = 0; col < total; ++col) {
    std::size_t rest = col;
    for (std::size_t s = dims.size(); s-- > 0;) {
      digits[s] = rest % dims[s];
      rest /= dims[s];
    }
    std::size_t row = 0;
    for (std::size_t t = 0; t < dims.size(); ++t)
      row += digits[new_order[t]] * out_stride[t];
    p(row, col) = 1.0;
  }
  return p;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m,
                                 const std::vector<std::size_t>& dims,
                                 const std::vector<std::size_t>& new_order) {
  const ComplexMatrix p = tensor_permutation_operator(dims, new_order);
  return p * m * p.dagger();
}

MulticopyObservable swap_operator(std::size_t d) {
  if (d < 1) throw DimensionError("swap_operator needs d >= 1");
  MulticopyObservable out;
  out.n = 2;
  out.d = d;
  out.op = tensor_permutation_operator({d, d}, {1, 0});
  out.hermitian = true;
  return out;
}

MulticopyObservable shift_operator(std::size_t d, std::size_t n,
                                   std::size_t max_dim) {
  if (d < 1) throw DimensionError("shift_operator needs d >= 1");
  if (n < 2) throw DimensionError("shift_operator needs n >= 2");
  checked_power(d, n, max_dim, "shift_operator");

  // V (u_1 (x) ... (x) u_n) = u_2 (x) ... (x) u_n (x) u_1: slot t of the
  // output carries old slot t+1 (cyclically).
  std::vector<std::size_t> dims(n, d), order(n);
  for (std::size_t t = 0; t < n; ++t) order[t] = (t + 1) % n;
  MulticopyObservable out;
  out.n = n;
  out.d = d;
  out.op = tensor_permutation_operator(dims, order);
  out.hermitian = (n <= 2);
  return out;
}

MulticopyObservable herm_part(const MulticopyObservable& x) {
  MulticopyObservable out;
  out.n = x.n;
  out.d = x.d;
  out.op = (x.op + x.op.dagger()).scaled(0.5);
  out.hermitian = true;
  return out;
}

MulticopyObservable antiherm_part(const MulticopyObservable& x) {
  MulticopyObservable out;
  out.n = x.n;
  out.d = x.d;
  out.op = (x.op - x.op.dagger()).scaled(Complex(0.0, 0.5));
  out.hermitian = true;
  return out;
}

std::complex<double> multicopy_mean(const MulticopyObservable& a,
                                    const states::DensityMatrix& rho) {
  require_state_dim(a, rho);
  const std::size_t d = a.d;
  const std::size_t n = a.n;
  const std::size_t dim = a.op.rows();

  // Tr(A rho^(x)n) = sum_{I,J} A_{I,J} prod_t rho_{j_t, i_t}; the digit
  // loops keep memory at O(1) instead of materializing rho^(x)n.
  const ComplexMatrix& mat = rho.mat();
  std::vector<std::size_t> di(n), dj(n);
  Complex acc = 0.0;
  for (std::size_t row = 0; row < dim; ++row) {
    std::size_t rest = row;
    for (std::size_t t = n; t-- > 0;) {
      di[t] = rest % d;
      rest /= d;
    }
    for (std::size_t col = 0; col < dim; ++col) {
      const Complex a_rc = a.op(row, col);
      if (a_rc == 0.0) continue;
      rest = col;
      for (std::size_t t = n; t-- > 0;) {
        dj[t] = rest % d;
        rest /= d;
      }
      Complex weight = 1.0;
      for (std::size_t t = 0; t < n; ++t) weight *= mat(dj[t], di[t]);
      acc += a_rc * weight;
    }
  }
  return acc;
}

double moment(const states::DensityMatrix& rho, std::size_t k,
              std::size_t max_dim) {
  if (k < 1) throw DimensionError("moment needs k >= 1");
  if (k == 1) return 1.0;
  const MulticopyObservable shift = shift_operator(rho.dim(), k, max_dim);
  return multicopy_mean(shift, rho).real();
}

namespace {

/// Witness building block: operators live on the two-copy system in the
/// natural ordering [A, B, A', B'].
ComplexMatrix double_swap(std::size_t d_a, std::size_t d_b) {
  const ComplexMatrix v = kron(swap_operator(d_a).op, swap_operator(d_b).op);
  return permute_subsystems(v, {d_a, d_a, d_b, d_b}, {0, 2, 1, 3});
}

ComplexMatrix single_side_swap(std::size_t d_a, std::size_t d_b, Side side) {
  ComplexMatrix raw = (side == Side::A)
                          ? kron(swap_operator(d_a).op,
                                 ComplexMatrix::identity(d_b * d_b))
                          : kron(ComplexMatrix::identity(d_a * d_a),
                                 swap_operator(d_b).op);
  // raw is ordered [A, A', B, B']; interleave back to [A, B, A', B'].
  return permute_subsystems(raw, {d_a, d_a, d_b, d_b}, {0, 2, 1, 3});
}

void require_bipartite(const states::DensityMatrix& rho_ab, std::size_t d_a,
                       std::size_t d_b) {
  if (d_a < 1 || d_b < 1 || rho_ab.dim() != d_a * d_b) {
    std::ostringstream msg;
    msg << "state dimension " << rho_ab.dim()
        << " does not factor as requested " << d_a << " x " << d_b;
    throw DimensionError(msg.str());
  }
}

}  // namespace

MulticopyObservable witness_observable_q2(std::size_t d_a, std::size_t d_b,
                                          Side side, std::size_t max_dim) {
  checked_power(d_a * d_b, 2, max_dim, "witness_observable_q2");
  MulticopyObservable out;
  out.n = 2;
  out.d = d_a * d_b;
  out.op = single_side_swap(d_a, d_b, side) - double_swap(d_a, d_b);
  out.hermitian = true;
  return out;
}

double witness_value_q2(const states::DensityMatrix& rho_ab, std::size_t d_a,
                        std::size_t d_b, Side side, std::size_t max_dim) {
  require_bipartite(rho_ab, d_a, d_b);
  const MulticopyObservable w = witness_observable_q2(d_a, d_b, side, max_dim);
  return multicopy_mean(w, rho_ab).real();
}

WitnessReport witness_q2(const states::DensityMatrix& rho_ab, std::size_t d_a,
                         std::size_t d_b, std::size_t max_dim) {
  WitnessReport report;
  report.q = 2.0;
  report.value_a = witness_value_q2(rho_ab, d_a, d_b, Side::A, max_dim);
  report.value_b = witness_value_q2(rho_ab, d_a, d_b, Side::B, max_dim);
  report.entangled_detected =
      report.value_a < -1e-9 || report.value_b < -1e-9;
  return report;
}

double quasi_witness_qn(const states::DensityMatrix& rho_ab, std::size_t d_a,
                        std::size_t d_b, Side side, std::size_t n,
                        std::size_t max_dim) {
  require_bipartite(rho_ab, d_a, d_b);
  if (n < 3)
    throw DimensionError("quasi_witness_qn needs n >= 3 (use witness_q2)");
  const std::size_t d = d_a * d_b;
  checked_power(d, n, max_dim, "quasi_witness_qn");

  // Tr(rho_AB^n) from the full shift; two hermitian observables.
  const MulticopyObservable shift_full = shift_operator(d, n, max_dim);
  const Complex full = multicopy_mean(herm_part(shift_full), rho_ab).real() -
                       Complex(0.0, 1.0) *
                           multicopy_mean(antiherm_part(shift_full), rho_ab).real();

  // Tr(rho_X^n): shift the X factors only, identity elsewhere. Build in
  // grouped ordering [X_1..X_n, Y_1..Y_n], then interleave to
  // [A_1, B_1, ..., A_n, B_n].
  const std::size_t d_x = (side == Side::A) ? d_a : d_b;
  const std::size_t d_y = (side == Side::A) ? d_b : d_a;
  std::size_t dim_y = 1;
  for (std::size_t i = 0; i < n; ++i) dim_y *= d_y;
  const ComplexMatrix grouped =
      kron(shift_operator(d_x, n, max_dim).op, ComplexMatrix::identity(dim_y));

  std::vector<std::size_t> dims(2 * n);
  std::vector<std::size_t> order(2 * n);
  for (std::size_t t = 0; t < n; ++t) {
    dims[t] = d_x;
    dims[n + t] = d_y;
    // Output slot 2t holds copy t of A, slot 2t+1 copy t of B.
    order[2 * t] = (side == Side::A) ? t : n + t;
    order[2 * t + 1] = (side == Side::A) ? n + t : t;
  }
  MulticopyObservable marginal_shift;
  marginal_shift.n = n;
  marginal_shift.d = d;
  marginal_shift.op = permute_subsystems(grouped, dims, order);
  marginal_shift.hermitian = false;

  const Complex marg =
      multicopy_mean(herm_part(marginal_shift), rho_ab).real() -
      Complex(0.0, 1.0) *
          multicopy_mean(antiherm_part(marginal_shift), rho_ab).real();

  return marg.real() - full.real();
}

EntropicCheckReport entropic_separability_check(const states::DensityMatrix& rho_ab,
                                                std::size_t d_a, std::size_t d_b,
                                                const std::vector<double>& qs) {
  require_bipartite(rho_ab, d_a, d_b);
  const ComplexMatrix red_a = partial_trace(rho_ab.mat(), {d_a, d_b}, {0});
  const ComplexMatrix red_b = partial_trace(rho_ab.mat(), {d_a, d_b}, {1});
  const states::DensityMatrix rho_a = states::DensityMatrix::validate(red_a);
  const states::DensityMatrix rho_b = states::DensityMatrix::validate(red_b);

  EntropicCheckReport report;
  for (double q : qs) {
    EntropicCheckEntry entry;
    entry.q = q;
    const double s_ab = states::tsallis_entropy(rho_ab, q).value;
    entry.diff_a = s_ab - states::tsallis_entropy(rho_a, q).value;
    entry.diff_b = s_ab - states::tsallis_entropy(rho_b, q).value;
    if (entry.diff_a < -1e-9 || entry.diff_b < -1e-9)
      report.entangled_detected = true;
    report.entries.push_back(entry);
  }
  return report;
}

}  // namespace qspa::multicopy
