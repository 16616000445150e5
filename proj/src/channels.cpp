#include "qspa/channels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qspa/eig.hpp"
#include "qspa/error.hpp"
#include "qspa/tolerances.hpp"

namespace qspa::channels {

namespace {

void require_square(const ComplexMatrix& x, std::size_t d, const char* what) {
  if (!x.is_square() || x.rows() != d) {
    std::ostringstream msg;
    msg << what << ": expected a " << d << "x" << d << " matrix, got "
        << x.rows() << "x" << x.cols();
    throw DimensionError(msg.str());
  }
}

/// Choi of the "maximal noise" map x -> Tr(x) I_{d_out}, which is
/// I_{d d'} / d under the normalized-P+ convention.
ComplexMatrix noise_choi(std::size_t d_in, std::size_t d_out) {
  return ComplexMatrix::identity(d_in * d_out)
      .scaled(1.0 / static_cast<double>(d_in));
}

}  // namespace

HermitianMapSpec HermitianMapSpec::from_kraus(KrausMap kraus) {
  if (kraus.ops.empty())
    throw Error(ErrorKind::validation, "Kraus map needs at least one operator");
  if (kraus.d_in == 0 || kraus.d_out == 0)
    throw DimensionError("Kraus map needs positive dimensions");
  for (const ComplexMatrix& v : kraus.ops) {
    if (v.rows() != kraus.d_out || v.cols() != kraus.d_in) {
      std::ostringstream msg;
      msg << "Kraus operator is " << v.rows() << "x" << v.cols()
          << ", expected " << kraus.d_out << "x" << kraus.d_in;
      throw DimensionError(msg.str());
    }
    if (!v.all_finite())
      throw Error(ErrorKind::validation, "Kraus operator has non-finite entries");
  }
  HermitianMapSpec spec;
  spec.kraus_ = std::move(kraus);
  return spec;
}

HermitianMapSpec HermitianMapSpec::from_choi(ChoiMatrix choi) {
  if (choi.d_in == 0 || choi.d_out == 0)
    throw DimensionError("Choi matrix needs positive dimensions");
  const std::size_t dd = choi.d_in * choi.d_out;
  require_square(choi.mat, dd, "Choi matrix");
  if (!choi.mat.all_finite())
    throw Error(ErrorKind::validation, "Choi matrix has non-finite entries");
  const double defect = choi.mat.hermiticity_defect();
  if (defect > tolerances().hermiticity) {
    std::ostringstream msg;
    msg << "Choi matrix not hermitian (the map would not preserve "
           "hermiticity), defect "
        << defect;
    throw HermiticityError(msg.str(), defect);
  }
  HermitianMapSpec spec;
  spec.choi_ = std::move(choi);
  return spec;
}

std::size_t HermitianMapSpec::d_in() const {
  return kraus_ ? kraus_->d_in : choi_->d_in;
}

std::size_t HermitianMapSpec::d_out() const {
  return kraus_ ? kraus_->d_out : choi_->d_out;
}

ComplexMatrix apply(const KrausMap& map, const ComplexMatrix& x) {
  require_square(x, map.d_in, "apply (Kraus)");
  ComplexMatrix out(map.d_out, map.d_out);
  for (const ComplexMatrix& v : map.ops) out += v * x * v.dagger();
  return out;
}

ComplexMatrix apply(const HermitianMapSpec& map, const ComplexMatrix& x) {
  if (map.holds_kraus()) return apply(map.kraus(), x);

  const ChoiMatrix& c = map.choi();
  require_square(x, c.d_in, "apply (Choi)");
  // Theta(X) = d * Tr_in[ C (X^T (x) I) ].
  const ComplexMatrix lifted = kron(x.transposed(), ComplexMatrix::identity(c.d_out));
  const ComplexMatrix product = c.mat * lifted;
  ComplexMatrix out = partial_trace(product, {c.d_in, c.d_out}, {1});
  return out.scaled(static_cast<double>(c.d_in));
}

ChoiMatrix choi_from_map(const HermitianMapSpec& map) {
  if (!map.holds_kraus()) return map.choi();

  const std::size_t d = map.d_in();
  const std::size_t dp = map.d_out();
  ComplexMatrix choi(d * dp, d * dp);
  ComplexMatrix unit(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      unit(i, j) = 1.0;
      const ComplexMatrix block = apply(map, unit);
      unit(i, j) = 0.0;
      for (std::size_t m = 0; m < dp; ++m)
        for (std::size_t n = 0; n < dp; ++n)
          choi(i * dp + m, j * dp + n) = block(m, n) / static_cast<double>(d);
    }
  }
  return ChoiMatrix{d, dp, std::move(choi)};
}

KrausMap kraus_from_choi(const ChoiMatrix& choi) {
  const HermitianEig eig = hermitian_eig(choi.mat);
  const double lambda_min = eig.eigenvalues.front();
  if (lambda_min < -tolerances().reconstruction) {
    std::ostringstream msg;
    msg << "Choi matrix is not PSD (minimal eigenvalue " << lambda_min
        << "); the map has no Kraus form";
    throw NotCpError(msg.str(), lambda_min);
  }
  const std::size_t d = choi.d_in;
  const std::size_t dp = choi.d_out;
  const double lambda_max = eig.eigenvalues.back();
  const double cutoff = std::max(1e-14, 1e-12 * std::max(0.0, lambda_max));

  KrausMap out;
  out.d_in = d;
  out.d_out = dp;
  for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
    const double mu = eig.eigenvalues[k];
    if (mu <= cutoff) continue;
    const double scale = std::sqrt(mu * static_cast<double>(d));
    ComplexMatrix v(dp, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t m = 0; m < dp; ++m)
        v(m, i) = scale * eig.eigenvectors(i * dp + m, k);
    out.ops.push_back(std::move(v));
  }
  if (out.ops.empty()) out.ops.push_back(ComplexMatrix(dp, d));
  return out;
}

std::pair<bool, double> is_cp(const HermitianMapSpec& map) {
  if (map.holds_kraus()) {
    // Operator-sum form is CP by construction; report the Choi floor anyway.
    const ChoiMatrix c = choi_from_map(map);
    const double lambda_min = hermitian_eig(c.mat).eigenvalues.front();
    return {true, lambda_min};
  }
  const double lambda_min = hermitian_eig(map.choi().mat).eigenvalues.front();
  return {lambda_min >= -tolerances().hermiticity, lambda_min};
}

ComplexMatrix adjoint_on_identity(const HermitianMapSpec& map) {
  if (map.holds_kraus()) {
    const KrausMap& k = map.kraus();
    ComplexMatrix a0(k.d_in, k.d_in);
    for (const ComplexMatrix& v : k.ops) a0 += v.dagger() * v;
    return a0;
  }
  const ChoiMatrix& c = map.choi();
  ComplexMatrix reduced = partial_trace(c.mat, {c.d_in, c.d_out}, {0});
  return reduced.transposed().scaled(static_cast<double>(c.d_in));
}

std::pair<bool, double> is_tp(const HermitianMapSpec& map) {
  const ComplexMatrix defect_mat =
      adjoint_on_identity(map) - ComplexMatrix::identity(map.d_in());
  const double defect = defect_mat.frobenius_norm();
  return {defect <= tolerances().hermiticity, defect};
}

double alpha_of(const HermitianMapSpec& map) {
  const ComplexMatrix a = adjoint_on_identity(map);
  const double alpha = hermitian_eig(a).eigenvalues.back();
  if (alpha <= 1e-12) {
    std::ostringstream msg;
    msg << "alpha = max_rho Tr[Theta(rho)] is " << alpha
        << "; the optimal approximation is undefined for alpha <= 0";
    throw Error(ErrorKind::numeric, msg.str());
  }
  return alpha;
}

bool is_trivial(const HermitianMapSpec& map) {
  const std::size_t d = map.d_in();
  // Hermitian operator basis: E_ii, (E_ij + E_ji), i(E_ij - E_ji).
  std::vector<ComplexMatrix> basis;
  for (std::size_t i = 0; i < d; ++i) {
    ComplexMatrix e(d, d);
    e(i, i) = 1.0;
    basis.push_back(e);
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      ComplexMatrix re(d, d), im(d, d);
      re(i, j) = 1.0;
      re(j, i) = 1.0;
      im(i, j) = Complex(0.0, 1.0);
      im(j, i) = Complex(0.0, -1.0);
      basis.push_back(re);
      basis.push_back(im);
    }
  }
  for (const ComplexMatrix& b : basis) {
    if (apply(map, b).traceless_part().frobenius_norm() > 1e-10) return false;
  }
  return true;
}

SpaResult spa_optimal(const HermitianMapSpec& map) {
  if (is_trivial(map))
    throw Error(ErrorKind::validation,
                "map is trivial (all outputs proportional to the identity); "
                "there is nothing to approximate");
  const double alpha = alpha_of(map);

  const std::size_t d = map.d_in();
  const std::size_t dp = map.d_out();
  const ChoiMatrix choi = choi_from_map(map);
  const double lambda_prime = hermitian_eig(choi.mat).eigenvalues.front();
  const double lambda = std::max(0.0, -lambda_prime);

  SpaResult res;
  res.lambda_prime = lambda_prime;
  res.lambda = lambda;
  res.alpha = alpha;
  res.a = lambda * static_cast<double>(d);
  res.t = res.a * static_cast<double>(dp) + alpha;
  res.gamma = 1.0 / res.t;
  res.delta = res.a * res.gamma;
  res.p_star = res.delta * static_cast<double>(dp);

  ComplexMatrix bar_choi = noise_choi(d, dp).scaled(res.delta);
  bar_choi += choi.mat.scaled(res.gamma);
  res.theta_bar = kraus_from_choi(ChoiMatrix{d, dp, std::move(bar_choi)});
  return res;
}

KrausMap spa_at(const HermitianMapSpec& map, double a, double t) {
  const std::size_t d = map.d_in();
  const std::size_t dp = map.d_out();
  if (t <= 0.0)
    throw Error(ErrorKind::validation, "spa_at needs a positive normalizer t");
  const double alpha = hermitian_eig(adjoint_on_identity(map)).eigenvalues.back();
  const double t_min = a * static_cast<double>(dp) + alpha;
  if (t < t_min - 1e-9) {
    std::ostringstream msg;
    msg << "normalizer t = " << t << " is below max_rho Tr[(a I + Theta)(rho)] = "
        << t_min << "; the result would not be implementable";
    throw Error(ErrorKind::validation, msg.str());
  }

  const ChoiMatrix choi = choi_from_map(map);
  ComplexMatrix scaled = noise_choi(d, dp).scaled(a);
  scaled += choi.mat;
  return kraus_from_choi(ChoiMatrix{d, dp, scaled.scaled(1.0 / t)});
}

KrausMap dilate_trace_nonincreasing(const KrausMap& map) {
  ComplexMatrix a0(map.d_in, map.d_in);
  for (const ComplexMatrix& v : map.ops) a0 += v.dagger() * v;
  const HermitianEig eig = hermitian_eig(a0);
  const double excess = eig.eigenvalues.back() - 1.0;
  if (excess > tolerances().hermiticity) {
    std::ostringstream msg;
    msg << "map is not trace-nonincreasing: sum V_i^dagger V_i exceeds the "
           "identity by "
        << excess;
    throw Error(ErrorKind::validation, msg.str());
  }

  ComplexMatrix complement = ComplexMatrix::identity(map.d_in) - a0;
  // Sub-tolerance negativity from rounding gets clipped inside psd_sqrt.
  ComplexMatrix v0 = psd_sqrt(complement);
  if (map.d_out != map.d_in) {
    if (map.d_out < map.d_in)
      throw Error(ErrorKind::validation,
                  "dilation with d_out < d_in is not supported: the discard "
                  "operator cannot be embedded in the output space");
    ComplexMatrix embedded(map.d_out, map.d_in);
    for (std::size_t i = 0; i < map.d_in; ++i)
      for (std::size_t j = 0; j < map.d_in; ++j) embedded(i, j) = v0(i, j);
    v0 = std::move(embedded);
  }

  KrausMap out;
  out.d_in = map.d_in;
  out.d_out = map.d_out;
  out.ops.push_back(std::move(v0));
  for (const ComplexMatrix& v : map.ops) out.ops.push_back(v);
  return out;
}

RealizationSampler prepare_realization(const KrausMap& map,
                                       const states::DensityMatrix& rho) {
  if (rho.dim() != map.d_in) {
    std::ostringstream msg;
    msg << "state dimension " << rho.dim() << " does not match map input "
        << map.d_in;
    throw DimensionError(msg.str());
  }
  const KrausMap completed = dilate_trace_nonincreasing(map);

  RealizationSampler s;
  s.probs.resize(completed.ops.size());
  s.branches.reserve(completed.ops.size());
  double total = 0.0;
  for (std::size_t i = 0; i < completed.ops.size(); ++i) {
    ComplexMatrix b = completed.ops[i] * rho.mat() * completed.ops[i].dagger();
    s.probs[i] = std::max(0.0, b.trace().real());
    total += s.probs[i];
    s.branches.push_back(std::move(b));
  }
  if (total < 1e-14)
    throw Error(ErrorKind::numeric,
                "all branch probabilities vanish; the map is degenerate on "
                "this state");
  for (double& p : s.probs) p /= total;
  return s;
}

std::size_t RealizationSampler::sample_outcome(SplitMix64& rng) const {
  return rng.categorical(probs);
}

Realization realize_probabilistic(const KrausMap& map,
                                  const states::DensityMatrix& rho,
                                  SplitMix64& rng) {
  const RealizationSampler s = prepare_realization(map, rho);
  const std::size_t outcome = s.sample_outcome(rng);
  const double raw = std::max(s.branches[outcome].trace().real(), 1e-300);
  states::DensityMatrix post =
      states::DensityMatrix::validate(s.branches[outcome].scaled(1.0 / raw));
  return Realization{outcome, std::move(post), outcome != 0};
}

HermitianMapSpec builtin_map(const std::string& name, std::size_t d) {
  std::string key = name;
  if (key.rfind("builtin:", 0) == 0) key = key.substr(8);
  if (d < 1) throw DimensionError("builtin map needs d >= 1");

  if (key == "identity") {
    KrausMap k;
    k.d_in = k.d_out = d;
    k.ops.push_back(ComplexMatrix::identity(d));
    return HermitianMapSpec::from_kraus(std::move(k));
  }
  if (key == "transpose") {
    // Choi of transposition is swap/d; transposition has no Kraus form.
    ComplexMatrix mat(d * d, d * d);
    const double inv_d = 1.0 / static_cast<double>(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        mat(i * d + j, j * d + i) = inv_d;
    return HermitianMapSpec::from_choi(ChoiMatrix{d, d, std::move(mat)});
  }
  if (key == "depolarize") {
    KrausMap k;
    k.d_in = k.d_out = d;
    const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t m = 0; m < d; ++m)
      for (std::size_t i = 0; i < d; ++i) {
        ComplexMatrix v(d, d);
        v(m, i) = inv_sqrt_d;
        k.ops.push_back(std::move(v));
      }
    return HermitianMapSpec::from_kraus(std::move(k));
  }
  throw Error(ErrorKind::validation,
              "unknown builtin map '" + name +
                  "' (available: identity, transpose, depolarize)");
}

}  // namespace qspa::channels
