// Acceptance suite: one pass/fail line per criterion, exit 1 on any failure.
// Every tolerance is pinned in code next to the check it gates.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli_corpus.hpp"
#include "qspa/channels.hpp"
#include "qspa/eig.hpp"
#include "qspa/error.hpp"
#include "qspa/measure.hpp"
#include "qspa/multicopy.hpp"
#include "qspa/nogo.hpp"
#include "qspa/spectrum.hpp"
#include "qspa/states.hpp"
#include "test_helpers.hpp"

using namespace qspa;
using states::DensityMatrix;

namespace {

int failures = 0;

class Criterion {
 public:
  Criterion(int id, std::string title)
      : id_(id), title_(std::move(title)),
        start_(std::chrono::steady_clock::now()) {}

  void check(bool ok, const std::string& detail) {
    if (!ok && first_failure_.empty()) first_failure_ = detail;
    ok_ = ok_ && ok;
  }

  ~Criterion() {
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    std::ostringstream line;
    line << (ok_ ? "[PASS]" : "[FAIL]") << " criterion " << id_ << ": " << title_
         << " (" << seconds << " s)";
    if (!ok_) {
      line << " -- " << first_failure_;
      ++failures;
    }
    std::cout << line.str() << "\n";
  }

 private:
  int id_;
  std::string title_;
  bool ok_ = true;
  std::string first_failure_;
  std::chrono::steady_clock::time_point start_;
};

std::string fmt(double x) {
  std::ostringstream ss;
  ss.precision(6);
  ss << x;
  return ss.str();
}

double sup_distance(std::vector<double> a, std::vector<double> b) {
  std::sort(a.rbegin(), a.rend());
  std::sort(b.rbegin(), b.rend());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

DensityMatrix random_separable_two_qubits(SplitMix64& rng) {
  const std::size_t terms = 1 + static_cast<std::size_t>(rng.uniform01() * 4.0);
  ComplexMatrix acc(4, 4);
  std::vector<double> weights(terms);
  double total = 0.0;
  for (double& w : weights) {
    w = -std::log(1.0 - rng.uniform01() + 1e-300);
    total += w;
  }
  for (std::size_t k = 0; k < terms; ++k) {
    const DensityMatrix a = states::random_pure(2, rng);
    const DensityMatrix b = states::random_pure(2, rng);
    acc += kron(a.mat(), b.mat()).scaled(weights[k] / total);
  }
  return DensityMatrix::validate(acc);
}

channels::HermitianMapSpec random_hermitian_map(SplitMix64& rng, std::size_t d) {
  ComplexMatrix h = testutil::random_hermitian(rng, d * d);
  h = h.scaled(1.0 / h.frobenius_norm());
  channels::ChoiMatrix choi{d, d, h};
  auto spec = channels::HermitianMapSpec::from_choi(choi);
  // Shift by the noise-map Choi until alpha is comfortably positive; adding
  // beta * I_{dd'}/d raises alpha by beta * d'.
  const double alpha0 =
      hermitian_eig(channels::adjoint_on_identity(spec)).eigenvalues.back();
  const double beta = (1.0 - alpha0) / static_cast<double>(d);
  ComplexMatrix shifted = h + ComplexMatrix::identity(d * d).scaled(
                                  beta / static_cast<double>(d));
  return channels::HermitianMapSpec::from_choi(channels::ChoiMatrix{d, d, shifted});
}

void criterion_1() {
  Criterion c(1, "swap mean equals the purity (d = 2, 3, 4)");
  SplitMix64 rng(1001);
  int states_checked = 0;
  double worst = 0.0;
  for (std::size_t d : {2u, 3u, 4u}) {
    const multicopy::MulticopyObservable v = multicopy::swap_operator(d);
    for (int rep = 0; rep < 170; ++rep) {
      const DensityMatrix rho = states::random_mixed(d, rng);
      double eig_purity = 0.0;
      for (double p : rho.eigenvalues()) eig_purity += p * p;
      worst = std::max(worst, std::abs(multicopy::multicopy_mean(v, rho).real() -
                                       eig_purity));
      ++states_checked;
    }
  }
  c.check(states_checked >= 500, "need at least 500 states");
  c.check(worst < 1e-10, "worst deviation " + fmt(worst));
}

void criterion_2() {
  Criterion c(2, "shift trace identity (n = 2, 3, 4; d = 2, 3)");
  SplitMix64 rng(1002);
  double worst = 0.0;
  for (std::size_t n : {2u, 3u, 4u}) {
    for (std::size_t d : {2u, 3u}) {
      const multicopy::MulticopyObservable v = multicopy::shift_operator(d, n);
      for (int rep = 0; rep < 100; ++rep) {
        std::vector<ComplexMatrix> factors;
        ComplexMatrix product = ComplexMatrix::identity(d);
        for (std::size_t t = 0; t < n; ++t) {
          factors.push_back(testutil::random_matrix(rng, d, d));
          product = product * factors.back();
        }
        const Complex lhs = (v.op * kron_all(factors)).trace();
        worst = std::max(worst, std::abs(lhs - product.trace()));
      }
    }
  }
  c.check(worst < 1e-10, "worst deviation " + fmt(worst));
}

void criterion_3() {
  Criterion c(3, "optimal SPA of transposition hits the closed form");
  for (std::size_t d : {2u, 3u, 4u}) {
    const channels::SpaResult res =
        channels::spa_optimal(channels::builtin_map("transpose", d));
    const double expected = 1.0 / static_cast<double>(d + 1);
    c.check(std::abs(res.gamma - expected) < 1e-12,
            "gamma(d=" + std::to_string(d) + ") = " + fmt(res.gamma));
    c.check(std::abs(res.delta - expected) < 1e-12,
            "delta(d=" + std::to_string(d) + ") = " + fmt(res.delta));

    const auto bar = channels::HermitianMapSpec::from_kraus(res.theta_bar);
    const auto [tp, defect] = channels::is_tp(bar);
    c.check(tp && defect < 1e-10,
            "trace preservation defect " + fmt(defect));
    const auto [cp, lambda_min] = channels::is_cp(bar);
    c.check(cp && lambda_min >= -1e-9 && lambda_min <= 1e-8,
            "Choi minimum eigenvalue " + fmt(lambda_min));
  }
}

void criterion_4() {
  Criterion c(4, "SPA preserves the direction of the traceless part");
  SplitMix64 rng(1004);
  std::vector<channels::HermitianMapSpec> maps;
  maps.push_back(channels::builtin_map("transpose", 2));
  maps.push_back(random_hermitian_map(rng, 2));
  maps.push_back(random_hermitian_map(rng, 2));

  for (const auto& map : maps) {
    const channels::SpaResult res = channels::spa_optimal(map);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
      const DensityMatrix rho = states::random_mixed(2, rng);
      const ComplexMatrix lhs =
          channels::apply(res.theta_bar, rho.mat()).traceless_part();
      const ComplexMatrix rhs =
          channels::apply(map, rho.mat()).traceless_part().scaled(res.gamma);
      worst = std::max(worst, (lhs - rhs).frobenius_norm());
    }
    c.check(worst < 1e-9, "worst structure deviation " + fmt(worst));
  }
}

void criterion_5() {
  Criterion c(5, "dilation completes maps; realization matches Tr[map(rho)]");
  SplitMix64 rng(1005);
  const std::size_t shots = 100000;
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t d = 2 + (rep % 2);
    // Random trace-nonincreasing map: top eigenvalue of A0 in (0.3, 0.95).
    channels::KrausMap map;
    map.d_in = map.d_out = d;
    const std::size_t n_ops = 1 + (rep % 3);
    for (std::size_t i = 0; i < n_ops; ++i)
      map.ops.push_back(testutil::random_matrix(rng, d, d));
    ComplexMatrix a0(d, d);
    for (const ComplexMatrix& v : map.ops) a0 += v.dagger() * v;
    const double target_top = 0.3 + 0.65 * rng.uniform01();
    const double scale =
        std::sqrt(target_top / hermitian_eig(a0).eigenvalues.back());
    for (ComplexMatrix& v : map.ops) v = v.scaled(scale);

    const channels::KrausMap completed = channels::dilate_trace_nonincreasing(map);
    const auto [tp, defect] =
        channels::is_tp(channels::HermitianMapSpec::from_kraus(completed));
    c.check(tp && defect < 1e-9, "dilated map TP defect " + fmt(defect));

    const DensityMatrix rho = states::random_mixed(d, rng);
    const double p_exact =
        channels::apply(map, rho.mat()).trace().real();
    const channels::RealizationSampler sampler =
        channels::prepare_realization(map, rho);
    std::size_t successes = 0;
    for (std::size_t s = 0; s < shots; ++s)
      if (sampler.sample_outcome(rng) != 0) ++successes;
    const double freq = static_cast<double>(successes) / shots;
    const double se =
        std::sqrt(std::max(p_exact * (1.0 - p_exact), 1e-12) / shots);
    c.check(std::abs(freq - p_exact) < 4.0 * se,
            "success frequency " + fmt(freq) + " vs " + fmt(p_exact));
  }
}

void criterion_6() {
  Criterion c(6, "q=2 witness: separable floor, singlet value, sampling");
  SplitMix64 rng(1006);
  double worst = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const DensityMatrix rho = random_separable_two_qubits(rng);
    worst = std::min(worst, multicopy::witness_value_q2(rho, 2, 2,
                                                        multicopy::Side::A));
    worst = std::min(worst, multicopy::witness_value_q2(rho, 2, 2,
                                                        multicopy::Side::B));
  }
  c.check(worst >= -1e-9, "separable witness floor " + fmt(worst));

  const DensityMatrix psi = testutil::singlet();
  const multicopy::WitnessReport report = multicopy::witness_q2(psi, 2, 2);
  c.check(std::abs(report.value_a + 0.5) < 1e-12,
          "singlet value_A " + fmt(report.value_a));
  c.check(std::abs(report.value_b + 0.5) < 1e-12,
          "singlet value_B " + fmt(report.value_b));
  c.check(report.entangled_detected, "singlet must be detected");

  const DensityMatrix two =
      DensityMatrix::validate(kron(psi.mat(), psi.mat()));
  for (auto side : {multicopy::Side::A, multicopy::Side::B}) {
    const multicopy::MulticopyObservable w =
        multicopy::witness_observable_q2(2, 2, side);
    const measure::ShotEstimate est =
        measure::sample_observable(w.op, two, 100000, rng);
    c.check(std::abs(est.mean - (-0.5)) < 4.0 * est.std_error,
            "sampled witness " + fmt(est.mean) + " +- " + fmt(est.std_error));
  }
}

void criterion_7() {
  Criterion c(7, "I - V measures the q=2 Tsallis entropy");
  SplitMix64 rng(1007);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t d = (rep % 2 == 0) ? 2 : 3;
    const DensityMatrix rho = states::random_mixed(d, rng);

    multicopy::MulticopyObservable w;
    w.n = 2;
    w.d = d;
    w.op = ComplexMatrix::identity(d * d) - multicopy::swap_operator(d).op;
    w.hermitian = true;

    const double exact = states::tsallis_entropy(rho, 2.0).value;
    c.check(std::abs(multicopy::multicopy_mean(w, rho).real() - exact) < 1e-12,
            "exact mean vs entropy at rep " + std::to_string(rep));

    SplitMix64 stream = rng.split(static_cast<std::uint64_t>(rep));
    const measure::MulticopyShotEstimate est =
        measure::estimate_multicopy(w, rho, 10000, stream);
    const double band = 4.0 * std::max(est.std_error, 1e-12);
    c.check(std::abs(est.mean.real() - exact) < band,
            "sampled " + fmt(est.mean.real()) + " vs " + fmt(exact));
  }
}

void criterion_8() {
  Criterion c(8, "spectrum roundtrip and the 2d-3 observable count");
  SplitMix64 rng(1008);
  for (std::size_t d : {2u, 3u, 4u, 5u}) {
    double worst = 0.0;
    for (int rep = 0; rep < 500; ++rep) {
      const DensityMatrix rho = states::random_mixed(d, rng);
      const spectrum::SpectrumEstimate est =
          spectrum::estimate_spectrum(spectrum::moments_from_eigenvalues(rho));
      worst = std::max(worst, sup_distance(est.eigenvalues, rho.eigenvalues()));
    }
    c.check(worst < 1e-7,
            "d=" + std::to_string(d) + " worst recovery error " + fmt(worst));
  }

  for (std::size_t d : {2u, 3u, 4u, 5u}) {
    const DensityMatrix rho = states::random_mixed(d, rng);
    const spectrum::SpectrumFromStateResult res = spectrum::spectrum_from_state(rho);
    c.check(res.method == "shift", "d=" + std::to_string(d) + " uses shift route");
    c.check(res.observables_used == 2 * d - 3,
            "observable count " + std::to_string(res.observables_used));
    c.check(sup_distance(res.estimate.eigenvalues, rho.eigenvalues()) < 1e-7,
            "shift-route recovery at d=" + std::to_string(d));
  }

  const DensityMatrix qubit =
      DensityMatrix::validate(testutil::diag_state({0.75, 0.25}));
  SplitMix64 shot_rng(77);
  const measure::MomentShotResult shot =
      measure::estimate_moments_shots(qubit, 2, 100000, shot_rng);
  const spectrum::SpectrumEstimate est = spectrum::estimate_spectrum(shot.moments);
  c.check(std::abs(est.eigenvalues[0] - 0.75) < 0.02 &&
              std::abs(est.eigenvalues[1] - 0.25) < 0.02,
          "shot pipeline recovered (" + fmt(est.eigenvalues[0]) + ", " +
              fmt(est.eigenvalues[1]) + ")");
}

void criterion_9() {
  Criterion c(9, "symmetric-subspace gap exceeds the target for mixed states");
  const DensityMatrix mixed =
      DensityMatrix::validate(ComplexMatrix::identity(2).scaled(0.5));
  const nogo::NogoGapReport half = nogo::nogo_gap(mixed, 2);
  c.check(std::abs(half.gap - 0.25) < 1e-12, "I/2 gap " + fmt(half.gap));

  SplitMix64 rng(1009);
  for (std::size_t d : {2u, 3u}) {
    for (std::size_t n : {2u, 3u}) {
      for (int rep = 0; rep < 25; ++rep) {
        const DensityMatrix rho = states::random_mixed(d, rng);
        if (states::purity(rho) > 0.99) continue;
        const nogo::NogoGapReport report = nogo::nogo_gap(rho, n);
        c.check(report.gap > 0.0, "gap " + fmt(report.gap));
        if (n == 2) {
          const double closed = (1.0 + states::purity(rho)) / 2.0;
          c.check(std::abs(report.sym_overlap - closed) < 1e-12,
                  "closed form deviation " +
                      fmt(std::abs(report.sym_overlap - closed)));
        }
      }
    }
  }
}

void criterion_10() {
  Criterion c(10, "squaring-map linearization: exact at d=2, broken at d=3");
  SplitMix64 rng(1010);
  const nogo::Map2CheckReport qubit = nogo::map2_linearization_check(2, 100, rng);
  c.check(qubit.max_deviation < 1e-12,
          "qubit deviation " + fmt(qubit.max_deviation));

  const DensityMatrix rho =
      DensityMatrix::validate(testutil::diag_state({0.5, 0.3, 0.2}));
  const ComplexMatrix candidate =
      nogo::symmetrize_trace_out(kron(rho.mat(), rho.mat()), 3);
  const double dev = (candidate - nogo::map2_target(rho)).frobenius_norm();
  c.check(dev > 0.01, "qutrit deviation " + fmt(dev));
}

void criterion_11(const std::string& cli) {
  Criterion c(11, "CLI golden corpus is byte-identical across runs");
  if (cli.empty()) {
    c.check(false, "no CLI path supplied (pass it as argv[1])");
    return;
  }
  const testutil::CorpusRun run1 = testutil::run_cli_corpus(cli, "acceptance_run1");
  const testutil::CorpusRun run2 = testutil::run_cli_corpus(cli, "acceptance_run2");
  const auto corpus = testutil::cli_corpus();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    c.check(run1.exit_codes[i] == corpus[i].expected_exit,
            corpus[i].name + " exit " + std::to_string(run1.exit_codes[i]));
    c.check(testutil::slurp(run1.files[i]) == testutil::slurp(run2.files[i]),
            corpus[i].name + " differs between runs");
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11(cli);

  if (failures == 0) {
    std::cout << "acceptance: all criteria passed\n";
    return 0;
  }
  std::cout << "acceptance: " << failures << " criterion(s) failed\n";
  return 1;
}
