#include <doctest.h>

#include <cmath>

#include "qspa/error.hpp"
#include "qspa/measure.hpp"
#include "qspa/multicopy.hpp"
#include "qspa/spectrum.hpp"
#include "qspa/states.hpp"
#include "test_helpers.hpp"

using namespace qspa;
using namespace qspa::measure;
using states::DensityMatrix;
using testutil::diag_state;

TEST_CASE("sampling the identity gives mean one with zero error") {
  SplitMix64 rng(501);
  const DensityMatrix rho = states::random_mixed(2, rng);
  const ShotEstimate est =
      sample_observable(ComplexMatrix::identity(2), rho, 1000, rng);
  CHECK(est.mean == 1.0);
  CHECK(est.std_error == 0.0);
  CHECK(est.shots == 1000);
}

TEST_CASE("swap sampling on two pure copies concentrates at one") {
  SplitMix64 rng(502);
  const DensityMatrix pure = states::random_pure(2, rng);
  const DensityMatrix two =
      DensityMatrix::validate(kron(pure.mat(), pure.mat()));
  const ShotEstimate est =
      sample_observable(multicopy::swap_operator(2).op, two, 5000, rng);
  CHECK(est.mean == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(est.std_error < 1e-9);
}

TEST_CASE("pauli-z sampling on the maximally mixed qubit averages to zero") {
  SplitMix64 rng(503);
  ComplexMatrix z(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  const DensityMatrix mixed =
      DensityMatrix::validate(ComplexMatrix::identity(2).scaled(0.5));
  const std::size_t shots = 10000;
  const ShotEstimate est = sample_observable(z, mixed, shots, rng);
  CHECK(std::abs(est.mean) < 4.0 / std::sqrt(static_cast<double>(shots)));
}

TEST_CASE("sampling rejects dimension mismatches and zero shots") {
  SplitMix64 rng(504);
  const DensityMatrix rho = states::random_mixed(2, rng);
  CHECK_THROWS_AS(sample_observable(ComplexMatrix::identity(3), rho, 10, rng),
                  DimensionError);
  CHECK_THROWS_AS(sample_observable(ComplexMatrix::identity(2), rho, 0, rng),
                  Error);
}

TEST_CASE("multicopy estimate of the swap on the maximally mixed qubit") {
  SplitMix64 rng(505);
  const DensityMatrix mixed =
      DensityMatrix::validate(ComplexMatrix::identity(2).scaled(0.5));
  const MulticopyShotEstimate est =
      estimate_multicopy(multicopy::swap_operator(2), mixed, 10000, rng);
  CHECK(est.observables_used == 1);
  CHECK(std::abs(est.mean.real() - 0.5) < 4.0 * est.std_error);
  CHECK(est.mean.imag() == 0.0);
}

TEST_CASE("multicopy estimate of the three-copy shift splits into two parts") {
  SplitMix64 rng(506);
  const DensityMatrix qubit = DensityMatrix::validate(diag_state({0.75, 0.25}));
  const MulticopyShotEstimate est =
      estimate_multicopy(multicopy::shift_operator(2, 3), qubit, 10000, rng);
  CHECK(est.observables_used == 2);
  CHECK(std::abs(est.mean.real() - 0.4375) < 4.0 * est.std_error);
  CHECK(std::abs(est.mean.imag()) < 4.0 * est.std_error);
}

TEST_CASE("tsallis observable estimate vanishes on pure states") {
  SplitMix64 rng(507);
  const DensityMatrix pure = states::random_pure(2, rng);
  multicopy::MulticopyObservable w;
  w.n = 2;
  w.d = 2;
  w.op = ComplexMatrix::identity(4) - multicopy::swap_operator(2).op;
  w.hermitian = true;
  const MulticopyShotEstimate est = estimate_multicopy(w, pure, 5000, rng);
  CHECK(std::abs(est.mean.real()) < 1e-9);
}

TEST_CASE("moment estimation tracks the exact purity") {
  SplitMix64 rng(508);
  const DensityMatrix rho = states::random_mixed(2, rng);
  const MomentShotResult res = estimate_moments_shots(rho, 2, 100000, rng);
  REQUIRE(res.moments.m.size() == 2);
  CHECK(res.moments.m[0] == 1.0);
  CHECK(std::abs(res.moments.m[1] - states::purity(rho)) <
        4.0 * res.std_errors[1]);
  CHECK(res.observables_used == 1);
}

TEST_CASE("moments of a pure state are all near one") {
  SplitMix64 rng(509);
  const DensityMatrix pure = states::random_pure(2, rng);
  const MomentShotResult res = estimate_moments_shots(pure, 2, 20000, rng);
  CHECK(res.moments.m[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("moment estimation books 2k-3 observables") {
  SplitMix64 rng(513);
  const DensityMatrix rho = states::random_mixed(2, rng);
  CHECK(estimate_moments_shots(rho, 3, 500, rng).observables_used == 3);
  CHECK(estimate_moments_shots(rho, 4, 500, rng).observables_used == 5);
}

TEST_CASE("shot pipeline recovers the qubit spectrum within 0.02") {
  SplitMix64 rng(510);
  const DensityMatrix qubit = DensityMatrix::validate(diag_state({0.75, 0.25}));
  const MomentShotResult res = estimate_moments_shots(qubit, 2, 100000, rng);
  const spectrum::SpectrumEstimate est = spectrum::estimate_spectrum(res.moments);
  CHECK(std::abs(est.eigenvalues[0] - 0.75) < 0.02);
  CHECK(std::abs(est.eigenvalues[1] - 0.25) < 0.02);
}

TEST_CASE("estimates are unbiased across independent batches") {
  SplitMix64 rng(511);
  const DensityMatrix rho = states::random_mixed(2, rng);
  const ComplexMatrix v = multicopy::swap_operator(2).op;
  const DensityMatrix two = DensityMatrix::validate(kron(rho.mat(), rho.mat()));
  const double exact = states::purity(rho);

  const int batches = 200;
  const std::size_t shots = 400;
  double mean_of_means = 0.0;
  double pooled_var = 0.0;
  for (int b = 0; b < batches; ++b) {
    SplitMix64 stream = rng.split(static_cast<std::uint64_t>(b));
    const ShotEstimate est = sample_observable(v, two, shots, stream);
    mean_of_means += est.mean;
    pooled_var += est.std_error * est.std_error;
  }
  mean_of_means /= batches;
  const double pooled_se = std::sqrt(pooled_var) / batches;
  CHECK(std::abs(mean_of_means - exact) < 5.0 * pooled_se);
}

TEST_CASE("standard error scales as one over sqrt(shots)") {
  SplitMix64 rng(512);
  const DensityMatrix rho = states::random_mixed(2, rng);
  const ComplexMatrix v = multicopy::swap_operator(2).op;
  const DensityMatrix two = DensityMatrix::validate(kron(rho.mat(), rho.mat()));

  // Average the ratio over repetitions to tame sampling noise.
  double ratio_acc = 0.0;
  const int reps = 10;
  for (int r = 0; r < reps; ++r) {
    SplitMix64 s1 = rng.split(2 * r);
    SplitMix64 s2 = rng.split(2 * r + 1);
    const ShotEstimate small = sample_observable(v, two, 2000, s1);
    const ShotEstimate large = sample_observable(v, two, 8000, s2);
    ratio_acc += large.std_error / small.std_error;
  }
  const double ratio = ratio_acc / reps;
  CHECK(ratio > 0.4);
  CHECK(ratio < 0.6);
}

TEST_CASE("identical seeds give identical estimates") {
  const DensityMatrix qubit = DensityMatrix::validate(diag_state({0.6, 0.4}));
  SplitMix64 a(777), b(777);
  const MulticopyShotEstimate ea =
      estimate_multicopy(multicopy::shift_operator(2, 3), qubit, 2000, a);
  const MulticopyShotEstimate eb =
      estimate_multicopy(multicopy::shift_operator(2, 3), qubit, 2000, b);
  CHECK(ea.mean == eb.mean);
  CHECK(ea.std_error == eb.std_error);
}
