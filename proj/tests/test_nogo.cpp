#include <doctest.h>

#include <cmath>

#include "qspa/error.hpp"
#include "qspa/nogo.hpp"
#include "qspa/states.hpp"
#include "test_helpers.hpp"

using namespace qspa;
using namespace qspa::nogo;
using states::DensityMatrix;
using testutil::diag_state;
using testutil::distance;

TEST_CASE("symmetric projector of two qubits has rank three") {
  const ComplexMatrix p = sym_projector(2, 2);
  CHECK(distance(p, (ComplexMatrix::identity(4) +
                     multicopy::swap_operator(2).op).scaled(0.5)) < 1e-14);
  CHECK(p.trace().real() == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("symmetric projector is idempotent and hermitian") {
  for (auto [d, n] : {std::pair<std::size_t, std::size_t>{2, 3},
                      {3, 2},
                      {2, 4}}) {
    const ComplexMatrix p = sym_projector(d, n);
    CHECK(p.hermiticity_defect() < 1e-12);
    CHECK(distance(p * p, p) < 1e-10);
  }
}

TEST_CASE("symmetric projector fixes n-fold product vectors") {
  SplitMix64 rng(601);
  const ComplexMatrix p = sym_projector(2, 3);
  for (int rep = 0; rep < 10; ++rep) {
    ComplexMatrix phi(2, 1);
    phi(0, 0) = rng.complex_gaussian();
    phi(1, 0) = rng.complex_gaussian();
    const ComplexMatrix triple = kron(kron(phi, phi), phi);
    CHECK(distance(p * triple, triple) < 1e-10);
  }
}

TEST_CASE("nogo gap on the maximally mixed qubit is exactly a quarter") {
  const DensityMatrix mixed =
      DensityMatrix::validate(ComplexMatrix::identity(2).scaled(0.5));
  const NogoGapReport report = nogo_gap(mixed, 2);
  CHECK(report.sym_overlap == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(report.target == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(report.gap == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("nogo gap vanishes on pure states") {
  SplitMix64 rng(602);
  for (std::size_t n : {2u, 3u}) {
    const DensityMatrix pure = states::random_pure(2, rng);
    const NogoGapReport report = nogo_gap(pure, n);
    CHECK(std::abs(report.gap) < 1e-10);
  }
}

TEST_CASE("nogo gap is positive for the benchmark qubit at three copies") {
  const DensityMatrix qubit = DensityMatrix::validate(diag_state({0.75, 0.25}));
  const NogoGapReport report = nogo_gap(qubit, 3);
  CHECK(report.target == doctest::Approx(0.4375).epsilon(1e-12));
  // Cycle-structure oracle: (1/6)[1 + 3 m_2 + 2 m_3] = 0.625.
  CHECK(report.sym_overlap == doctest::Approx(0.625).epsilon(1e-10));
  CHECK(report.gap == doctest::Approx(0.1875).epsilon(1e-10));
}

TEST_CASE("two-copy overlap matches the closed form (1 + purity)/2") {
  SplitMix64 rng(603);
  for (std::size_t d : {2u, 3u}) {
    for (int rep = 0; rep < 10; ++rep) {
      const DensityMatrix rho = states::random_mixed(d, rng);
      const NogoGapReport report = nogo_gap(rho, 2);
      CHECK(report.sym_overlap ==
            doctest::Approx((1.0 + states::purity(rho)) / 2.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("nogo gap stays positive on random mixed states") {
  SplitMix64 rng(604);
  for (std::size_t d : {2u, 3u}) {
    for (std::size_t n : {2u, 3u}) {
      for (int rep = 0; rep < 10; ++rep) {
        const DensityMatrix rho = states::random_mixed(d, rng);
        if (states::purity(rho) > 0.99) continue;
        CHECK(nogo_gap(rho, n).gap > 1e-6);
      }
    }
  }
}

TEST_CASE("map2 target on benchmark states") {
  SplitMix64 rng(605);
  const DensityMatrix pure = states::random_pure(2, rng);
  CHECK(distance(map2_target(pure), pure.mat()) < 1e-10);

  const DensityMatrix mixed =
      DensityMatrix::validate(ComplexMatrix::identity(2).scaled(0.5));
  CHECK(distance(map2_target(mixed), mixed.mat()) < 1e-12);

  // Qubit identity: (1 - Tr rho^2) I/2 + rho^2 = rho for every qubit.
  const DensityMatrix qubit = DensityMatrix::validate(diag_state({0.75, 0.25}));
  CHECK(distance(map2_target(qubit), qubit.mat()) < 1e-12);
}

TEST_CASE("map2 target is always a valid state") {
  SplitMix64 rng(606);
  for (std::size_t d : {2u, 3u, 4u}) {
    for (int rep = 0; rep < 10; ++rep) {
      const DensityMatrix rho = states::random_mixed(d, rng);
      CHECK_NOTHROW(DensityMatrix::validate(map2_target(rho)));
    }
  }
}

TEST_CASE("qubit linearization check finds no deviation") {
  SplitMix64 rng(607);
  const Map2CheckReport report = map2_linearization_check(2, 100, rng);
  CHECK(report.max_deviation < 1e-12);
}

TEST_CASE("pure qubit inputs pass through the candidate channel") {
  SplitMix64 rng(608);
  for (int rep = 0; rep < 10; ++rep) {
    const DensityMatrix pure = states::random_pure(2, rng);
    const ComplexMatrix out =
        symmetrize_trace_out(kron(pure.mat(), pure.mat()), 2);
    CHECK(distance(out, pure.mat()) < 1e-10);
  }
}

TEST_CASE("the qutrit deviation is bounded away from zero") {
  const DensityMatrix rho = DensityMatrix::validate(diag_state({0.5, 0.3, 0.2}));
  const ComplexMatrix candidate = symmetrize_trace_out(kron(rho.mat(), rho.mat()), 3);
  const double dev = distance(candidate, map2_target(rho));
  CHECK(dev > 0.01);
  // Hand value: candidate = rho, target = diag(0.4567, 0.2967, 0.2467).
  CHECK(dev == doctest::Approx(std::sqrt(0.0018778 + 0.0000111 + 0.0021778))
                   .epsilon(1e-3));

  SplitMix64 rng(609);
  const Map2CheckReport report = map2_linearization_check(3, 50, rng);
  CHECK(report.max_deviation > 0.01);
}

TEST_CASE("sym projector respects the operator budget") {
  CHECK_THROWS_AS(sym_projector(8, 5), BudgetError);
}
