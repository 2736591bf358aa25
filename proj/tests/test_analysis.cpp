#include <doctest.h>

#include <cmath>

#include "geod/analysis.hpp"

using namespace geod;
using namespace geod::analysis;

TEST_SUITE("analysis") {

TEST_CASE("mollifier and steps") {
  CHECK(mollifier(0) == doctest::Approx(std::exp(-1.0)));
  CHECK(mollifier(1) == 0);
  CHECK(mollifier(-1.5) == 0);
  const SmoothStep s(1, 2);
  CHECK(s(0.5) == 1);
  CHECK(s(2.5) == 0);
  double prev = 1;
  for (double x = 1; x <= 2; x += 0.01) {
    CHECK(s(x) <= prev + 1e-15);
    prev = s(x);
  }
  CHECK(eta(1) == doctest::Approx(1.0));
  CHECK(eta(2) == doctest::Approx(0.0));
}

TEST_CASE("dyadic partition of unity") {
  for (double x : {0.3, 0.5, 2.0, 3.7}) CHECK(dyadic_W(x) >= 0);
  CHECK(dyadic_W(0.49) == 0);
  CHECK(dyadic_W(2.01) == 0);
  for (double x : {1.0, 1.7, 17.0, 1000.0}) CHECK(partition_sum(x, 12) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(partition_sum_check({0.6, 1.0, 3.3, 50.0, 999.0}) < 1e-14);
}

TEST_CASE("windows") {
  const quadfield::QuadField K(5);
  const auto w = Windows::make(K, 13.78, 1);
  CHECK(w.T() == 2);
  CHECK(w.a_T() > w.Tt_power());
  CHECK(w.a_T() - 1 <= w.Tt_power());
  for (auto n : w.window_support()) CHECK(w.W_k(static_cast<double>(n)) * w.U(static_cast<double>(n)) != 0);
}

TEST_CASE("Fourier transform of a Gaussian") {
  const FourierTransform F([](double x) { return std::exp(-M_PI * x * x); }, -7, 7);
  for (double xi : {0.0, 0.5, 1.3}) CHECK(std::abs(F(xi) - cplx(std::exp(-M_PI * xi * xi), 0)) < 1e-14);
}

TEST_CASE("lattice enumeration against a box scan") {
  const quadfield::QuadField K(5);
  for (LatticeRegion r : {LatticeRegion{0, 1.0, 50.0}, LatticeRegion{1, 0.5, 200.0}, LatticeRegion{-1, 2.0, 30.0}}) {
    const auto a = S_region_enumerate(K, r);
    const auto b = S_region_bruteforce(K, r);
    CHECK(a == b);
    CHECK(parallelogram_check(K, r, a));
  }
  const auto cb = lipschitz_count_bound(K, {0, 1.0, 100.0}, 1.0);
  CHECK(cb.shape == doctest::Approx(110.0));
  CHECK(cb.bound == doctest::Approx(110.0));
}

TEST_CASE("Poisson summation for one H function") {
  const quadfield::QuadField K(5);
  const auto w = Windows::make(K, 13.78, 1);
  HFunction H(K, w, 2, {1, 0}, 1);
  if (H.active()) {
    const auto rep = poisson_identity_residual(H);
    CHECK(rep.residual < 1e-12);
    CHECK(rep.truncation_ok);
  }
}

}  // TEST_SUITE
