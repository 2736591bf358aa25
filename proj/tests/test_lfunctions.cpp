#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <json.hpp>
#include <stdexcept>

#include "geod/arith.hpp"
#include "geod/lfunctions.hpp"

using namespace geod;
using namespace geod::lfunc;

namespace {

std::string form_json(const std::vector<double>& lambda) {
  nlohmann::json j;
  j["level"] = 1;
  j["spectral_parameter"] = 9.5;
  j["parity"] = "odd";
  j["provenance"] = "test";
  j["coefficients"] = lambda;
  return j.dump();
}

std::vector<double> synthetic_hecke(int N) {
  std::vector<double> lam(static_cast<std::size_t>(N), 0.0);
  lam[0] = 1;
  for (int p : arith::primes_up_to(N)) lam[static_cast<std::size_t>(p - 1)] = 2 * std::cos(0.7 * p);
  arith::fill_hecke_multiplicative(lam);
  return lam;
}

}  // namespace

TEST_SUITE("lfunctions") {

TEST_CASE("coefficient files") {
  auto lam = synthetic_hecke(300);
  const auto f = maass_form_from_json(form_json(lam));
  CHECK(f.N() == 300);
  CHECK(f(6) == doctest::Approx(f(2) * f(3)).epsilon(1e-14));
  CHECK(f.parity == Parity::odd);

  lam[0] = 0.9;
  CHECK_THROWS_AS(maass_form_from_json(form_json(lam)), std::invalid_argument);
  lam[0] = 1;
  lam[5] += 0.1;  // lambda(6) no longer lambda(2) lambda(3)
  CHECK_NOTHROW(check_hecke_relations(maass_form_from_json(form_json(synthetic_hecke(300)))));
  CHECK_THROWS(maass_form_from_json(form_json(lam)));
  CHECK_THROWS_AS(maass_form_from_json("{not json"), std::invalid_argument);
  CHECK_THROWS_AS(load_maass_form("/nonexistent/form.json"), std::invalid_argument);

  const auto path = (std::filesystem::temp_directory_path() / "geod_roundtrip.json").string();
  save_maass_form(f, path);
  const auto g = load_maass_form(path);
  CHECK(g.t == f.t);
  CHECK(g.lambda == f.lambda);
  std::filesystem::remove(path);
}

TEST_CASE("shipped coefficient files") {
  // spectral parameters of the first even and odd level-one forms
  const auto even = load_maass_form(default_form_path(Parity::even));
  CHECK(even.t == doctest::Approx(13.779751351890739).epsilon(1e-10));
  CHECK(even.N() >= 1000);
  const auto odd = load_maass_form(default_form_path(Parity::odd));
  CHECK(odd.t == doctest::Approx(9.5336952613535576).epsilon(1e-10));
  CHECK(odd.parity == Parity::odd);
  CHECK(even(2) == doctest::Approx(1.549304477941).epsilon(1e-9));
  CHECK(odd(2) == doctest::Approx(-1.068333551224).epsilon(1e-9));
}

TEST_CASE("parity strings") {
  CHECK(parity_from_string("even") == Parity::even);
  CHECK(to_string(Parity::odd) == "odd");
  CHECK_THROWS_AS(parity_from_string("both"), std::invalid_argument);
}

TEST_CASE("delta streams against direct summation") {
  const quadfield::QuadField K(5);
  const auto p = special::GammaFactorParams::make(13.78, K, 0);
  std::vector<double> lf(5000, 0.0);
  lf[0] = 1;
  std::vector<hecke::cplx> lt(5000, 0.0);
  lt[0] = 1;
  AFEConfig cfg;
  cfg.M = 4000;
  const auto r = afe_sum(lf, lt, 5, p, cfg);
  double direct = 0;
  for (int m = 1; m <= 4000; ++m) {
    const int chi = arith::kronecker(5, m);
    if (chi != 0) direct += chi / double(m) * special::V(m * double(m) / 5, p).value;
  }
  CHECK(std::abs(r.value - 2 * direct) < 1e-10);
}

TEST_CASE("smoothed sums against a closed form") {
  // a = 1 on squares: sum e^{-k^2/X}/k^2 = pi^2/6 - sqrt(pi/X) + 1/(2X) up to e^{-pi^2 X}
  std::vector<double> a(200001, 0.0);
  for (int k = 1; k * k <= 200000; ++k) a[static_cast<std::size_t>(k) * k] = 1;
  for (double X : {100.0, 1000.0}) {
    const double model = M_PI * M_PI / 6 - std::sqrt(M_PI / X) + 1 / (2 * X);
    CHECK(std::abs(smoothed_sum(a, X) - model) < 1e-12);
  }
}

TEST_CASE("central values for the shipped form") {
  const auto f = load_maass_form(default_form_path(Parity::even));
  const hecke::HeckeField F(5);
  const auto psi = hecke::all_class_characters(F.group())[0];
  const auto L = rankin_selberg_central(f, F, {psi, 2}, hecke::ThetaVariant::plain);
  CHECK(L.value > -10 * L.error);
  CHECK(std::abs(L.imag) < 1e-10);
  CHECK(L.q_infty > 0);
  const auto R = completed_ratio(f, F, {psi, 2});
  const auto Rm = completed_ratio(f, F, {psi, -2}, {}, nullptr, R.adjoint);
  CHECK(R.value == doctest::Approx(Rm.value).epsilon(1e-12));
  CHECK(R.value == doctest::Approx(std::sqrt(5.0) * R.G * R.L.value / R.adjoint).epsilon(1e-14));
  CHECK_THROWS_AS(rankin_selberg_central(f, F, {psi, 1}, hecke::ThetaVariant::plain), std::invalid_argument);
}

TEST_CASE("coefficient shortfall is reported") {
  auto f = load_maass_form(default_form_path(Parity::even));
  f.lambda.resize(50);
  const hecke::HeckeField F(5);
  const auto psi = hecke::all_class_characters(F.group())[0];
  CHECK_THROWS_AS(rankin_selberg_central(f, F, {psi, 0}, hecke::ThetaVariant::plain), CoefficientShortfall);
}

TEST_CASE("adjoint value") {
  const auto f = load_maass_form(default_form_path(Parity::even));
  const auto a = adjoint_L_1(f);
  CHECK(a.value > 0);
  CHECK(a.spread < 1e-3);
}

TEST_CASE("CSV layout") {
  const auto s = lvalues_csv({{5, 0, 2, 0.5, 1e-9, 100}});
  CHECK(s.rfind("D,psi_index,n,value,error,q_infty\n", 0) == 0);
  CHECK(s.find("\n5,0,2,") != std::string::npos);
}

}  // TEST_SUITE
