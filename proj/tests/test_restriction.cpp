#include <doctest.h>

#include <cmath>

#include "geod/restriction.hpp"

using namespace geod;
using namespace geod::restriction;

TEST_SUITE("restriction") {

TEST_CASE("total length") {
  CHECK(total_length(hecke::HeckeField(5)) == doctest::Approx(1.9248473002384139).epsilon(1e-14));
  CHECK(total_length(hecke::HeckeField(12)) == doctest::Approx(5.2678315876992668).epsilon(1e-14));
}

TEST_CASE("fundamental domain reduction") {
  for (cplx z : {cplx(0.3, 0.2), cplx(-7.4, 0.01), cplx(0.49, 0.9)}) {
    const cplx w = reduce_to_fundamental_domain(z);
    CHECK(std::abs(w.real()) <= 0.5 + 1e-12);
    CHECK(std::abs(w) >= 1 - 1e-12);
  }
}

TEST_CASE("Maass values are modular") {
  const auto f = lfunc::load_maass_form(lfunc::default_form_path(lfunc::Parity::even));
  QuadratureConfig q;
  q.reduce = false;
  const cplx z(0.3, 1.1);
  const double a = maass_value(f, z, q).value;
  const double b = maass_value(f, -1.0 / z, q).value;
  CHECK(std::abs(a - b) < 1e-8);
  CHECK(std::abs(maass_value(f, z + 1.0, q).value - a) < 1e-12);
  const auto g = lfunc::load_maass_form(lfunc::default_form_path(lfunc::Parity::odd));
  CHECK(std::abs(maass_value(g, cplx(0, 1.3), q).value) < 1e-14);
}

TEST_CASE("constant function on C_D") {
  for (quadfield::i64 D : {5, 12}) {
    const hecke::HeckeField F(D);
    const GeodesicFunction one{[](int, double) { return cplx(1.0); }};
    const auto norm = restriction_norm(one, F, 3);
    CHECK(norm.normalized == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(direct_norm(one, F) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("Plancherel on a trigonometric polynomial") {
  const hecke::HeckeField F(12);
  const GeodesicFunction g{[](int cls, double x) {
    return cplx(1.0 + 0.5 * cls) + 0.25 * std::exp(cplx(0, 2 * M_PI * 2 * x)) + cplx(0.1 * std::cos(2 * M_PI * x), 0);
  }};
  const auto norm = restriction_norm(g, F, 4);
  CHECK(norm.normalized == doctest::Approx(direct_norm(g, F)).epsilon(1e-12));
  for (std::size_t i = 1; i < norm.partial.size(); ++i) CHECK(norm.partial[i] >= norm.partial[i - 1] - 1e-15);
}

TEST_CASE("relative spread and CSV") {
  std::vector<WaldspurgerEntry> rows(3);
  rows[0].ratio = 1.0;
  rows[1].ratio = 1.1;
  rows[2].ratio = 5.0;
  rows[2].skipped = true;
  CHECK(relative_spread(rows) == doctest::Approx(0.1 / 1.05));
  const auto csv = waldspurger_csv(5, rows);
  CHECK(csv.find('\n') != std::string::npos);
  CHECK(csv.rfind("D,", 0) == 0);
}

}  // TEST_SUITE
