#include <doctest.h>

#include <cmath>

#include "geod/hecke.hpp"
#include "geod/lfunctions.hpp"

using namespace geod;
using namespace geod::hecke;

TEST_SUITE("hecke") {

TEST_CASE("class characters") {
  const HeckeField F(12);
  const auto psis = all_class_characters(F.group());
  REQUIRE(psis.size() == 2);
  CHECK(is_trivial(psis[0]));
  CHECK_FALSE(is_trivial(psis[1]));
  CHECK(inverse(psis[1], F.group()) == psis[1]);
  CHECK(std::abs(eval_class_character(psis[1], F.group(), 1) + 1.0) < 1e-15);
  CHECK(all_class_characters(HeckeField(60).group()).size() == 4);
}

TEST_CASE("character on the unit ideal") {
  for (quadfield::i64 D : {5, 12}) {
    const HeckeField F(D);
    for (const auto& psi : all_class_characters(F.group()))
      for (quadfield::i64 n : {-3, 0, 2, 7}) {
        const auto v = eval_hecke_character(F, {psi, n}, quadfield::unit_ideal(D));
        CHECK(std::abs(v - cplx(1.0)) < 1e-15);
      }
  }
}

TEST_CASE("archimedean phase against a direct evaluation") {
  // |x/x*|^{pi i n / log eps} at x = 4 + beta, norm 19, D = 5
  const quadfield::QuadField K(5);
  const double x = 4 + 1.6180339887498949, xs = 4 - 0.6180339887498949;
  const double turns = 2.0 * std::log(std::abs(x / xs)) / (2 * K.unit().log_eps_d);
  const double got = static_cast<double>(archimedean_turns(K, {4, 1}, 2));
  const double want = turns - std::floor(turns);
  CHECK(std::abs(got - want) < 1e-13);
}

TEST_CASE("characters of norm 11 ideals have unit modulus") {
  const HeckeField F(5);
  for (const auto& I : quadfield::ideals_of_norm(5, 11)) {
    const auto v = eval_hecke_character(F, {all_class_characters(F.group())[0], 2}, I);
    CHECK(std::abs(std::abs(v) - 1.0) < 1e-15);
  }
}

TEST_CASE("theta coefficients, D = 5, trivial character, n = 0") {
  const HeckeField F(5);
  const IdealTable T(F, 20);
  const auto th = theta_table(F, T, {all_class_characters(F.group())[0], 0}, ThetaVariant::plain);
  const auto lam = lfunc::theta_dirichlet_coefficients(th);
  CHECK(lam[0].real() == doctest::Approx(0.5));
  CHECK(std::abs(lam[1]) < 1e-15);
  CHECK(lam[10].real() == doctest::Approx(1.0));
  CHECK(std::abs(th.sums[10] - cplx(2.0)) < 1e-15);
  CHECK(std::abs(th(11) - cplx(1.0)) < 1e-15);  // Fourier coefficient, half the ideal sum
  CHECK(std::abs(th(-11) - th(11)) < 1e-15);
  CHECK(std::abs(theta_coefficient(F, {all_class_characters(F.group())[0], 0}, ThetaVariant::plain, 11) - cplx(1.0)) <
        1e-15);
}

TEST_CASE("theta cache returns equal tables") {
  const HeckeField F(12);
  ThetaCache cache;
  const HeckeCharacter chi{all_class_characters(F.group())[1], 4};
  const auto a = cache.get(F, chi, ThetaVariant::plain, 30);
  const auto b = cache.get(F, chi, ThetaVariant::plain, 60);
  const IdealTable T(F, 30);
  const auto direct = theta_table(F, T, chi, ThetaVariant::plain);
  for (int m = 1; m <= 30; ++m) {
    CHECK(std::abs((*a)(m) - direct(m)) < 1e-15);
    CHECK(std::abs((*b)(m) - direct(m)) < 1e-15);
  }
}

TEST_CASE("orthogonality sum") {
  const HeckeField F(12);
  CHECK(character_orthogonality_sum(F, quadfield::unit_ideal(12)) == doctest::Approx(2.0));
  CHECK(std::abs(character_orthogonality_sum(F, quadfield::ideals_of_norm(12, 2)[0])) < 1e-18);
}

}  // TEST_SUITE
