#include <doctest.h>

#include "geod/geodesics.hpp"

using namespace geod;
using namespace geod::geodesics;

TEST_SUITE("geodesics") {

TEST_CASE("matrix of [1,1,-1]") {
  const quadfield::QuadField K(5);
  const auto M = matrix_of_form({1, 1, -1}, K.unit());
  CHECK(M.m[0] == 1);
  CHECK(M.m[1] == 1);
  CHECK(M.m[2] == 1);
  CHECK(M.m[3] == 2);
  CHECK(M.det() == 1);
  // eps_5^2 = (7 + 3 sqrt 5) / 2
  CHECK(static_cast<double>(matrix_norm(M)) == doctest::Approx(6.8541019662496845).epsilon(1e-15));
}

TEST_CASE("matrix norm of a conjugated integer matrix") {
  HyperbolicMatrix A{{2, 1, 1, 1}};
  CHECK(static_cast<double>(matrix_norm(A)) == doctest::Approx(6.8541019662496845).epsilon(1e-15));
  HyperbolicMatrix P{{1, 0, 0, 1}};
  CHECK_THROWS(matrix_norm(P));
}

TEST_CASE("stabilizer fixes its form") {
  for (quadfield::i64 D : {5, 12, 13, 40, 60}) {
    const quadfield::QuadField K(D);
    for (const auto& q : quadfield::reduced_forms(D)) {
      const auto M = matrix_of_form(q, K.unit());
      CHECK(M.det() == 1);
      CHECK(act(q, M) == q);
    }
  }
}

TEST_CASE("geodesics per discriminant") {
  const auto g5 = geodesics_for_discriminant(5);
  REQUIRE(g5.size() == 1);
  CHECK(static_cast<double>(g5[0].length) == doctest::Approx(1.9248473002384139).epsilon(1e-15));
  const auto g12 = geodesics_for_discriminant(12);
  REQUIRE(g12.size() == 2);
  for (const auto& g : g12) CHECK(static_cast<double>(g.length) == doctest::Approx(2.6339157938496334).epsilon(1e-15));
  CHECK(geodesics_for_discriminant(60).size() == 4);
}

TEST_CASE("parametrisation starts at kappa^{-1} i") {
  const auto g = geodesics_for_discriminant(12)[1];
  const auto z0 = geodesic_point(g, 0.0);
  const auto w = point_on_axis_preimage(g, Real(1));
  CHECK(std::abs(z0 - w) < 1e-14);
  CHECK(z0.imag() > 0);
  // x -> 1 closes the loop at the image of the start under the stabilizer
  const auto z1 = geodesic_point(g, 1.0 - 1e-12);
  const auto Mz0 = mobius(to_double(g.M), z0);
  const auto Minv = mobius(to_double(inverse(g.M)), z0);
  CHECK(std::min(std::abs(z1 - Mz0), std::abs(z1 - Minv)) < 1e-9);
  CHECK_THROWS(geodesic_point(g, 1.0));
}

}  // TEST_SUITE
