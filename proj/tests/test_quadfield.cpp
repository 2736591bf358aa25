#include <doctest.h>

#include <stdexcept>

#include "geod/arith.hpp"
#include "geod/forms.hpp"
#include "geod/quadfield.hpp"

using namespace geod;
using namespace geod::quadfield;

TEST_SUITE("quadfield") {

// Minimal x^2 - D y^2 = 4 and narrow class numbers, computed independently by
// a plain y-scan and the class number formula h+ log eps = sqrt(D) L(1, chi_D).
struct Row {
  i64 D, x, y;
  int h;
};
const Row kTable[] = {{5, 3, 1, 1},     {8, 6, 2, 1},      {12, 4, 1, 2},      {13, 11, 3, 1},  {17, 66, 16, 1},
                      {21, 5, 1, 2},    {24, 10, 2, 2},    {28, 16, 3, 2},     {29, 27, 5, 1},  {33, 46, 8, 2},
                      {37, 146, 24, 1}, {40, 38, 6, 2},    {41, 4098, 640, 1}, {44, 20, 3, 2},  {53, 51, 7, 1},
                      {56, 30, 4, 2},   {57, 302, 40, 2},  {60, 8, 1, 4},      {61, 1523, 195, 1}, {65, 258, 32, 2},
                      {69, 25, 3, 2},   {73, 4562498, 534000, 1}, {76, 340, 39, 2}, {77, 9, 1, 2}, {85, 83, 9, 2},
                      {88, 394, 42, 2}, {89, 1000002, 106000, 1}, {92, 48, 5, 2}, {93, 29, 3, 2},
                      {97, 125619266, 12754704, 1}};

TEST_CASE("fundamental discriminants") {
  CHECK(arith::is_fundamental_discriminant(5));
  CHECK(arith::is_fundamental_discriminant(12));
  CHECK_FALSE(arith::is_fundamental_discriminant(7));
  CHECK_FALSE(arith::is_fundamental_discriminant(16));
  CHECK_FALSE(arith::is_fundamental_discriminant(20));
  CHECK_THROWS_AS(Discriminant(7), std::invalid_argument);
  CHECK_THROWS_AS(Discriminant(-3), std::invalid_argument);
}

TEST_CASE("Pell solutions match the frozen table") {
  for (const auto& r : kTable) {
    CAPTURE(r.D);
    const auto p = pell_continued_fraction(r.D);
    CHECK(p.x == r.x);
    CHECK(p.y == r.y);
  }
  const auto b = pell_bruteforce(5, 10);
  REQUIRE(b.has_value());
  CHECK(b->x == 3);
  CHECK_FALSE(pell_bruteforce(73, 1000).has_value());
}

TEST_CASE("narrow class numbers match the frozen table") {
  for (const auto& r : kTable) {
    CAPTURE(r.D);
    CHECK(narrow_class_group(r.D).h() == r.h);
  }
  CHECK(narrow_class_group(12).orders == std::vector<int>{2});
  CHECK(narrow_class_group(40).orders == std::vector<int>{2});
  CHECK(narrow_class_group(5).orders.empty());
}

TEST_CASE("embeddings and the unit") {
  const QuadField K(5);
  const auto [x, y] = K.embed_double({1, 0});
  CHECK(x == doctest::Approx(1.0));
  CHECK(y == doctest::Approx(1.0));
  const auto [b1, b2] = K.embed_double({0, 1});
  CHECK(b1 == doctest::Approx(1.6180339887498949).epsilon(1e-15));
  CHECK(b2 == doctest::Approx(-0.6180339887498949).epsilon(1e-15));
  const auto [e1, e2] = K.embed_double({1, 1});
  CHECK(e1 == doctest::Approx(2.6180339887498949).epsilon(1e-15));
  CHECK(e1 * e2 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(K.unit().eps_d == doctest::Approx(2.6180339887498949).epsilon(1e-15));
  CHECK(K.unit().fundamental_unit_norm == -1);
  CHECK(QuadField(12).unit().fundamental_unit_norm == 1);
  CHECK(K.norm(FieldElement{4, 1}) == 19);
}

TEST_CASE("fundamental domain membership") {
  const QuadField K(5);
  CHECK(K.in_fundamental_domain({1, 0}));
  CHECK(K.in_fundamental_domain({2, 0}));
  CHECK(K.in_fundamental_domain({2, 1}));        // 2 + beta, norm 5
  CHECK_FALSE(K.in_fundamental_domain({1, 1}));  // eps: x = eps^2 x* exactly
  CHECK_FALSE(K.in_fundamental_domain({2, 3}));  // eps^2 sits on the open end
  CHECK_FALSE(K.in_fundamental_domain({0, 1}));  // not totally positive
}

TEST_CASE("elements in a region") {
  const QuadField K(5);
  const auto ones = elements_in_region(K, {1, 1}, ConeBounds::fundamental_domain());
  REQUIRE(ones.size() == 1);
  CHECK(ones[0] == FieldElement{1, 0});
  CHECK(elements_in_region(K, {5, 4}, ConeBounds::fundamental_domain()).empty());
  // plain (a, b) scan; |a|, |b| <= 60 covers norms up to 100 in the cone
  const auto pts = elements_in_region(K, {1, 100}, ConeBounds::fundamental_domain());
  std::size_t brute = 0;
  for (i64 a = -60; a <= 60; ++a)
    for (i64 b = -60; b <= 60; ++b) {
      const FieldElement e{a, b};
      const i64 n = K.norm(e);
      if (n >= 1 && n <= 100 && K.in_fundamental_domain(e)) ++brute;
    }
  CHECK(pts.size() == brute);
  CHECK(std::is_sorted(pts.begin(), pts.end()));
}

TEST_CASE("ideals and classes") {
  CHECK(ideals_of_norm(5, 1) == std::vector<IdealRep>{unit_ideal(5)});
  CHECK(ideals_of_norm(5, 11).size() == 2);
  CHECK(ideals_of_norm(5, 2).empty());
  CHECK(ideals_of_norm(5, 4).size() == 1);  // the inert prime 2

  const auto G = narrow_class_group(12);
  CHECK(G.class_of_ideal(unit_ideal(12)) == 0);
  const auto two = ideals_of_norm(12, 2);
  REQUIRE(two.size() == 1);
  CHECK(G.class_of_ideal(two[0]) != 0);
  CHECK(ideal_class_index(two[0], G) == std::vector<int>{1});
  CHECK(ideal_class_index(unit_ideal(12), G) == std::vector<int>{0});

  const QuadField K(12);
  const auto p = principal_ideal(K, {2, 1});  // 2 + sqrt 3, totally positive
  CHECK(ideal_class_index(p, G) == std::vector<int>{0});
  CHECK(multiply(12, two[0], two[0]).norm() == 4);
}

TEST_CASE("totally positive generators") {
  const QuadField K(5);
  CHECK(totally_positive_generator(K, unit_ideal(5)) == FieldElement{1, 0});
  for (const auto& I : ideals_of_norm(5, 11)) {
    const auto g = totally_positive_generator(K, I);
    CHECK(K.norm(g) == 11);
    CHECK(K.in_fundamental_domain(g));
    CHECK(principal_ideal(K, g) == I);
  }
  const QuadField K12(12);
  CHECK_FALSE(find_totally_positive_generator(K12, ideals_of_norm(12, 2)[0]).has_value());
  CHECK_THROWS_AS(totally_positive_generator(K12, ideals_of_norm(12, 2)[0]), std::runtime_error);
}

TEST_CASE("reduced forms and cycles") {
  for (const auto& q : reduced_forms(12)) {
    CHECK(is_reduced(q));
    CHECK(q.discriminant() == 12);
  }
  const QuadraticForm q{1, 1, -1};
  CHECK(reduce(q).discriminant() == 5);
  CHECK(form_of_ideal(5, ideal_of_form(5, q)).discriminant() == 5);
}

}  // TEST_SUITE
