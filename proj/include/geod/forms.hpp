#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <vector>

#include "geod/quadfield.hpp"

namespace geod::quadfield {

// a x^2 + b x y + c y^2
struct QuadraticForm {
  i64 a = 0;
  i64 b = 0;
  i64 c = 0;
  i64 discriminant() const { return b * b - 4 * a * c; }
  auto operator<=>(const QuadraticForm&) const = default;
};

bool is_primitive(const QuadraticForm& q);
bool is_reduced(const QuadraticForm& q);
QuadraticForm rho(const QuadraticForm& q);       // one reduction step, proper equivalence
QuadraticForm reduce(const QuadraticForm& q);    // iterate rho until reduced
std::vector<QuadraticForm> reduced_forms(i64 D);  // all primitive reduced forms, sorted
std::vector<QuadraticForm> cycle_of(const QuadraticForm& reduced);
QuadraticForm compose(const QuadraticForm& f, const QuadraticForm& g);  // not reduced
QuadraticForm form_of_ideal(i64 D, const IdealRep& I);
IdealRep ideal_of_form(i64 D, const QuadraticForm& q);  // requires a > 0

struct NarrowClassGroup {
  i64 D = 0;
  std::vector<QuadraticForm> representatives;  // class 0 is the principal class
  std::vector<std::vector<int>> table;          // table[i][j] = class of i*j
  std::vector<int> orders;                      // h_1..h_s
  std::vector<int> generators;                  // class ids of J_1..J_s
  std::vector<IdealRep> generator_ideals;
  std::vector<std::vector<int>> exponents;      // class id -> (t_1..t_s)

  int h() const { return static_cast<int>(representatives.size()); }
  int class_of_form(const QuadraticForm& q) const;
  int class_of_ideal(const IdealRep& I) const;
  int inverse(int cls) const;
  int power(int cls, int k) const;
  int class_of_exponents(const std::vector<int>& t) const;

  std::map<QuadraticForm, int> cycle_index;  // reduced form -> class id
};

NarrowClassGroup narrow_class_group(i64 D);

// Exponent vector t with I * prod J_i^{-t_i} narrowly principal, by
// exhaustive search over all vectors.
std::vector<int> ideal_class_index(const IdealRep& I, const NarrowClassGroup& G);

}  // namespace geod::quadfield
