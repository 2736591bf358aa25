#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "geod/precision.hpp"

namespace geod::quadfield {

using i64 = std::int64_t;
using BigInt = mpz_class;

class Discriminant {
 public:
  // Throws std::invalid_argument unless D is a positive fundamental discriminant.
  explicit Discriminant(i64 D);
  i64 value() const { return D_; }

 private:
  i64 D_;
};

// a + b*beta_D with beta_D = (1+sqrt D)/2 (D = 1 mod 4) or sqrt(D)/2.
struct FieldElement {
  i64 a = 0;
  i64 b = 0;
  auto operator<=>(const FieldElement&) const = default;
};

// Exact value (P + Q sqrt D)/2.
struct Surd {
  BigInt P;
  BigInt Q;
};

struct PellSolution {
  BigInt x;
  BigInt y;
};

struct UnitData {
  BigInt x_D;
  BigInt y_D;
  Real eps;
  Real log_eps;
  Real c_D;
  double eps_d = 0.0;
  double log_eps_d = 0.0;
  double c_d = 0.0;
  int fundamental_unit_norm = 1;  // -1 when eps is the square of a norm -1 unit
};

// Continued-fraction (PQa) solution of x^2 - D y^2 = 4, minimal in y.
PellSolution pell_continued_fraction(i64 D);
// Ascending search y = 1, 2, ..., y_limit; nullopt if nothing found.
std::optional<PellSolution> pell_bruteforce(i64 D, i64 y_limit);
PellSolution pell_fundamental(const Discriminant& D);

struct NormRange {
  i64 lo = 1;
  i64 hi = 1;
};

// Bounds on log(x/x*)/log(eps) for totally positive elements. The
// fundamental domain is [0, 2) with the upper end open.
struct ConeBounds {
  double lo = 0.0;
  double hi = 2.0;
  bool lo_open = false;
  bool hi_open = true;
  static ConeBounds fundamental_domain() { return {}; }
};

class QuadField {
 public:
  explicit QuadField(i64 D);
  explicit QuadField(const Discriminant& D) : QuadField(D.value()) {}

  i64 D() const { return D_; }
  bool one_mod_four() const { return delta_ == 1; }
  const UnitData& unit() const { return unit_; }
  const Surd& eps_surd() const { return eps_; }

  Surd surd(FieldElement e) const;
  std::optional<FieldElement> element(const Surd& s) const;  // nullopt if not integral or too large
  i64 norm(FieldElement e) const;
  BigInt norm(const Surd& s) const;
  FieldElement multiply(FieldElement x, FieldElement y) const;
  Surd multiply(const Surd& x, const Surd& y) const;
  FieldElement conjugate(FieldElement e) const;
  Surd eps_power(int k) const;  // eps^k, k may be negative

  int sign(const Surd& s) const;       // sign of the first embedding, exact
  int sign_conj(const Surd& s) const;  // sign of the second embedding, exact
  bool totally_positive(FieldElement e) const;
  bool in_fundamental_domain(FieldElement e) const;
  bool in_cone(FieldElement e, const ConeBounds& cone) const;

  std::pair<Real, Real> embed(FieldElement e) const;
  std::pair<double, double> embed_double(FieldElement e) const;
  Real sqrt_D() const;
  // log|x/x*| for x != 0, both embeddings nonzero.
  Real log_abs_ratio(FieldElement e) const;

 private:
  i64 D_;
  int delta_;
  Surd eps_;
  UnitData unit_;
};

// Lattice points (a,b) with N in the range, totally positive, and
// log(x/x*)/log(eps) inside the cone; sorted lexicographically.
std::vector<FieldElement> elements_in_region(const QuadField& K, NormRange norms, const ConeBounds& cone);

// Ideal d*[n0, (b+sqrt D)/2] with b^2 = D mod 4 n0 and 0 <= b < 2 n0.
struct IdealRep {
  i64 d = 1;
  i64 n0 = 1;
  i64 b = 0;
  i64 norm() const { return d * d * n0; }
  auto operator<=>(const IdealRep&) const = default;
};

IdealRep unit_ideal(i64 D);
IdealRep normalize_ideal(i64 D, i64 d, i64 n0, i64 b);
IdealRep multiply(i64 D, const IdealRep& x, const IdealRep& y);
IdealRep conjugate(i64 D, const IdealRep& x);
IdealRep principal_ideal(const QuadField& K, FieldElement x);

// Square roots b mod 2 n0 of D mod 4 n0, sorted.
std::vector<i64> sqrt_disc_mod(i64 D, i64 n0);
std::vector<IdealRep> ideals_of_norm(i64 D, i64 n);

// The generator of a narrowly principal ideal lying in the fundamental
// domain. Throws std::runtime_error when none exists.
FieldElement totally_positive_generator(const QuadField& K, const IdealRep& I);
std::optional<FieldElement> find_totally_positive_generator(const QuadField& K, const IdealRep& I);

}  // namespace geod::quadfield
