#pragma once

#include <array>
#include <complex>
#include <vector>

#include "geod/forms.hpp"

namespace geod::geodesics {

using quadfield::BigInt;
using quadfield::i64;
using quadfield::QuadraticForm;

struct HyperbolicMatrix {
  std::array<BigInt, 4> m;  // [[m0, m1], [m2, m3]]
  BigInt det() const { return m[0] * m[3] - m[1] * m[2]; }
  BigInt trace() const { return m[0] + m[3]; }
};

HyperbolicMatrix multiply(const HyperbolicMatrix& x, const HyperbolicMatrix& y);
HyperbolicMatrix inverse(const HyperbolicMatrix& x);  // det 1 only

// Generator of the stabilizer of q built from the Pell solution.
HyperbolicMatrix matrix_of_form(const QuadraticForm& q);
HyperbolicMatrix matrix_of_form(const QuadraticForm& q, const quadfield::UnitData& unit);

// lambda^2 for the eigenvalue |lambda| > 1; throws when |trace| <= 2.
Real matrix_norm(const HyperbolicMatrix& M);

// Right action on forms: (q.A)(x, y) = q(A (x, y)^T).
QuadraticForm act(const QuadraticForm& q, const HyperbolicMatrix& A);

struct ClosedGeodesic {
  QuadraticForm form;
  HyperbolicMatrix M;
  Real omega;       // larger root of a x^2 + b x + c
  Real omega_star;  // smaller root
  std::array<Real, 4> kappa;
  Real length;
};

ClosedGeodesic make_geodesic(const QuadraticForm& q, const quadfield::UnitData& unit);
// One geodesic per narrow class, in class-id order.
std::vector<ClosedGeodesic> geodesics_for_discriminant(i64 D);
std::vector<ClosedGeodesic> geodesics_for_discriminant(const quadfield::QuadField& K,
                                                       const quadfield::NarrowClassGroup& G);

// kappa^{-1} (i y) and the parametrisation x -> kappa^{-1}(i eps^{2x}).
std::complex<double> point_on_axis_preimage(const ClosedGeodesic& g, const Real& y);
std::complex<double> geodesic_point(const ClosedGeodesic& g, double x);

// Moebius action of a real matrix given by doubles.
std::complex<double> mobius(const std::array<double, 4>& m, std::complex<double> z);
std::array<double, 4> to_double(const HyperbolicMatrix& M);

}  // namespace geod::geodesics
