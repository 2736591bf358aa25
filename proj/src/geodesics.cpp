#include "geod/geodesics.hpp"

#include <stdexcept>
#include <string>

namespace geod::geodesics {

namespace {

BigInt big(i64 v) { return BigInt(std::to_string(v)); }
Real real(const BigInt& v) { return Real(v.get_str()); }

}  // namespace

HyperbolicMatrix multiply(const HyperbolicMatrix& x, const HyperbolicMatrix& y) {
  const auto& a = x.m;
  const auto& b = y.m;
  return HyperbolicMatrix{{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
                           a[2] * b[1] + a[3] * b[3]}};
}

HyperbolicMatrix inverse(const HyperbolicMatrix& x) {
  if (x.det() != 1) throw std::invalid_argument("inverse: determinant must be 1");
  return HyperbolicMatrix{{x.m[3], BigInt(-x.m[1]), BigInt(-x.m[2]), x.m[0]}};
}

HyperbolicMatrix matrix_of_form(const QuadraticForm& q, const quadfield::UnitData& unit) {
  const BigInt& x = unit.x_D;
  const BigInt& y = unit.y_D;
  BigInt top = x - big(q.b) * y;
  BigInt bottom = x + big(q.b) * y;
  if (top % 2 != 0 || bottom % 2 != 0) throw std::invalid_argument("matrix_of_form: parity failure, bad discriminant");
  HyperbolicMatrix M{{top / 2, BigInt(-big(q.c) * y), big(q.a) * y, bottom / 2}};
  if (M.det() != 1) throw std::invalid_argument("matrix_of_form: form discriminant does not match the unit");
  return M;
}

HyperbolicMatrix matrix_of_form(const QuadraticForm& q) {
  quadfield::QuadField K(q.discriminant());
  return matrix_of_form(q, K.unit());
}

Real matrix_norm(const HyperbolicMatrix& M) {
  BigInt tr = M.trace();
  if (abs(tr) <= 2) throw std::invalid_argument("matrix_norm: matrix is not hyperbolic");
  Real t = abs(real(tr));
  Real disc = t * t - 4 * real(M.det());
  if (disc <= 0) throw std::invalid_argument("matrix_norm: no real eigenvalues");
  Real lambda = (t + sqrt(disc)) / 2;
  return lambda * lambda;
}

QuadraticForm act(const QuadraticForm& q, const HyperbolicMatrix& A) {
  if (!A.m[0].fits_slong_p() || !A.m[1].fits_slong_p() || !A.m[2].fits_slong_p() || !A.m[3].fits_slong_p())
    throw std::overflow_error("act: matrix entries too large");
  const i64 p = A.m[0].get_si(), r = A.m[2].get_si(), s = A.m[3].get_si(), u = A.m[1].get_si();
  return QuadraticForm{q.a * p * p + q.b * p * r + q.c * r * r, 2 * q.a * p * u + q.b * (p * s + u * r) + 2 * q.c * r * s,
                       q.a * u * u + q.b * u * s + q.c * s * s};
}

ClosedGeodesic make_geodesic(const QuadraticForm& q, const quadfield::UnitData& unit) {
  const i64 D = q.discriminant();
  if (q.a == 0) throw std::invalid_argument("make_geodesic: a must be nonzero");
  ClosedGeodesic g;
  g.form = q;
  g.M = matrix_of_form(q, unit);
  Real sD = sqrt(Real(D));
  Real r1 = (Real(-q.b) + sD) / (2 * Real(q.a));
  Real r2 = (Real(-q.b) - sD) / (2 * Real(q.a));
  if (r1 < r2) std::swap(r1, r2);
  g.omega = r1;
  g.omega_star = r2;
  Real s = 1 / sqrt(r1 - r2);
  g.kappa = {s, -r1 * s, s, -r2 * s};
  g.length = log(matrix_norm(g.M));
  return g;
}

std::vector<ClosedGeodesic> geodesics_for_discriminant(const quadfield::QuadField& K,
                                                       const quadfield::NarrowClassGroup& G) {
  std::vector<ClosedGeodesic> out;
  for (const auto& q : G.representatives) out.push_back(make_geodesic(q, K.unit()));
  return out;
}

std::vector<ClosedGeodesic> geodesics_for_discriminant(i64 D) {
  quadfield::QuadField K(D);
  auto G = quadfield::narrow_class_group(D);
  return geodesics_for_discriminant(K, G);
}

std::complex<double> point_on_axis_preimage(const ClosedGeodesic& g, const Real& y) {
  // kappa^{-1}(i y) = (omega + omega* y^2 + i y (omega - omega*)) / (1 + y^2)
  Real y2 = y * y;
  Real den = 1 + y2;
  Real re = (g.omega + g.omega_star * y2) / den;
  Real im = y * (g.omega - g.omega_star) / den;
  return {static_cast<double>(re), static_cast<double>(im)};
}

std::complex<double> geodesic_point(const ClosedGeodesic& g, double x) {
  if (!(x >= 0.0 && x < 1.0)) throw std::invalid_argument("geodesic_point: x must lie in [0,1)");
  return point_on_axis_preimage(g, exp(g.length * Real(x)));
}

std::complex<double> mobius(const std::array<double, 4>& m, std::complex<double> z) {
  return (m[0] * z + m[1]) / (m[2] * z + m[3]);
}

std::array<double, 4> to_double(const HyperbolicMatrix& M) {
  return {M.m[0].get_d(), M.m[1].get_d(), M.m[2].get_d(), M.m[3].get_d()};
}

}  // namespace geod::geodesics
