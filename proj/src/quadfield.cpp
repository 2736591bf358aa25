#include "geod/quadfield.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "geod/arith.hpp"

namespace geod::quadfield {

using arith::i128;

Discriminant::Discriminant(i64 D) : D_(D) {
  if (!arith::is_fundamental_discriminant(D))
    throw std::invalid_argument("not a positive fundamental discriminant: " + std::to_string(D));
}

// ---------------------------------------------------------------- Pell

PellSolution pell_continued_fraction(i64 D) {
  if (D <= 1 || arith::is_square(D)) throw std::invalid_argument("pell: D must be a positive non-square");
  const bool odd = arith::mod(D, 4) == 1;
  if (!odd && arith::mod(D, 4) != 0) throw std::invalid_argument("pell: D must be 0 or 1 mod 4");
  const i64 d = odd ? D : D / 4;
  const i64 P0 = odd ? 1 : 0;
  const i64 Q0 = odd ? 2 : 1;
  const i64 r = arith::isqrt(d);
  i64 P = P0;
  i64 Q = Q0;
  BigInt A2 = 0, A1 = 1, B2 = 1, B1 = 0;
  for (long k = 0; k < 10000000; ++k) {
    i64 a = (P + r) / Q;
    BigInt A = a * A1 + A2;
    BigInt B = a * B1 + B2;
    i64 Pn = a * Q - P;
    i64 Qn = (d - Pn * Pn) / Q;
    if (Qn == Q0) {
      BigInt G = Q0 * A - P0 * B;
      BigInt x = odd ? G : BigInt(2 * G);
      BigInt y = B;
      BigInt n = x * x - D * y * y;
      if (n == -4) {
        BigInt x2 = (x * x + D * y * y) / 2;
        y = x * y;
        x = x2;
        n = x * x - D * y * y;
      }
      if (n != 4) throw std::logic_error("pell: continued fraction produced a non-solution");
      return {x, y};
    }
    A2 = A1;
    A1 = A;
    B2 = B1;
    B1 = B;
    P = Pn;
    Q = Qn;
  }
  throw std::runtime_error("pell: period not found");
}

std::optional<PellSolution> pell_bruteforce(i64 D, i64 y_limit) {
  for (i64 y = 1; y <= y_limit; ++y) {
    i128 s = static_cast<i128>(D) * y * y + 4;
    i64 x = arith::isqrt(s);
    if (static_cast<i128>(x) * x == s) return PellSolution{BigInt(std::to_string(x)), BigInt(std::to_string(y))};
  }
  return std::nullopt;
}

PellSolution pell_fundamental(const Discriminant& D) { return pell_continued_fraction(D.value()); }

// ---------------------------------------------------------------- field

namespace {

BigInt big(i64 v) { return BigInt(std::to_string(v)); }

bool fits_i64(const BigInt& v) { return v.fits_slong_p(); }

int sign_of(const BigInt& v) { return sgn(v); }

int surd_sign(const BigInt& P, const BigInt& Q, i64 D) {
  int sp = sign_of(P), sq = sign_of(Q);
  if (sp >= 0 && sq >= 0) return (sp == 0 && sq == 0) ? 0 : 1;
  if (sp <= 0 && sq <= 0) return -1;
  BigInt lhs = P * P;
  BigInt rhs = Q * Q * D;
  int c = cmp(lhs, rhs);
  if (c == 0) return 0;
  // sign follows the dominating term
  return (c > 0) ? sp : sq;
}

}  // namespace

QuadField::QuadField(i64 D) : D_(D) {
  Discriminant check(D);
  (void)working_precision();
  delta_ = arith::mod(D, 4) == 1 ? 1 : 0;
  PellSolution p = pell_continued_fraction(D);
  unit_.x_D = p.x;
  unit_.y_D = p.y;
  eps_ = Surd{p.x, p.y};
  Real sD = sqrt(Real(D));
  unit_.eps = (Real(p.x.get_str()) + Real(p.y.get_str()) * sD) / 2;
  unit_.log_eps = log(unit_.eps);
  unit_.c_D = unit_.log_eps / real_pi();
  unit_.eps_d = static_cast<double>(unit_.eps);
  unit_.log_eps_d = static_cast<double>(unit_.log_eps);
  unit_.c_d = static_cast<double>(unit_.c_D);
  // eps is a square of a norm -1 unit exactly when x^2 - D y^2 = -4 is solvable;
  // then (x - 2)/D ... use the halving test: eps = u^2 with u = (s + t sqrt D)/2,
  // N(u) = -1 means s^2 = x - 2 and D t^2 = x + 2.
  BigInt xm = p.x - 2;
  BigInt s = sqrt(xm);
  unit_.fundamental_unit_norm = 1;
  if (s * s == xm) {
    BigInt xp = p.x + 2;
    if (xp % D == 0) {
      BigInt t2 = xp / D;
      BigInt t = sqrt(t2);
      if (t * t == t2) unit_.fundamental_unit_norm = -1;
    }
  }
}

Surd QuadField::surd(FieldElement e) const {
  return Surd{big(2 * e.a + delta_ * e.b), big(e.b)};
}

std::optional<FieldElement> QuadField::element(const Surd& s) const {
  BigInt twice_a = s.P - delta_ * s.Q;
  if (twice_a % 2 != 0) return std::nullopt;
  BigInt a = twice_a / 2;
  if (!fits_i64(a) || !fits_i64(s.Q)) return std::nullopt;
  return FieldElement{a.get_si(), s.Q.get_si()};
}

BigInt QuadField::norm(const Surd& s) const { return (s.P * s.P - D_ * s.Q * s.Q) / 4; }

i64 QuadField::norm(FieldElement e) const {
  i128 a = e.a, b = e.b;
  i128 n = delta_ ? a * a + a * b - b * b * ((D_ - 1) / 4) : a * a - b * b * (D_ / 4);
  if (n > static_cast<i128>(INT64_MAX) || n < static_cast<i128>(INT64_MIN)) throw std::overflow_error("norm overflow");
  return static_cast<i64>(n);
}

Surd QuadField::multiply(const Surd& x, const Surd& y) const {
  return Surd{(x.P * y.P + D_ * x.Q * y.Q) / 2, (x.P * y.Q + x.Q * y.P) / 2};
}

FieldElement QuadField::multiply(FieldElement x, FieldElement y) const {
  auto r = element(multiply(surd(x), surd(y)));
  if (!r) throw std::overflow_error("product does not fit in 64-bit coordinates");
  return *r;
}

FieldElement QuadField::conjugate(FieldElement e) const {
  // conj(beta) = delta - beta
  return FieldElement{e.a + delta_ * e.b, -e.b};
}

Surd QuadField::eps_power(int k) const {
  Surd base = eps_;
  if (k < 0) {
    base.Q = -base.Q;
    k = -k;
  }
  Surd out{BigInt(2), BigInt(0)};
  while (k > 0) {
    if (k & 1) out = multiply(out, base);
    base = multiply(base, base);
    k >>= 1;
  }
  return out;
}

int QuadField::sign(const Surd& s) const { return surd_sign(s.P, s.Q, D_); }
int QuadField::sign_conj(const Surd& s) const { return surd_sign(s.P, BigInt(-s.Q), D_); }

bool QuadField::totally_positive(FieldElement e) const {
  Surd s = surd(e);
  return sign(s) > 0 && sign_conj(s) > 0;
}

namespace {

// sign of x - eps^c x*
int compare_ratio_integer(const QuadField& K, const Surd& x, int c) {
  Surd xc{x.P, BigInt(-x.Q)};
  Surd rhs = K.multiply(K.eps_power(c), xc);
  return K.sign(Surd{x.P - rhs.P, x.Q - rhs.Q});
}

int compare_ratio_real(const QuadField& K, FieldElement e, double c) {
  Real lhs = K.log_abs_ratio(e);
  Real rhs = Real(c) * K.unit().log_eps;
  if (lhs > rhs) return 1;
  if (lhs < rhs) return -1;
  return 0;
}

int compare_ratio(const QuadField& K, FieldElement e, double c) {
  if (c == std::floor(c) && std::abs(c) < 1e6) return compare_ratio_integer(K, K.surd(e), static_cast<int>(c));
  return compare_ratio_real(K, e, c);
}

}  // namespace

bool QuadField::in_fundamental_domain(FieldElement e) const {
  if (!totally_positive(e)) return false;
  if (e.b < 0) return false;
  return compare_ratio_integer(*this, surd(e), 2) < 0;
}

bool QuadField::in_cone(FieldElement e, const ConeBounds& cone) const {
  if (!totally_positive(e)) return false;
  int lo = compare_ratio(*this, e, cone.lo);
  if (lo < 0 || (lo == 0 && cone.lo_open)) return false;
  int hi = compare_ratio(*this, e, cone.hi);
  if (hi > 0 || (hi == 0 && cone.hi_open)) return false;
  return true;
}

Real QuadField::sqrt_D() const { return sqrt(Real(D_)); }

std::pair<Real, Real> QuadField::embed(FieldElement e) const {
  Real sD = sqrt_D();
  Real base = Real(2 * e.a + delta_ * e.b);
  Real q = Real(e.b) * sD;
  return {(base + q) / 2, (base - q) / 2};
}

std::pair<double, double> QuadField::embed_double(FieldElement e) const {
  double sD = std::sqrt(static_cast<double>(D_));
  double base = static_cast<double>(2 * e.a + delta_ * e.b);
  double q = static_cast<double>(e.b) * sD;
  // avoid cancellation in the smaller embedding via the exact norm
  double n = static_cast<double>(norm(e));
  if (base >= 0) {
    double x = 0.5 * (base + std::abs(q));
    double y = n / x;
    return q >= 0 ? std::pair{x, y} : std::pair{y, x};
  }
  double x = 0.5 * (base - std::abs(q));
  double y = n / x;
  return q >= 0 ? std::pair{y, x} : std::pair{x, y};
}

Real QuadField::log_abs_ratio(FieldElement e) const {
  auto [x, y] = embed(e);
  // recompute the smaller embedding from the norm to keep relative accuracy
  Real n = Real(norm(e));
  if (abs(x) >= abs(y)) y = n / x;
  else x = n / y;
  return log(abs(x)) - log(abs(y));
}

// ---------------------------------------------------------------- enumeration

std::vector<FieldElement> elements_in_region(const QuadField& K, NormRange norms, const ConeBounds& cone) {
  std::vector<FieldElement> out;
  if (norms.lo < 1) norms.lo = 1;
  if (norms.hi < norms.lo) return out;
  if (cone.lo > cone.hi) return out;
  if (cone.lo == cone.hi && (cone.lo_open || cone.hi_open)) return out;

  const double D = static_cast<double>(K.D());
  const double sD = std::sqrt(D);
  const double le = K.unit().log_eps_d;
  auto g = [&](double c) { return std::exp(0.5 * c * le) - std::exp(-0.5 * c * le); };
  const double glo = g(cone.lo), ghi = g(cone.hi);
  const double nlo = std::sqrt(static_cast<double>(norms.lo)), nhi = std::sqrt(static_cast<double>(norms.hi));
  const double ymin = (glo < 0 ? nhi * glo : nlo * glo) / sD;
  const double ymax = (ghi >= 0 ? nhi * ghi : nlo * ghi) / sD;
  if (!std::isfinite(ymin) || !std::isfinite(ymax) || ymax - ymin > 1e8)
    throw std::runtime_error("elements_in_region: enumeration bound exceeded");
  const i64 y0 = static_cast<i64>(std::floor(ymin)) - 1;
  const i64 y1 = static_cast<i64>(std::ceil(ymax)) + 1;
  const double beta_conj = K.one_mod_four() ? 0.5 * (1.0 - sD) : -0.5 * sD;
  for (i64 y = y0; y <= y1; ++y) {
    double ysD = static_cast<double>(y) * sD;
    auto u_of = [&](double N) { return 0.5 * (-ysD + std::sqrt(ysD * ysD + 4.0 * N)); };
    double ulo = u_of(static_cast<double>(norms.lo));
    double uhi = u_of(static_cast<double>(norms.hi));
    i64 a0 = static_cast<i64>(std::floor(ulo - y * beta_conj)) - 1;
    i64 a1 = static_cast<i64>(std::ceil(uhi - y * beta_conj)) + 1;
    for (i64 a = a0; a <= a1; ++a) {
      FieldElement e{a, y};
      i64 N = K.norm(e);
      if (N < norms.lo || N > norms.hi) continue;
      if (!K.in_cone(e, cone)) continue;
      out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- ideals

namespace {

i64 mulmod(i64 a, i64 b, i64 m) { return static_cast<i64>(static_cast<i128>(a) * b % m); }

i64 powmod(i64 a, i64 e, i64 m) {
  i64 r = 1 % m;
  a = arith::mod(a, m);
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Square roots of n mod an odd prime p, n a nonzero quadratic residue.
i64 tonelli_shanks(i64 n, i64 p) {
  n = arith::mod(n, p);
  if (p % 4 == 3) return powmod(n, (p + 1) / 4, p);
  i64 q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  i64 z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  i64 c = powmod(z, q, p);
  i64 r = powmod(n, (q + 1) / 2, p);
  i64 t = powmod(n, q, p);
  int m = s;
  while (t != 1) {
    int i = 0;
    i64 tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    i64 b = c;
    for (int j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
    r = mulmod(r, b, p);
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    m = i;
  }
  return r;
}

std::vector<i64> roots_mod_prime(i64 D, i64 p) {
  std::vector<i64> out;
  if (p < 64) {
    for (i64 x = 0; x < p; ++x)
      if (arith::mod(x * x - D, p) == 0) out.push_back(x);
    return out;
  }
  i64 n = arith::mod(D, p);
  if (n == 0) return {0};
  if (powmod(n, (p - 1) / 2, p) != 1) return {};
  i64 r = tonelli_shanks(n, p);
  out = {std::min(r, p - r), std::max(r, p - r)};
  return out;
}

std::vector<i64> roots_mod_prime_power(i64 D, i64 p, int e) {
  std::vector<i64> roots = roots_mod_prime(D, p);
  i64 pj = p;
  for (int j = 1; j < e; ++j) {
    i64 next = pj * p;
    std::vector<i64> lifted;
    for (i64 r : roots)
      for (i64 k = 0; k < p; ++k) {
        i64 x = r + k * pj;
        if (arith::mod(mulmod(x, x, next) - arith::mod(D, next), next) == 0) lifted.push_back(x);
      }
    roots = std::move(lifted);
    pj = next;
    if (roots.empty()) break;
  }
  return roots;
}

// Extended gcd: returns g and sets u, v with u a + v b = g.
i64 ext_gcd(i64 a, i64 b, i64& u, i64& v) {
  i64 u0 = 1, v0 = 0, u1 = 0, v1 = 1;
  while (b != 0) {
    i64 q = a / b;
    i64 t = a - q * b;
    a = b;
    b = t;
    t = u0 - q * u1;
    u0 = u1;
    u1 = t;
    t = v0 - q * v1;
    v0 = v1;
    v1 = t;
  }
  if (a < 0) {
    a = -a;
    u0 = -u0;
    v0 = -v0;
  }
  u = u0;
  v = v0;
  return a;
}

}  // namespace

std::vector<i64> sqrt_disc_mod(i64 D, i64 n0) {
  if (n0 < 1) throw std::invalid_argument("sqrt_disc_mod: n0 must be positive");
  const i64 m = 4 * n0;
  std::vector<i64> roots{0};
  i64 modulus = 1;
  for (auto [p, e] : arith::factor(m)) {
    auto rp = roots_mod_prime_power(D, p, e);
    if (rp.empty()) return {};
    i64 pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    i64 u, v;
    ext_gcd(modulus, pe, u, v);  // u*modulus + v*pe = 1
    std::vector<i64> combined;
    i64 M = modulus * pe;
    for (i64 r1 : roots)
      for (i64 r2 : rp) {
        // x = r1 mod modulus, x = r2 mod pe
        i128 x = static_cast<i128>(r1) * v % M * pe % M + static_cast<i128>(r2) * u % M * modulus % M;
        combined.push_back(arith::mod(static_cast<i64>(x % M), M));
      }
    roots = std::move(combined);
    modulus = M;
  }
  std::vector<i64> out;
  for (i64 r : roots) out.push_back(r % (2 * n0));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

IdealRep unit_ideal(i64 D) { return IdealRep{1, 1, arith::mod(D, 2)}; }

IdealRep normalize_ideal(i64 D, i64 d, i64 n0, i64 b) {
  if (d < 1 || n0 < 1) throw std::invalid_argument("ideal: content and norm must be positive");
  IdealRep I{d, n0, arith::mod(b, 2 * n0)};
  if (arith::mod(static_cast<i64>(static_cast<i128>(I.b) * I.b - D), 4 * n0) != 0)
    throw std::invalid_argument("ideal: b^2 != D mod 4 n0");
  return I;
}

IdealRep multiply(i64 D, const IdealRep& x, const IdealRep& y) {
  const i64 a1 = x.n0, a2 = y.n0, b1 = x.b, b2 = y.b;
  const i64 s = (b1 + b2) / 2;
  i64 u, v, w, r;
  i64 e1 = ext_gcd(a1, a2, u, v);
  i64 e = ext_gcd(e1, s, w, r);
  i128 p = static_cast<i128>(w) * u, q = static_cast<i128>(w) * v;
  i64 A = a1 / e * (a2 / e);
  i128 num = p * a1 * b2 + q * a2 * b1 + static_cast<i128>(r) * ((static_cast<i128>(b1) * b2 + D) / 2);
  if (num % e != 0) throw std::logic_error("ideal product: non-integral middle coefficient");
  i128 B = num / e;
  i128 m2 = 2 * static_cast<i128>(A);
  B %= m2;
  if (B < 0) B += m2;
  return normalize_ideal(D, x.d * y.d * e, A, static_cast<i64>(B));
}

IdealRep conjugate(i64 D, const IdealRep& x) { return normalize_ideal(D, x.d, x.n0, -x.b); }

IdealRep principal_ideal(const QuadField& K, FieldElement x) {
  // Z-basis {x, x*beta} in coordinates over {1, beta}; reduce to
  // rows (X, 0), (Y, g).
  FieldElement xb = K.multiply(x, FieldElement{0, 1});
  i64 r1a = x.a, r1b = x.b, r2a = xb.a, r2b = xb.b;
  i64 u, v;
  i64 g = ext_gcd(r1b, r2b, u, v);
  if (g == 0) throw std::invalid_argument("principal_ideal: zero element");
  i128 Y = static_cast<i128>(u) * r1a + static_cast<i128>(v) * r2a;
  // (r1b/g) * row2 - (r2b/g) * row1 has zero second coordinate
  i128 X = static_cast<i128>(r1b / g) * r2a - static_cast<i128>(r2b / g) * r1a;
  if (X < 0) X = -X;
  const i64 d = g;
  const i64 delta = K.one_mod_four() ? 1 : 0;
  if (X % d != 0 || Y % d != 0) throw std::logic_error("principal_ideal: content mismatch");
  i64 n0 = static_cast<i64>(X / d);
  i64 b = static_cast<i64>(2 * (Y / d) + delta);
  return normalize_ideal(K.D(), d, n0, b);
}

std::vector<IdealRep> ideals_of_norm(i64 D, i64 n) {
  if (n < 1) throw std::invalid_argument("ideals_of_norm: n must be positive");
  std::vector<IdealRep> out;
  for (i64 d = 1; d * d <= n; ++d) {
    if (n % (d * d) != 0) continue;
    i64 n0 = n / (d * d);
    for (i64 b : sqrt_disc_mod(D, n0)) out.push_back(IdealRep{d, n0, b});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<FieldElement> find_totally_positive_generator(const QuadField& K, const IdealRep& I) {
  const i64 D = K.D();
  const i64 n0 = I.n0;
  const i64 delta = K.one_mod_four() ? 1 : 0;
  const double ymax_d = K.unit().eps_d * std::sqrt(static_cast<double>(n0) / static_cast<double>(D)) * (1 + 1e-9) + 1;
  if (!(ymax_d < 5e7)) throw std::runtime_error("totally_positive_generator: enumeration bound exceeded");
  const i64 ymax = static_cast<i64>(ymax_d);
  const i64 shift = arith::mod((I.b - delta) / 2, n0);
  for (i64 y = 0; y <= ymax; ++y) {
    i128 s2 = 4 * static_cast<i128>(n0) + static_cast<i128>(D) * y * y;
    i64 s = arith::isqrt(s2);
    if (static_cast<i128>(s) * s != s2) continue;
    i64 twice_a = s - delta * y;
    if (twice_a % 2 != 0) continue;
    i64 a = twice_a / 2;
    if (arith::mod(a - static_cast<i64>(static_cast<i128>(y) * shift % n0), n0) != 0) continue;
    FieldElement g{a, y};
    if (!K.in_fundamental_domain(g)) continue;
    return FieldElement{a * I.d, y * I.d};
  }
  return std::nullopt;
}

FieldElement totally_positive_generator(const QuadField& K, const IdealRep& I) {
  auto g = find_totally_positive_generator(K, I);
  if (!g) throw std::runtime_error("totally_positive_generator: no generator in the fundamental domain");
  return *g;
}

}  // namespace geod::quadfield
