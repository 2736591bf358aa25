#include "geod/analysis.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "geod/arith.hpp"
#include "geod/parallel.hpp"

namespace geod::analysis {

namespace {

constexpr double kPi = std::numbers::pi;

// P_j with phi^{(j)} = P_j(u) (1-u^2)^{-2j} phi(u); coefficients in u.
const std::vector<std::vector<double>>& derivative_polys(int j) {
  static std::mutex mu;
  static std::vector<std::vector<double>> polys{{1.0}};
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(polys.size()) <= j) {
    const auto& P = polys.back();
    const int jj = static_cast<int>(polys.size()) - 1;
    // P_{j+1} = (P'(1-u^2) + 4 j u P)(1-u^2) - 2 u P
    std::vector<double> a(P.size() + 4, 0.0);
    for (std::size_t i = 1; i < P.size(); ++i) {
      const double d = P[i] * static_cast<double>(i);  // P' coefficient at u^{i-1}
      a[i - 1] += d;
      a[i + 1] -= d;
    }
    for (std::size_t i = 0; i < P.size(); ++i) a[i + 1] += 4.0 * jj * P[i];
    std::vector<double> b(a.size() + 2, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      b[i] += a[i];
      b[i + 2] -= a[i];
    }
    for (std::size_t i = 0; i < P.size(); ++i) b[i + 1] -= 2.0 * P[i];
    while (b.size() > 1 && b.back() == 0.0) b.pop_back();
    polys.push_back(b);
  }
  return polys;
}

double mollifier_integral(double lo, double hi) {
  if (hi <= lo) return 0.0;
  return boost::math::quadrature::gauss<double, 20>::integrate(mollifier, lo, hi);
}

// Cumulative integrals of the mollifier from each end on a uniform grid;
// evaluations add one short Gauss-Legendre piece.
struct MollifierTable {
  static constexpr int kCells = 512;
  std::vector<double> left, right;  // int_{-1}^{u_k}, int_{u_k}^{1}
  MollifierTable() : left(kCells + 1, 0.0), right(kCells + 1, 0.0) {
    for (int k = 0; k < kCells; ++k) left[k + 1] = left[k] + mollifier_integral(node(k), node(k + 1));
    for (int k = kCells; k > 0; --k) right[k - 1] = right[k] + mollifier_integral(node(k - 1), node(k));
  }
  static double node(int k) { return -1.0 + 2.0 * k / kCells; }
  double mass() const { return left[kCells]; }
  // 1 - Phi(u), accurate at both ends
  double upper_tail(double u) const {
    if (u <= -1.0) return 1.0;
    if (u >= 1.0) return 0.0;
    const int k = std::min(kCells - 1, static_cast<int>((u + 1.0) * kCells / 2));
    if (u <= 0.0) return 1.0 - (left[k] + mollifier_integral(node(k), u)) / mass();
    return (right[k + 1] + mollifier_integral(u, node(k + 1))) / mass();
  }
};

const MollifierTable& mollifier_table() {
  static const MollifierTable t;
  return t;
}

double mollifier_mass() { return mollifier_table().mass(); }

}  // namespace

double mollifier(double u) {
  if (!(u > -1.0 && u < 1.0)) return 0.0;
  return std::exp(-1.0 / (1.0 - u * u));
}

double mollifier_derivative(int j, double u) {
  if (j < 0) throw std::invalid_argument("mollifier_derivative: j must be >= 0");
  if (!(u > -1.0 && u < 1.0)) return 0.0;
  if (j == 0) return mollifier(u);
  const auto& P = derivative_polys(j)[static_cast<std::size_t>(j)];
  double p = 0;
  for (std::size_t i = P.size(); i-- > 0;) p = p * u + P[i];
  const double w = 1.0 - u * u;
  // combine in logs to avoid 0 * inf near the ends
  const double log_mag = -1.0 / w - 2.0 * j * std::log(w);
  if (p == 0.0) return 0.0;
  return (p > 0 ? 1.0 : -1.0) * std::exp(std::log(std::abs(p)) + log_mag);
}

SmoothStep::SmoothStep(double p, double q) : p_(p), q_(q) {
  if (p == q) throw std::invalid_argument("SmoothStep: empty transition interval");
}

double SmoothStep::operator()(double x) const {
  return mollifier_table().upper_tail(2.0 * (x - p_) / (q_ - p_) - 1.0);
}

double SmoothStep::derivative(int j, double x) const {
  if (j == 0) return (*this)(x);
  const double u = 2.0 * (x - p_) / (q_ - p_) - 1.0;
  if (!(u > -1.0 && u < 1.0)) return 0.0;
  return -std::pow(2.0 / (q_ - p_), j) * mollifier_derivative(j - 1, u) / mollifier_mass();
}

double eta(double x) {
  static const SmoothStep s(1.0, 2.0);
  return s(x);
}

double dyadic_W(double x) { return eta(x) - eta(2 * x); }

double dyadic_W_derivative(int j, double x) {
  static const SmoothStep s(1.0, 2.0);
  return s.derivative(j, x) - std::pow(2.0, j) * s.derivative(j, 2 * x);
}

double partition_sum(double x, int K) {
  double s = 0;
  for (int k = 0; k <= K; ++k) s += dyadic_W(std::ldexp(x, -k));
  return s;
}

double partition_sum_check(const std::vector<double>& grid) {
  double worst = 0;
  for (double x : grid) {
    int K = 0;
    while (std::ldexp(1.0, K) < x) ++K;
    const double expected = eta(std::ldexp(x, -K)) - eta(2 * x);
    worst = std::max(worst, std::abs(partition_sum(x, K) - expected));
  }
  return worst;
}

double bump_U(double x, double t, double cD) {
  static const SmoothStep s(0.0, -0.5);
  return s(x / (cD * t));
}

// ------------------------------------------------------------------ windows

Windows Windows::make(const quadfield::QuadField& K, double t, int k, double delta) {
  return Windows{t, K.D(), K.unit().log_eps_d, k, delta};
}

double Windows::cD() const { return log_eps / kPi; }
double Windows::T() const { return std::ldexp(1.0, k); }
double Windows::Tt_power() const { return std::pow(T() * t, 1.0 + delta); }
i64 Windows::a_T() const { return static_cast<i64>(std::floor(Tt_power())) + 1; }
int Windows::k_D() const { return static_cast<int>(std::floor(std::log2(1.5 * cD() * t) + 1)); }

double Windows::W_k(double x) const { return dyadic_W((cD() * t - x) / T()); }

double Windows::W_k_derivative(int j, double x) const {
  return std::pow(-1.0 / T(), j) * dyadic_W_derivative(j, (cD() * t - x) / T());
}

double Windows::U(double x) const { return bump_U(x, t, cD()); }

double Windows::U_derivative(int j, double x) const {
  static const SmoothStep s(0.0, -0.5);
  return std::pow(1.0 / (cD() * t), j) * s.derivative(j, x / (cD() * t));
}

double Windows::U_T(double v) const {
  static const SmoothStep rise(0.0, 1.0);
  const SmoothStep fall(Tt_power(), static_cast<double>(a_T()));
  return (1.0 - rise(v)) * fall(v);
}

double Windows::W_prime(int a, double v) const { return dyadic_W(std::ldexp(v, -a)); }

std::vector<i64> Windows::window_support() const {
  std::vector<i64> out;
  const double c = cD() * t;
  for (i64 n = static_cast<i64>(std::floor(c - 2 * T())) - 1; n <= static_cast<i64>(std::ceil(c - T() / 2)) + 1; ++n)
    if (W_k(static_cast<double>(n)) * U(static_cast<double>(n)) != 0.0) out.push_back(n);
  return out;
}

// ------------------------------------------------------------------ V in x

namespace {

constexpr int kXNodes = 32;

double xnode(int k) { return std::cos(kPi * k / (kXNodes - 1)); }

double barycentric(const std::vector<double>& v, double s) {
  double num = 0, den = 0;
  for (int k = 0; k < kXNodes; ++k) {
    const double diff = s - xnode(k);
    if (diff == 0) return v[k];
    double w = (k % 2 == 0) ? 1.0 : -1.0;
    if (k == 0 || k == kXNodes - 1) w *= 0.5;
    w /= diff;
    num += w * v[k];
    den += w;
  }
  return num / den;
}

}  // namespace

VxInterpolant::VxInterpolant(double y, double t, double log_eps, double x_lo, double x_hi, const special::VConfig& cfg)
    : x_lo_(x_lo) {
  if (!(x_hi > x_lo)) throw std::invalid_argument("VxInterpolant: empty interval");
  pieces_ = std::max(1, static_cast<int>(std::ceil(x_hi - x_lo)));
  width_ = (x_hi - x_lo) / pieces_;
  values_.assign(pieces_, std::vector<double>(kXNodes));
  for (int piece = 0; piece < pieces_; ++piece)
    for (int k = 0; k < kXNodes; ++k) {
      const double x = x_lo + width_ * (piece + 0.5 * (1 - xnode(k)));
      special::GammaFactorParams p{t, 0, x, log_eps};
      values_[piece][k] = special::V(y, p, cfg).value;
    }
}

double VxInterpolant::operator()(double x) const {
  const double l = (x - x_lo_) / width_;
  int piece = std::clamp(static_cast<int>(std::floor(l)), 0, pieces_ - 1);
  if (l < -1e-9 || l > pieces_ + 1e-9) throw std::out_of_range("VxInterpolant: x outside the tabulated range");
  return barycentric(values_[piece], 1 - 2 * (l - piece));
}

// ------------------------------------------------------------------ H_A

HFunction::HFunction(const quadfield::QuadField& K, const Windows& w, int a, FieldElement alpha, i64 m,
                     const special::VConfig& cfg)
    : w_(w) {
  if (!K.in_fundamental_domain(alpha)) throw std::invalid_argument("HFunction: alpha must lie in F_D");
  norm_ = static_cast<double>(K.norm(alpha));
  theta_ = static_cast<double>(K.log_abs_ratio(alpha) / (2 * K.unit().log_eps));
  prefactor_ = std::pow(w.T() * w.t, -0.5) / std::sqrt(norm_) * w.W_prime(a, norm_) * w.U_T(norm_);
  const double c = w.cD() * w.t;
  lo_ = std::max(c - 2 * w.T(), -c / 2);
  hi_ = c - w.T() / 2;
  if (prefactor_ != 0.0 && hi_ > lo_) {
    const double y = static_cast<double>(m) * static_cast<double>(m) * norm_ / static_cast<double>(w.D);
    V_ = std::make_unique<VxInterpolant>(y, w.t, w.log_eps, lo_, hi_, cfg);
  } else {
    prefactor_ = 0.0;
  }
}

double HFunction::operator()(double x) const {
  if (prefactor_ == 0.0 || x <= lo_ || x >= hi_) return 0.0;
  return prefactor_ * w_.W_k(x) * w_.U(x) * (*V_)(x);
}

double H_A_direct(const quadfield::QuadField& K, const Windows& w, int a, FieldElement alpha, i64 m, double x,
                  const special::VConfig& cfg) {
  const double N = static_cast<double>(K.norm(alpha));
  const double pre = std::pow(w.T() * w.t, -0.5) / std::sqrt(N) * w.W_prime(a, N) * w.U_T(N) * w.W_k(x) * w.U(x);
  if (pre == 0.0) return 0.0;
  special::GammaFactorParams p{w.t, w.D, x, w.log_eps};
  return pre * special::V(static_cast<double>(m) * static_cast<double>(m) * N / static_cast<double>(w.D), p, cfg).value;
}

// ------------------------------------------------------------------ Fourier

FourierTransform::FourierTransform(std::function<double(double)> h, double lo, double hi, double tol, int min_panels)
    : lo_(lo), hi_(hi), h_(std::move(h)), tol_(tol) {
  if (!(hi > lo)) throw std::invalid_argument("FourierTransform: empty support");
  int panels = std::max({8, min_panels, static_cast<int>(std::ceil(4 * (hi - lo)))});
  build(h_, lo, hi, panels);
  // double until the integral and a moderate frequency are stable
  for (int it = 0; it < 12; ++it) {
    const cplx a0 = (*this)(0.0), a1 = (*this)(4.0);
    std::vector<double> x_old = x_, w_old = wh_;
    build(h_, lo, hi, panels * 2);
    const cplx b0 = (*this)(0.0), b1 = (*this)(4.0);
    panels *= 2;
    const double scale = std::max(1e-300, std::abs(b0));
    if (std::abs(a0 - b0) <= tol_ * scale && std::abs(a1 - b1) <= tol_ * scale) {
      x_ = std::move(x_old);
      wh_ = std::move(w_old);
      return;
    }
  }
}

void FourierTransform::build(const std::function<double(double)>& h, double lo, double hi, int panels) {
  using GL = boost::math::quadrature::gauss<double, 20>;
  const auto& absc = GL::abscissa();
  const auto& wts = GL::weights();
  x_.clear();
  wh_.clear();
  const double width = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double c = lo + (p + 0.5) * width;
    for (std::size_t i = 0; i < absc.size(); ++i) {
      for (int sgn : {-1, 1}) {
        if (absc[i] == 0.0 && sgn == 1) continue;
        const double x = c + sgn * absc[i] * width / 2;
        const double v = h(x);
        if (v == 0.0) continue;
        x_.push_back(x);
        wh_.push_back(wts[i] * width / 2 * v);
      }
    }
  }
}

cplx FourierTransform::operator()(double xi) const {
  long double re = 0, im = 0;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    const double ang = -2 * kPi * xi * x_[i];
    re += wh_[i] * std::cos(ang);
    im += wh_[i] * std::sin(ang);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

PoissonReport poisson_identity_residual(const HFunction& H, double tail_tol, int xi_cap) {
  PoissonReport rep;
  if (!H.active()) return rep;
  const double th = H.theta();
  long double lre = 0, lim = 0;
  for (i64 n = static_cast<i64>(std::floor(H.support_lo())); n <= static_cast<i64>(std::ceil(H.support_hi())); ++n) {
    const double v = H(static_cast<double>(n));
    lre += v * std::cos(2 * kPi * n * th);
    lim += v * std::sin(2 * kPi * n * th);
  }
  rep.lhs_re = static_cast<double>(lre);
  rep.lhs_im = static_cast<double>(lim);

  // nodes resolve the frequencies we reach: rebuild when the range doubles
  int xi_max = 64;
  std::function<double(double)> h = [&H](double x) { return H(x); };
  for (;;) {
    // at least one 20-point panel per half oscillation at xi_max
    const double width = H.support_hi() - H.support_lo();
    const int panels = static_cast<int>(std::ceil(width * (xi_max + 1) / 2.0));
    FourierTransform hat(h, H.support_lo(), H.support_hi(), 1e-14, panels);
    long double rre = 0, rim = 0, last_block = 0;
    for (int xi = -xi_max; xi <= xi_max; ++xi) {
      const cplx v = hat(xi - th);
      rre += v.real();
      rim += v.imag();
      if (std::abs(xi) > xi_max - 8) last_block = std::max<long double>(last_block, std::abs(v));
    }
    rep.rhs_re = static_cast<double>(rre);
    rep.rhs_im = static_cast<double>(rim);
    rep.xi_max = xi_max;
    rep.residual = std::hypot(rep.lhs_re - rep.rhs_re, rep.lhs_im - rep.rhs_im);
    if (last_block < tail_tol) {
      rep.truncation_ok = true;
      return rep;
    }
    if (xi_max * 2 > xi_cap) return rep;
    xi_max *= 2;
  }
}

// ------------------------------------------------------------------ Pi_alpha

PiTables make_pi_tables(const quadfield::QuadField& K, const Windows& w, const lfunc::AFEConfig& cfg) {
  PiTables P;
  P.w = w;
  P.ns = w.window_support();
  for (i64 n : P.ns) {
    P.weights.push_back(std::pow(w.T() * w.t, -0.5) * w.W_k(static_cast<double>(n)) * w.U(static_cast<double>(n)));
    const auto p = special::GammaFactorParams::make(w.t, K, static_cast<double>(n));
    P.plans.push_back(lfunc::afe_plan(p, cfg));
    P.V.emplace_back(p, P.plans.back().y_lo, P.plans.back().y_hi, cfg.v);
  }
  return P;
}

namespace {

// e(n theta_alpha) for every n of the window
std::vector<cplx> window_phases(const quadfield::QuadField& K, const PiTables& P, FieldElement alpha) {
  const Real ratio = K.log_abs_ratio(alpha) / (2 * K.unit().log_eps);
  std::vector<cplx> out;
  for (i64 n : P.ns) {
    const Real turns = Real(n) * ratio;
    out.push_back(std::polar(1.0, 2 * kPi * static_cast<double>(turns - floor(turns))));
  }
  return out;
}

cplx Pi_with_phases(const PiTables& P, const std::vector<cplx>& phases, double y) {
  cplx s = 0;
  for (std::size_t i = 0; i < P.ns.size(); ++i) {
    if (y > P.plans[i].y_zero) continue;  // dropped on the AFE side as well
    s += P.weights[i] * P.V[i](y) * phases[i];
  }
  return s;
}

}  // namespace

cplx Pi_alpha(const quadfield::QuadField& K, const PiTables& P, FieldElement alpha, i64 m) {
  const double y = static_cast<double>(m) * static_cast<double>(m) * static_cast<double>(K.norm(alpha)) /
                   static_cast<double>(K.D());
  return Pi_with_phases(P, window_phases(K, P, alpha), y);
}

IdentityReport character_orthogonality_check(const lfunc::MaassForm& f, const hecke::HeckeField& F, int k,
                                             const lfunc::AFEConfig& cfg_in, hecke::ThetaCache* cache, int jobs) {
  const auto& K = F.field();
  const Windows w = Windows::make(K, f.t, k, cfg_in.delta);
  IdentityReport rep;
  rep.k = k;
  rep.ns = w.window_support();
  if (rep.ns.empty()) return rep;

  // one M for the whole window
  lfunc::AFEConfig cfg = cfg_in;
  cfg.enforce_parity = false;
  i64 M = 0;
  for (i64 n : rep.ns)
    M = std::max(M, lfunc::afe_plan(special::GammaFactorParams::make(f.t, K, static_cast<double>(n)), cfg).M);
  cfg.M = M;
  rep.M = M;
  if (f.N() < M) throw lfunc::CoefficientShortfall(M, f.N());

  hecke::ThetaCache local;
  if (!cache) cache = &local;
  const auto psis = hecke::all_class_characters(F.group());
  const double pre = std::pow(w.T() * w.t, -0.5);
  std::vector<std::pair<i64, int>> jobs_list;
  for (i64 n : rep.ns)
    for (std::size_t p = 0; p < psis.size(); ++p) jobs_list.emplace_back(n, static_cast<int>(p));
  std::vector<lfunc::LValueResult> vals(jobs_list.size());
  parallel_for(jobs_list.size(), jobs, [&](std::size_t i) {
    const hecke::HeckeCharacter chi{psis[static_cast<std::size_t>(jobs_list[i].second)], jobs_list[i].first};
    vals[i] = lfunc::rankin_selberg_central(f, F, chi, hecke::ThetaVariant::plain, cfg, cache);
  });
  for (std::size_t i = 0; i < jobs_list.size(); ++i) {
    const double n = static_cast<double>(jobs_list[i].first);
    const double wt = pre * w.W_k(n) * w.U(n);
    rep.lhs += wt * cplx(vals[i].value, vals[i].imag);
    rep.lhs_error += std::abs(wt) * vals[i].error;
  }

  // right side: narrowly principal ideals only, via F_D
  const PiTables P = make_pi_tables(K, w, cfg);
  double y_zero = 0;
  for (const auto& pl : P.plans) y_zero = std::max(y_zero, pl.y_zero);
  const double Dd = static_cast<double>(K.D());
  const i64 n_max = std::min<i64>(M, static_cast<i64>(std::floor(y_zero * Dd)));
  const auto alphas = quadfield::elements_in_region(K, {1, n_max}, quadfield::ConeBounds::fundamental_domain());
  rep.elements = static_cast<i64>(alphas.size());
  std::vector<cplx> partial(alphas.size());
  std::vector<double> partial_abs(alphas.size());
  parallel_for(alphas.size(), jobs, [&](std::size_t i) {
    const FieldElement a = alphas[i];
    const i64 N = K.norm(a);
    const double lam = f(N) / std::sqrt(static_cast<double>(N));
    const auto phases = window_phases(K, P, a);
    cplx s = 0;
    double s_abs = 0;
    for (i64 m = 1; m <= M; ++m) {
      const double y = static_cast<double>(m) * static_cast<double>(m) * static_cast<double>(N) / Dd;
      if (y > y_zero) break;
      const int chi = arith::kronecker(K.D(), m);
      if (chi == 0) continue;
      const cplx pi = Pi_with_phases(P, phases, y);
      s += static_cast<double>(chi) / static_cast<double>(m) * pi;
      s_abs += std::abs(pi) / static_cast<double>(m);
    }
    partial[i] = lam * s;
    partial_abs[i] = std::abs(lam) * s_abs;
  });
  long double re = 0, im = 0, abs_sum = 0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    re += partial[i].real();
    im += partial[i].imag();
    abs_sum += partial_abs[i];
  }
  const double h = static_cast<double>(F.h());
  rep.rhs = h * cplx(static_cast<double>(re), static_cast<double>(im));
  rep.rhs_error = 1e-13 * h * static_cast<double>(abs_sum);
  rep.difference = std::abs(rep.lhs - rep.rhs);
  return rep;
}

// ------------------------------------------------------------------ lattice regions

namespace {

quadfield::ConeBounds region_cone(const LatticeRegion& r) {
  quadfield::ConeBounds c;
  const double lo = static_cast<double>(r.xi) - r.R;
  const double hi = static_cast<double>(r.xi) + r.R;
  c.lo = std::max(lo, 0.0);
  c.lo_open = false;
  if (hi < 2.0) {
    c.hi = hi;
    c.hi_open = false;
  } else {
    c.hi = 2.0;
    c.hi_open = true;
  }
  return c;
}

quadfield::NormRange region_norms(const LatticeRegion& r) {
  return {static_cast<i64>(std::ceil(r.A / 2)), static_cast<i64>(std::floor(2 * r.A))};
}

}  // namespace

std::vector<FieldElement> S_region_enumerate(const quadfield::QuadField& K, const LatticeRegion& region) {
  if (!(region.R > 0) || !(region.A >= 1)) throw std::invalid_argument("S_region_enumerate: need R > 0, A >= 1");
  const auto cone = region_cone(region);
  if (cone.hi < cone.lo) return {};
  return quadfield::elements_in_region(K, region_norms(region), cone);
}

std::vector<FieldElement> S_region_bruteforce(const quadfield::QuadField& K, const LatticeRegion& region) {
  std::vector<FieldElement> out;
  const auto norms = region_norms(region);
  const double bound = K.unit().eps_d * std::sqrt(2 * region.A) + 2;
  const i64 B = static_cast<i64>(std::ceil(bound / std::sqrt(static_cast<double>(K.D())))) + 1;
  const i64 Amax = static_cast<i64>(std::ceil(2 * bound)) + B + 1;
  const Real lo = Real(std::max(static_cast<double>(region.xi) - region.R, 0.0));
  const double hi_d = static_cast<double>(region.xi) + region.R;
  const Real hi = Real(std::min(hi_d, 2.0));
  const bool hi_open = hi_d >= 2.0;
  for (i64 b = -B; b <= B; ++b)
    for (i64 a = -Amax; a <= Amax; ++a) {
      const FieldElement e{a, b};
      const i64 n = K.norm(e);
      if (n < norms.lo || n > norms.hi) continue;
      if (!K.totally_positive(e)) continue;
      Real l = K.log_abs_ratio(e) / K.unit().log_eps;
      // l = k exactly iff e^2 eps^{-k} is rational; rounding cannot decide that
      const Real k = round(l);
      if (abs(l - k) < Real("1e-30")) {
        const auto x = K.surd(e);
        if (K.multiply(K.multiply(x, x), K.eps_power(-static_cast<int>(k))).Q == 0) l = k;
      }
      if (l < lo) continue;
      if (hi_open ? !(l < hi) : !(l <= hi)) continue;
      out.push_back(e);
    }
  std::sort(out.begin(), out.end());
  return out;
}

bool parallelogram_check(const quadfield::QuadField& K, const LatticeRegion& region,
                         const std::vector<FieldElement>& points) {
  const Real eps = K.unit().eps;
  const Real s = sqrt(Real(2 * region.A));
  const Real slope = exp(-K.unit().log_eps * Real(static_cast<double>(region.xi) + region.R));
  const Real height = 2 * pow(eps, 5) * Real(region.R) * s;
  const Real slack = Real("1e-30");
  for (const auto& e : points) {
    auto [x, y] = K.embed(e);
    const bool ok = x >= -slack && x <= eps * s + slack && y >= slope * x - slack && y <= slope * x + height + slack;
    if (!ok)
      throw std::logic_error("parallelogram containment violated at (" + std::to_string(e.a) + ", " +
                             std::to_string(e.b) + ")");
  }
  return true;
}

CountBound lipschitz_count_bound(const quadfield::QuadField& K, const LatticeRegion& region, double C) {
  CountBound out;
  out.count = static_cast<i64>(S_region_enumerate(K, region).size());
  out.shape = region.R * region.A + std::sqrt(region.A);
  out.bound = C * out.shape;
  return out;
}

}  // namespace geod::analysis
