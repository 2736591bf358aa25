#include "geod/lfunctions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <numbers>
#include <random>
#include <sstream>

#include "geod/arith.hpp"

namespace geod::lfunc {

namespace {

constexpr double kPi = std::numbers::pi;

double hecke_rhs(const MaassForm& f, i64 m, i64 n) {
  const i64 g = arith::gcd(m, n);
  double s = 0;
  for (i64 d = 1; d <= g; ++d)
    if (g % d == 0) s += f(m * n / (d * d));
  return s;
}

}  // namespace

HeckeCheck check_hecke_relations(const MaassForm& f, double tol, int pairs, std::uint64_t seed) {
  HeckeCheck out;
  const i64 N = f.N();
  if (N < 4) return out;
  std::mt19937_64 rng(seed);
  const i64 root = arith::isqrt(N);
  for (int k = 0; k < pairs; ++k) {
    const i64 m = std::uniform_int_distribution<i64>(2, std::max<i64>(2, root))(rng);
    const i64 n = std::uniform_int_distribution<i64>(2, std::max<i64>(2, N / m))(rng);
    if (m * n > N) continue;
    const double defect = std::abs(f(m) * f(n) - hecke_rhs(f, m, n));
    out.max_defect = std::max(out.max_defect, defect);
    ++out.pairs;
    if (defect > tol)
      throw std::runtime_error("Hecke relation fails at (" + std::to_string(m) + ", " + std::to_string(n) +
                               "): defect " + std::to_string(defect));
  }
  return out;
}

MaassForm maass_form_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("coefficient file is not valid JSON: ") + e.what());
  }
  auto need = [&](const char* key) -> const nlohmann::json& {
    if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("coefficient file lacks '") + key + "'");
    return j.at(key);
  };
  MaassForm f;
  const auto& level = need("level");
  if (!level.is_number_integer() || level.get<int>() != 1) throw std::invalid_argument("only level 1 forms are supported");
  const auto& sp = need("spectral_parameter");
  if (!sp.is_number() || !(sp.get<double>() > 0)) throw std::invalid_argument("spectral_parameter must be positive");
  f.t = sp.get<double>();
  const auto& par = need("parity");
  if (!par.is_string()) throw std::invalid_argument("parity must be a string");
  f.parity = parity_from_string(par.get<std::string>());
  const auto& prov = need("provenance");
  if (!prov.is_string() || prov.get<std::string>().empty()) throw std::invalid_argument("provenance must be a non-empty string");
  f.source = prov.get<std::string>();
  const auto& coeffs = need("coefficients");
  if (!coeffs.is_array() || coeffs.empty()) throw std::invalid_argument("coefficients must be a non-empty array");
  f.lambda.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    if (!c.is_number()) throw std::invalid_argument("coefficients must be numbers");
    f.lambda.push_back(c.get<double>());
  }
  if (std::abs(f.lambda[0] - 1.0) > 1e-12) throw std::invalid_argument("coefficients must be normalised with lambda(1) = 1");
  check_hecke_relations(f);
  return f;
}

MaassForm load_maass_form(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open coefficient file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return maass_form_from_json(ss.str());
}

std::string maass_form_to_json(const MaassForm& f) {
  // hand-written so the coefficients keep 17 significant digits
  std::ostringstream os;
  os << std::setprecision(17);
  os << "{\n  \"level\": " << f.level << ",\n  \"spectral_parameter\": " << f.t << ",\n  \"parity\": \""
     << to_string(f.parity) << "\",\n  \"provenance\": " << nlohmann::json(f.source).dump()
     << ",\n  \"coefficients\": [";
  for (std::size_t i = 0; i < f.lambda.size(); ++i) {
    if (i % 8 == 0) os << "\n    ";
    os << f.lambda[i];
    if (i + 1 < f.lambda.size()) os << ", ";
  }
  os << "\n  ]\n}\n";
  return os.str();
}

void save_maass_form(const MaassForm& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << maass_form_to_json(f);
}

std::string data_dir() {
  if (const char* env = std::getenv("GEOD_DATA_DIR"); env && *env) return env;
  return GEOD_DATA_DIR_DEFAULT;
}

std::string default_form_path(Parity parity) { return data_dir() + "/maass_level1_" + to_string(parity) + ".json"; }

CoefficientShortfall::CoefficientShortfall(i64 req, i64 avail)
    : std::runtime_error("insufficient coefficients: need N >= " + std::to_string(req) + ", have " +
                         std::to_string(avail)),
      required(req),
      available(avail) {}

// ------------------------------------------------------------ V interpolation

namespace {

constexpr int kNodes = 24;

double cheb_node(int k) { return std::cos(kPi * k / (kNodes - 1)); }

}  // namespace

VInterpolant::VInterpolant(const special::GammaFactorParams& p, double y_lo, double y_hi, const special::VConfig& cfg)
    : y_lo_(y_lo), y_hi_(y_hi), l0_(std::log(y_lo)) {
  if (!(y_lo > 0 && y_hi > y_lo)) throw std::invalid_argument("VInterpolant: bad range");
  pieces_ = std::max(1, static_cast<int>(std::ceil(std::log(y_hi) - l0_)));
  values_.assign(pieces_, std::vector<double>(kNodes));
  for (int piece = 0; piece < pieces_; ++piece) {
    for (int k = 0; k < kNodes; ++k) {
      const double l = l0_ + piece + 0.5 * (1 - cheb_node(k));
      auto r = special::V(std::exp(l), p, cfg);
      values_[piece][k] = r.value;
      quad_error_ = std::max(quad_error_, r.quad_error);
    }
  }
}

double VInterpolant::operator()(double y) const {
  const double l = std::log(y) - l0_;
  int piece = static_cast<int>(std::floor(l));
  if (piece < 0 || piece >= pieces_) {
    if (l < -1e-9 || l > pieces_ + 1e-9) throw std::out_of_range("VInterpolant: y outside the tabulated range");
    piece = std::clamp(piece, 0, pieces_ - 1);
  }
  const double s = 1 - 2 * (l - piece);  // node coordinate in [-1, 1]
  // barycentric formula for Chebyshev-Lobatto nodes
  double num = 0, den = 0;
  for (int k = 0; k < kNodes; ++k) {
    const double diff = s - cheb_node(k);
    if (diff == 0) return values_[piece][k];
    double w = (k % 2 == 0) ? 1.0 : -1.0;
    if (k == 0 || k == kNodes - 1) w *= 0.5;
    w /= diff;
    num += w * values_[piece][k];
    den += w;
  }
  return num / den;
}

double V_cutoff(const special::GammaFactorParams& p, double tol, const special::VConfig& cfg) {
  double y = std::max(1.0, special::V_balance_point(p));
  int below = 0;
  for (int k = 0; k < 80; ++k) {
    if (std::abs(special::V(y, p, cfg).value) < tol) {
      if (++below == 2) {
        // walk back from the first point below tol on a finer grid
        double c = y / 2;
        const double step = std::exp2(-1.0 / 8);
        while (c * step > y / 4 && std::abs(special::V(c * step, p, cfg).value) < tol) c *= step;
        return c;
      }
    } else {
      below = 0;
    }
    y *= 2;
  }
  throw std::runtime_error("V_cutoff: V does not decay");
}

// ------------------------------------------------------------ Rankin-Selberg

std::vector<hecke::cplx> theta_dirichlet_coefficients(const hecke::ThetaCoefficients& th) {
  std::vector<hecke::cplx> out(static_cast<std::size_t>(th.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * th.sums[i];
  return out;
}

Parity parity_of(const hecke::HeckeCharacter& chi) { return chi.n % 2 == 0 ? Parity::even : Parity::odd; }

AFEPlan afe_plan(const special::GammaFactorParams& p, const AFEConfig& cfg) {
  AFEPlan plan;
  const double q = special::analytic_conductor(0.5, p.t, p.r());
  plan.y_cut = V_cutoff(p, cfg.v_tol, cfg.v);
  if (cfg.M > 0) {
    plan.M = cfg.M;
  } else {
    const double m_spec = std::ceil(cfg.c * std::pow(q, 0.5 + cfg.delta));
    const double m_v = std::ceil(static_cast<double>(p.D) * plan.y_cut);
    plan.M = static_cast<i64>(std::max(m_spec, m_v));
  }
  // terms beyond y_zero are below v_tol * 1e-8 and are dropped
  plan.y_zero = std::max(plan.y_cut, V_cutoff(p, cfg.v_tol * 1e-8, cfg.v));
  const double Dd = static_cast<double>(p.D);
  plan.y_lo = 0.9999 / Dd;
  plan.y_hi = std::max(plan.y_zero * 1.0001, 2.0 / Dd);
  return plan;
}

LValueResult afe_sum(const std::vector<double>& lambda_f, const std::vector<hecke::cplx>& lambda_theta, i64 D,
                     const special::GammaFactorParams& p, const AFEConfig& cfg) {
  LValueResult res;
  res.q_infty = special::analytic_conductor(0.5, p.t, p.r());
  if (p.D != D) throw std::invalid_argument("afe_sum: gamma parameters belong to another discriminant");
  const AFEPlan plan = afe_plan(p, cfg);
  const i64 M = plan.M;
  res.M = M;
  const i64 avail = static_cast<i64>(std::min(lambda_f.size(), lambda_theta.size()));
  if (avail < M) throw CoefficientShortfall(M, avail);

  const double y_zero = plan.y_zero;
  const double Dd = static_cast<double>(D);
  VInterpolant V(p, plan.y_lo, plan.y_hi, cfg.v);

  long double re = 0, im = 0, abs_sum = 0;
  for (i64 m = 1; m <= M; ++m) {
    const int chi = arith::kronecker(D, m);
    if (chi == 0) continue;
    const double m2 = static_cast<double>(m) * static_cast<double>(m);
    if (m2 / Dd > y_zero) break;
    long double inner_re = 0, inner_im = 0, inner_abs = 0;
    for (i64 n = 1; n <= M; ++n) {
      const double y = m2 * static_cast<double>(n) / Dd;
      if (y > y_zero) break;
      const hecke::cplx c = lambda_f[static_cast<std::size_t>(n - 1)] * lambda_theta[static_cast<std::size_t>(n - 1)];
      if (c == hecke::cplx(0.0)) continue;
      const double w = V(y) / std::sqrt(static_cast<double>(n));
      inner_re += c.real() * w;
      inner_im += c.imag() * w;
      inner_abs += std::abs(c) / std::sqrt(static_cast<double>(n));
    }
    re += chi * inner_re / static_cast<long double>(m);
    im += chi * inner_im / static_cast<long double>(m);
    abs_sum += inner_abs / static_cast<long double>(m);
  }
  res.value = static_cast<double>(2 * re);
  res.imag = static_cast<double>(2 * im);

  // crude tail bound for n > M: V(M/D) sqrt(M) log M, plus quadrature and rounding
  const double Md = static_cast<double>(M);
  const double v_edge = Md / Dd <= y_zero ? std::abs(special::V(Md / Dd, p, cfg.v).value) : 0.0;
  const double tail = 2 * v_edge * std::sqrt(Md) * (1 + std::log(Md));
  const double quad = 2 * static_cast<double>(abs_sum) * std::max(V.max_quad_error(), cfg.v_tol * 1e-8);
  res.error = tail + quad + 1e-14 * static_cast<double>(abs_sum);
  return res;
}

LValueResult rankin_selberg_central(const MaassForm& f, const hecke::HeckeField& F, const hecke::HeckeCharacter& chi,
                                    hecke::ThetaVariant variant, const AFEConfig& cfg, hecke::ThetaCache* cache) {
  if (cfg.enforce_parity) {
    if (parity_of(chi) != f.parity)
      throw std::invalid_argument("rankin_selberg_central: parity of n does not match the form");
    const auto expected = f.parity == Parity::even ? hecke::ThetaVariant::plain : hecke::ThetaVariant::sign_weighted;
    if (variant != expected) throw std::invalid_argument("rankin_selberg_central: theta variant does not match the form parity");
  }
  const auto p = special::GammaFactorParams::make(f.t, F.field(), static_cast<double>(chi.n));
  const i64 M = afe_plan(p, cfg).M;
  if (f.N() < M) throw CoefficientShortfall(M, f.N());
  std::shared_ptr<const hecke::ThetaCoefficients> th;
  if (cache) {
    th = cache->get(F, chi, variant, M);
  } else {
    hecke::IdealTable T(F, M);
    th = std::make_shared<const hecke::ThetaCoefficients>(hecke::theta_table(F, T, chi, variant));
  }
  AFEConfig fixed = cfg;
  fixed.M = M;
  return afe_sum(f.lambda, theta_dirichlet_coefficients(*th), F.D(), p, fixed);
}

// ------------------------------------------------------------ adjoint

std::vector<double> adjoint_coefficients(const MaassForm& f) {
  const i64 N = f.N();
  // b(n) = lambda(n^2), multiplicative, from the prime values
  std::vector<double> b(static_cast<std::size_t>(N + 1), 0.0);
  std::vector<int> spf(static_cast<std::size_t>(N + 1), 0);
  for (i64 i = 2; i <= N; ++i)
    if (spf[i] == 0)
      for (i64 j = i; j <= N; j += i)
        if (spf[j] == 0) spf[j] = static_cast<int>(i);
  if (N >= 1) b[1] = 1.0;
  for (i64 n = 2; n <= N; ++n) {
    const i64 p = spf[n];
    i64 rest = n;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    // lambda(p^{2e}) from lambda(p^{k+1}) = lambda(p) lambda(p^k) - lambda(p^{k-1})
    const double lp = f(p);
    double prev = 1.0, cur = lp;
    for (int k = 1; k < 2 * e; ++k) {
      const double next = lp * cur - prev;
      prev = cur;
      cur = next;
    }
    b[n] = cur * b[rest];
  }
  std::vector<double> a(static_cast<std::size_t>(N + 1), 0.0);
  for (i64 d = 1; d * d <= N; ++d)
    for (i64 k = 1; k * d * d <= N; ++k) a[k * d * d] += b[k];
  return a;
}

double smoothed_sum(const std::vector<double>& a, double X) {
  long double s = 0;
  const i64 N = static_cast<i64>(a.size()) - 1;
  for (i64 n = 1; n <= N; ++n) s += a[n] / static_cast<long double>(n) * std::exp(-static_cast<long double>(n) / X);
  return static_cast<double>(s);
}

namespace {

// S(X) = L + c2/X^2 + c4/X^4 at X, X/2, X/4; the 1/X and 1/X^3 terms
// vanish with L(0) and L(-2)
double richardson(const std::vector<double>& a, double X) {
  double xs[3] = {X, X / 2, X / 4};
  double A[3][4];
  for (int i = 0; i < 3; ++i) {
    A[i][0] = 1;
    A[i][1] = 1 / (xs[i] * xs[i]);
    A[i][2] = 1 / (xs[i] * xs[i] * xs[i] * xs[i]);
    A[i][3] = smoothed_sum(a, xs[i]);
  }
  for (int c = 0; c < 3; ++c)
    for (int r = c + 1; r < 3; ++r) {
      const double fct = A[r][c] / A[c][c];
      for (int k = c; k < 4; ++k) A[r][k] -= fct * A[c][k];
    }
  double sol[3];
  for (int r = 2; r >= 0; --r) {
    double s = A[r][3];
    for (int k = r + 1; k < 3; ++k) s -= A[r][k] * sol[k];
    sol[r] = s / A[r][r];
  }
  return sol[0];
}

}  // namespace

double adjoint_smoothed_sum(const MaassForm& f, double X) { return smoothed_sum(adjoint_coefficients(f), X); }

AdjointResult adjoint_L_1(const MaassForm& f) {
  const auto a = adjoint_coefficients(f);
  AdjointResult res;
  res.X = static_cast<double>(f.N()) / 45.0;
  if (res.X < 40) throw CoefficientShortfall(45 * 40, f.N());
  res.raw_X = smoothed_sum(a, res.X);
  res.raw_2X = smoothed_sum(a, res.X / 2);
  res.value = richardson(a, res.X);
  const double second = richardson(a, res.X / 2);
  res.spread = std::abs(res.value - second) / std::abs(res.value);
  if (!(res.value > 0)) throw std::runtime_error("adjoint_L_1: non-positive value " + std::to_string(res.value));
  return res;
}

CompletedRatio completed_ratio(const MaassForm& f, const hecke::HeckeField& F, const hecke::HeckeCharacter& chi,
                               const AFEConfig& cfg, hecke::ThetaCache* cache, double adjoint) {
  CompletedRatio out;
  const auto variant = f.parity == Parity::even ? hecke::ThetaVariant::plain : hecke::ThetaVariant::sign_weighted;
  out.L = rankin_selberg_central(f, F, chi, variant, cfg, cache);
  out.G = special::G_ratio(chi.n, f.t, F.field().unit().log_eps_d);
  out.adjoint = adjoint > 0 ? adjoint : adjoint_L_1(f).value;
  const double scale = std::sqrt(static_cast<double>(F.D())) * out.G / out.adjoint;
  out.value = scale * out.L.value;
  out.error = scale * out.L.error;
  return out;
}

std::string lvalues_csv(const std::vector<LValueRow>& rows) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "D,psi_index,n,value,error,q_infty\n";
  for (const auto& r : rows)
    os << r.D << ',' << r.psi_index << ',' << r.n << ',' << r.value << ',' << r.error << ',' << r.q_infty << '\n';
  return os.str();
}

}  // namespace geod::lfunc
