#include "geod/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <json.hpp>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "geod/analysis.hpp"
#include "geod/arith.hpp"
#include "geod/geodesics.hpp"
#include "geod/hecke.hpp"
#include "geod/lfunctions.hpp"
#include "geod/parallel.hpp"
#include "geod/restriction.hpp"
#include "geod/special_functions.hpp"

namespace geod::verify {

namespace {

constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::vector<i64> fundamental_discriminants(i64 dmax) {
  std::vector<i64> out;
  for (i64 D = 2; D <= dmax; ++D)
    if (arith::is_fundamental_discriminant(D)) out.push_back(D);
  return out;
}

// L(1, chi_D) = -D^{-1/2} sum_{a<D} chi_D(a) log sin(pi a / D) for D > 0
double L1_kronecker(i64 D) {
  long double s = 0;
  for (i64 a = 1; a < D; ++a) {
    const int c = arith::kronecker(D, a);
    if (c != 0) s += c * std::log(std::sin(static_cast<long double>(kPi) * a / D));
  }
  return static_cast<double>(-s / std::sqrt(static_cast<long double>(D)));
}

lfunc::MaassForm load_form(const Options& o, lfunc::Parity parity) {
  const std::string& path = parity == lfunc::Parity::even ? o.even_form : o.odd_form;
  return lfunc::load_maass_form(path.empty() ? lfunc::default_form_path(parity) : path);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// e^{pi t/2} int_0^inf e^{-x cosh u} cos(t u) du by the trapezoid rule at
// working precision; h = 0.05 leaves an error near exp(-(pi/2)(2 pi/h - t))
double K_imag_scaled_mp(double t, double x) {
  const Real h("0.05"), X(x), tt(t);
  Real s = exp(-X) / 2;
  for (int k = 1;; ++k) {
    const Real u = h * k;
    const Real e = X * cosh(u);
    if (e > 300) break;
    s += exp(-e) * cos(tt * u);
  }
  return static_cast<double>(s * h * exp(real_pi() * tt / 2));
}

}  // namespace

bool SuiteReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void SuiteReport::add(std::string n, bool p, double v, double thr, std::string d) {
  checks.push_back(Check{std::move(n), p, v, thr, std::move(d)});
}

// ------------------------------------------------------------------ 1

SuiteReport criterion_quadfield(const Options& o) {
  Timer timer;
  SuiteReport r;
  r.name = "quadfield exhaustive";
  int pell_bad = 0, certified = 0, brute = 0;
  double worst_cnf = 0;
  std::string pell_detail;
  for (i64 D : fundamental_discriminants(o.pell_dmax)) {
    const auto cf = quadfield::pell_continued_fraction(D);
    const auto bf = quadfield::pell_bruteforce(D, o.pell_budget);
    bool ok = cf.x * cf.x - D * cf.y * cf.y == 4;
    if (bf) {
      ++brute;
      ok = ok && bf->x == cf.x && bf->y == cf.y;
    } else {
      // minimality beyond the budget: h+ log eps = sqrt(D) L(1, chi_D)
      ++certified;
      const auto forms = quadfield::reduced_forms(D);
      std::set<quadfield::QuadraticForm> seen;
      int cycles = 0;
      for (const auto& q : forms) {
        if (seen.count(q)) continue;
        ++cycles;
        for (const auto& c : quadfield::cycle_of(q)) seen.insert(c);
      }
      ok = ok && cf.y > o.pell_budget;
      const quadfield::QuadField K(D);
      const double lhs = cycles * K.unit().log_eps_d;
      const double rhs = std::sqrt(static_cast<double>(D)) * L1_kronecker(D);
      worst_cnf = std::max(worst_cnf, std::abs(lhs - rhs) / rhs);
      ok = ok && std::abs(lhs - rhs) <= 1e-9 * rhs;
    }
    if (!ok) {
      ++pell_bad;
      pell_detail += " D=" + std::to_string(D);
    }
  }
  r.add("Pell: continued fraction equals brute force (D <= " + std::to_string(o.pell_dmax) + ")", pell_bad == 0, pell_bad,
        0, std::to_string(brute) + " by brute force, " + std::to_string(certified) +
               " beyond the y budget certified by the class number formula (worst rel. " + fmt(worst_cnf) + ")" +
               pell_detail);

  // class groups against reduced-form cycles and ideal arithmetic
  int group_bad = 0;
  std::string group_detail;
  for (i64 D : fundamental_discriminants(o.class_dmax)) {
    const auto G = quadfield::narrow_class_group(D);
    const auto forms = quadfield::reduced_forms(D);
    std::set<quadfield::QuadraticForm> seen;
    int cycles = 0;
    for (const auto& q : forms) {
      if (seen.count(q)) continue;
      ++cycles;
      for (const auto& c : quadfield::cycle_of(q)) seen.insert(c);
    }
    // element orders by repeated ideal multiplication
    std::map<int, int> hist_ideal, hist_structure;
    for (int cls = 0; cls < G.h(); ++cls) {
      const auto I = quadfield::ideal_of_form(D, G.representatives[static_cast<std::size_t>(cls)]);
      auto P = I;
      int ord = 1;
      while (G.class_of_ideal(P) != 0) {
        P = quadfield::multiply(D, P, I);
        if (++ord > G.h()) break;
      }
      ++hist_ideal[ord];
    }
    // orders implied by the invariant factors
    std::vector<int> t(G.orders.size(), 0);
    for (int idx = 0; idx < G.h(); ++idx) {
      int rest = idx, ord = 1;
      for (std::size_t i = 0; i < G.orders.size(); ++i) {
        t[i] = rest % G.orders[i];
        rest /= G.orders[i];
        ord = std::lcm(ord, G.orders[i] / std::gcd(t[i], G.orders[i]));
      }
      ++hist_structure[ord];
    }
    const int prod = std::accumulate(G.orders.begin(), G.orders.end(), 1, std::multiplies<>());
    if (G.h() != cycles || prod != G.h() || hist_ideal != hist_structure) {
      ++group_bad;
      group_detail += " D=" + std::to_string(D);
    }
  }
  r.add("narrow class group order and structure (D <= " + std::to_string(o.class_dmax) + ")", group_bad == 0, group_bad,
        0, "order vs cycle count, element orders vs ideal multiplication" + group_detail);

  const int h5 = quadfield::narrow_class_group(5).h();
  const int h12 = quadfield::narrow_class_group(12).h();
  const int h40 = quadfield::narrow_class_group(40).h();
  r.add("h+(5)=1, h+(12)=2, h+(40)=2", h5 == 1 && h12 == 2 && h40 == 2, h5 * 100 + h12 * 10 + h40, 122);
  r.seconds = timer.seconds();
  r.add("runtime < 120 s", r.seconds < 120, r.seconds, 120);
  return r;
}

// ------------------------------------------------------------------ 2

SuiteReport criterion_dictionary(const Options& o) {
  Timer timer;
  SuiteReport r;
  r.name = "geodesic dictionary";
  int bad_det = 0, bad_trace = 0, bad_count = 0;
  double worst_fix = 0, worst_len = 0;
  for (i64 D : fundamental_discriminants(o.geodesic_dmax)) {
    const quadfield::QuadField K(D);
    const auto G = quadfield::narrow_class_group(D);
    for (const auto& q : quadfield::reduced_forms(D)) {
      const auto M = geodesics::matrix_of_form(q, K.unit());
      if (M.det() != 1) ++bad_det;
      if (M.trace() != K.unit().x_D) ++bad_trace;
      const auto g = geodesics::make_geodesic(q, K.unit());
      for (const Real& w : {g.omega, g.omega_star}) {
        const Real img = (Real(M.m[0].get_str()) * w + Real(M.m[1].get_str())) /
                         (Real(M.m[2].get_str()) * w + Real(M.m[3].get_str()));
        worst_fix = std::max(worst_fix, static_cast<double>(abs(img - w) / (1 + abs(w))));
      }
    }
    const auto geos = geodesics::geodesics_for_discriminant(K, G);
    if (static_cast<int>(geos.size()) != G.h()) ++bad_count;
    const Real expected = 2 * K.unit().log_eps;
    for (const auto& g : geos) worst_len = std::max(worst_len, static_cast<double>(abs(g.length - expected) / expected));
  }
  r.add("matrix_of_form has determinant 1", bad_det == 0, bad_det, 0);
  r.add("trace equals x_D", bad_trace == 0, bad_trace, 0);
  r.add("fixes both roots of the form", worst_fix < 1e-15, worst_fix, 1e-15);
  r.add("h+ geodesics per discriminant", bad_count == 0, bad_count, 0);
  r.add("length log eps^2 (relative)", worst_len < 1e-12, worst_len, 1e-12);
  r.seconds = timer.seconds();
  r.add("runtime < 60 s", r.seconds < 60, r.seconds, 60);
  return r;
}

// ------------------------------------------------------------------ 3

SuiteReport criterion_theta(const Options& o) {
  Timer timer;
  SuiteReport r;
  r.name = "theta coefficients";
  double worst_mult = 0, worst_excess = -1;
  for (i64 D : {5, 8, 12, 40}) {
    const hecke::HeckeField F(D);
    const hecke::IdealTable T(F, 200);
    const auto psis = hecke::all_class_characters(F.group());
    std::vector<std::pair<std::size_t, i64>> work;
    for (std::size_t p = 0; p < psis.size(); ++p)
      for (i64 n = -6; n <= 6; ++n) work.emplace_back(p, n);
    std::vector<double> mult(work.size()), excess(work.size());
    parallel_for(work.size(), o.jobs, [&](std::size_t i) {
      const auto th = hecke::theta_table(F, T, {psis[work[i].first], work[i].second}, hecke::ThetaVariant::plain);
      const auto lam = lfunc::theta_dirichlet_coefficients(th);
      double wm = 0, we = -1;
      // 2 lambda is multiplicative with the 1/2 normalisation
      for (i64 a = 2; a <= 200; ++a)
        for (i64 b = a + 1; a * b <= 200; ++b) {
          if (arith::gcd(a, b) != 1) continue;
          const cplx lhs = 2.0 * lam[static_cast<std::size_t>(a * b - 1)];
          const cplx rhs = 2.0 * lam[static_cast<std::size_t>(a - 1)] * 2.0 * lam[static_cast<std::size_t>(b - 1)];
          wm = std::max(wm, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
        }
      for (i64 m = 1; m <= 200; ++m) {
        const double bound = 0.5 * static_cast<double>(T.of_norm(m).size());
        we = std::max(we, std::abs(lam[static_cast<std::size_t>(m - 1)]) - bound);
      }
      mult[i] = wm;
      excess[i] = we;
    });
    worst_mult = std::max(worst_mult, *std::max_element(mult.begin(), mult.end()));
    worst_excess = std::max(worst_excess, *std::max_element(excess.begin(), excess.end()));
  }
  r.add("Hecke multiplicativity for coprime m1 m2 <= 200 (D in {5,8,12,40}, |n| <= 6, all psi)", worst_mult <= 1e-15,
        worst_mult, 1e-15, "relative to max(1, |lambda(m1 m2)|); checked on 2 lambda");
  r.add("|lambda(m)| <= (ideal count)/2", worst_excess <= 0.0, worst_excess, 0.0, "largest |lambda| - count/2");
  r.seconds = timer.seconds();
  r.add("runtime < 120 s", r.seconds < 120, r.seconds, 120);
  return r;
}

// ------------------------------------------------------------------ 4

SuiteReport criterion_V(const Options& o) {
  Timer timer;
  SuiteReport r;
  r.name = "V function";
  const quadfield::QuadField K(o.D);

  double worst_small = 0;
  for (double t : {10.0, 20.0, 40.0})
    for (double x : {0.0, 3.0, -7.0}) {
      const auto p = special::GammaFactorParams::make(t, K, x);
      worst_small = std::max(worst_small, std::abs(special::V(1e-6, p).value - 1.0));
    }
  r.add("|V(1e-6) - 1|", worst_small < 1e-3, worst_small, 1e-3);

  double worst_rules = 0;
  for (double t : {10.0, 40.0})
    for (double x : {0.0, 3.0})
      for (double y : {1e-3, 0.1, 1.0, 10.0, 100.0, 1e3}) {
        const auto p = special::GammaFactorParams::make(t, K, x);
        const double a = special::V(y, p, {}, special::VRule::trapezoid).value;
        const double b = special::V(y, p, {}, special::VRule::gauss_kronrod).value;
        worst_rules = std::max(worst_rules, std::abs(a - b));
      }
  r.add("trapezoid and Gauss-Kronrod agree", worst_rules < 1e-9, worst_rules, 1e-9);

  // |V| <= C (1 + y / sqrt q)^{-10}: fit C at one parameter set, assert at the others
  const int A = 10;
  auto sup_ratio = [&](double t, double x) {
    const auto p = special::GammaFactorParams::make(t, K, x);
    const double sq = std::sqrt(special::analytic_conductor(0.5, t, p.r()));
    double sup = 0;
    for (double y = 1; y <= 1e4 * 1.0001; y *= std::pow(10.0, 0.125))
      sup = std::max(sup, std::abs(special::V(y, p).value) * std::pow(1 + y / sq, A));
    return sup;
  };
  const double C = sup_ratio(10.0, 3.0);
  r.fitted.push_back({"V bound constant (A=10)", C, "D=" + std::to_string(o.D) + ", t=10, x=3, y in [1,1e4]"});
  double worst_bound = 0;
  for (double t : {20.0, 40.0})
    for (double x : {0.0, 3.0}) worst_bound = std::max(worst_bound, sup_ratio(t, x) / C);
  r.add("V bound with the fitted constant at t in {20,40}", worst_bound <= 1.0, worst_bound, 1.0,
        "largest |V| (1+y/sqrt q)^10 / C");

  // derivative in x: log-log slope in T at the balance point, T << c_D t
  for (int j = 1; j <= 2; ++j) {
    std::vector<double> lx, ly;
    const double t = 40.0;
    for (double T : {1.0, 2.0, 4.0}) {
      auto p = special::GammaFactorParams::make(t, K, 0.0);
      p.x = K.unit().c_d * t - T;
      const double y = special::V_balance_point(p);
      const auto d = special::V_derivative_check(y, p, j, T, 1.0, o.eps);
      lx.push_back(std::log(T));
      ly.push_back(std::log(std::abs(d.derivative)));
    }
    const double s = slope(lx, ly);
    r.add("d^" + std::to_string(j) + "V/dx^" + std::to_string(j) + " slope in T vs -" + std::to_string(j),
          std::abs(s + j) <= 0.3, s, -j, "t=40, T in {1,2,4}, y at the balance point; tolerance 0.3");
  }
  r.seconds = timer.seconds();
  r.add("runtime < 300 s", r.seconds < 300, r.seconds, 300);
  return r;
}

// ------------------------------------------------------------------ 5

SuiteReport criterion_plancherel(const Options& o) {
  Timer timer;
  SuiteReport r;
  r.name = "Plancherel identity";
  restriction::QuadratureConfig qc;
  qc.jobs = o.jobs;
  for (i64 D : {5, 12}) {
    const hecke::HeckeField F(D);
    std::mt19937_64 rng(1000 + static_cast<std::uint64_t>(D));
    std::normal_distribution<double> nd;
    const int h = F.h();
    std::vector<std::vector<cplx>> c(static_cast<std::size_t>(h), std::vector<cplx>(11));
    for (auto& row : c)
      for (auto& v : row) v = cplx(nd(rng), nd(rng));
    restriction::GeodesicFunction g{[c](int cls, double x) {
      cplx s = 0;
      for (int n = -5; n <= 5; ++n) s += c[static_cast<std::size_t>(cls)][static_cast<std::size_t>(n + 5)] * std::polar(1.0, 2 * kPi * n * x);
      return s;
    }, "trigonometric polynomial"};
    const auto spec = restriction::restriction_norm(g, F, 5, qc);
    const double direct = restriction::direct_norm(g, F, qc);
    r.add("D=" + std::to_string(D) + ": spectral sum equals direct quadrature", std::abs(spec.normalized - direct) <= 1e-8 * std::abs(direct),
          std::abs(spec.normalized - direct) / std::abs(direct), 1e-8, "relative");
    restriction::GeodesicFunction one{[](int, double) { return cplx(1.0, 0.0); }, "constant"};
    const auto n1 = restriction::restriction_norm(one, F, 3, qc);
    r.add("D=" + std::to_string(D) + ": g = 1 gives 1", std::abs(n1.normalized - 1) < 1e-14, std::abs(n1.normalized - 1), 1e-14);
  }
  r.seconds = timer.seconds();
  r.add("runtime < 60 s", r.seconds < 60, r.seconds, 60);
  return r;
}

// ------------------------------------------------------------------ 6

SuiteReport criterion_poisson(const Options& o) {
  Timer timer;
  SuiteReport r;
  r.name = "Poisson summation";
  const quadfield::QuadField K(5);
  const double t = o.t;
  struct Case {
    int k, a;
    quadfield::FieldElement alpha;
    i64 m;
  };
  std::vector<Case> cases;
  for (int k = 1; k <= 2; ++k)
    for (int a = 2; a <= 3; ++a) {
      const double A = std::ldexp(1.0, a);
      for (const auto& e : quadfield::elements_in_region(K, {static_cast<i64>(std::ceil(A / 2)), static_cast<i64>(std::floor(2 * A))},
                                                         quadfield::ConeBounds::fundamental_domain()))
        for (i64 m : {1, 2}) cases.push_back({k, a, e, m});
    }
  std::vector<double> residual(cases.size(), 0.0), decay(cases.size(), 0.0);
  std::vector<int> active(cases.size(), 0), trunc_ok(cases.size(), 0);
  parallel_for(cases.size(), o.jobs, [&](std::size_t i) {
    const auto& cs = cases[i];
    const auto w = analysis::Windows::make(K, t, cs.k, o.delta);
    const analysis::HFunction H(K, w, cs.a, cs.alpha, cs.m);
    if (!H.active()) return;
    active[i] = 1;
    const auto rep = analysis::poisson_identity_residual(H);
    residual[i] = rep.residual;
    trunc_ok[i] = rep.truncation_ok;
    const double T = w.T(), A = std::ldexp(1.0, cs.a);
    const analysis::FourierTransform ft([&H](double x) { return H(x); }, H.support_lo(), H.support_hi(), 1e-14, 64);
    double worst = 0;
    for (double xi = 1.0; xi <= 10.0; xi += 0.25) {
      const double shape = T * std::pow(t, o.eps) / std::pow(T * xi, 2) / std::sqrt(t * T * A);
      worst = std::max(worst, std::abs(ft(xi)) / shape);
    }
    decay[i] = worst;
  });
  double worst_res = 0;
  int n_active = 0, n_trunc = 0;
  for (std::size_t i = 0; i < cases.size(); ++i)
    if (active[i]) {
      ++n_active;
      n_trunc += trunc_ok[i];
      worst_res = std::max(worst_res, residual[i]);
    }
  r.add("Poisson residual (D=5, t=" + fmt(t) + ", k in {1,2}, a in {2,3}, m in {1,2})", n_active > 0 && worst_res < 1e-8, worst_res,
        1e-8, std::to_string(n_active) + " weights, " + std::to_string(n_trunc) + " with the xi-sum tail below 1e-13");
  r.add("xi-sum truncation reached its tail tolerance", n_trunc == n_active, n_trunc, n_active);
  // fitted on the first case, asserted on all
  std::size_t first = 0;
  while (first < cases.size() && !active[first]) ++first;
  if (first < cases.size()) {
    const double C = decay[first];
    r.fitted.push_back({"Fourier decay constant (j=2)", C, "k=1, a=2, first alpha in F_D, m=1, |xi| in [1,10]"});
    double worst = 0;
    for (std::size_t i = 0; i < cases.size(); ++i)
      if (active[i]) worst = std::max(worst, decay[i] / C);
    r.add("|H^(xi)| <= C T t^eps |T xi|^-2 (tTA)^-1/2 with one constant", worst <= 1.0, worst, 1.0);
  }
  r.seconds = timer.seconds();
  r.add("runtime < 300 s", r.seconds < 300, r.seconds, 300);
  return r;
}

// ------------------------------------------------------------------ 7

SuiteReport criterion_lattice(const Options&) {
  Timer timer;
  SuiteReport r;
  r.name = "lattice regions";
  const quadfield::QuadField K(5);
  int mismatches = 0, regions = 0;
  std::string detail;
  for (double A : {16.0, 50.0, 256.0, 1024.0, 4096.0, 10000.0})
    for (i64 xi : {-1, 0, 1, 2})
      for (double R : {0.25, 0.5, 2.0}) {
        const analysis::LatticeRegion reg{xi, R, A};
        const auto a = analysis::S_region_enumerate(K, reg);
        const auto b = analysis::S_region_bruteforce(K, reg);
        ++regions;
        if (a != b) {
          ++mismatches;
          detail += " (xi=" + std::to_string(xi) + ",R=" + fmt(R) + ",A=" + fmt(A) + ")";
        }
      }
  r.add("enumeration equals brute force (D=5, A <= 1e4)", mismatches == 0, mismatches, 0,
        std::to_string(regions) + " regions" + detail);

  int violations = 0;
  for (double A : {16.0, 64.0, 256.0, 1024.0})
    for (i64 xi : {-1, 0, 1, 2})
      for (double R : {0.5, 1.0, 2.0}) {
        const analysis::LatticeRegion reg{xi, R, A};
        try {
          analysis::parallelogram_check(K, reg, analysis::S_region_enumerate(K, reg));
        } catch (const std::logic_error&) {
          ++violations;
        }
      }
  r.add("parallelogram containment", violations == 0, violations, 0);

  double C = 0;
  for (i64 xi : {-1, 0, 1, 2})
    for (double R : {0.5, 1.0, 2.0}) {
      const auto cb = analysis::lipschitz_count_bound(K, {xi, R, 16.0}, 1.0);
      C = std::max(C, static_cast<double>(cb.count) / cb.shape);
    }
  r.fitted.push_back({"C_D in |S| <= C_D (RA + sqrt A)", C, "D=5, A=16, xi in {-1,0,1,2}, R in {0.5,1,2}"});
  double worst = 0;
  for (double A : {64.0, 256.0, 1024.0})
    for (i64 xi : {-1, 0, 1, 2})
      for (double R : {0.5, 1.0, 2.0}) {
        const auto cb = analysis::lipschitz_count_bound(K, {xi, R, A}, C);
        worst = std::max(worst, static_cast<double>(cb.count) / cb.bound);
      }
  r.add("counts <= C_D (RA + sqrt A) at A in {64, 256, 1024}", worst <= 1.0, worst, 1.0, "largest count / bound");
  r.seconds = timer.seconds();
  r.add("runtime < 120 s", r.seconds < 120, r.seconds, 120);
  return r;
}

// ------------------------------------------------------------------ 8

SuiteReport criterion_orthogonality(const Options& o) {
  Timer timer;
  SuiteReport r;
  r.name = "character orthogonality";
  const auto f = load_form(o, lfunc::Parity::even);
  const hecke::HeckeField F(5);
  hecke::ThetaCache cache;
  lfunc::AFEConfig cfg;
  cfg.delta = o.delta;
  for (int k = 0; k <= 2; ++k) {
    const auto rep = analysis::character_orthogonality_check(f, F, k, cfg, &cache, o.jobs);
    r.add("k=" + std::to_string(k) + ": |LHS - RHS| within the error budget", !rep.ns.empty() && rep.ok(), rep.difference,
          rep.budget(),
          "t=" + fmt(f.t) + ", " + std::to_string(rep.ns.size()) + " n in the window, M=" + std::to_string(rep.M) +
              ", " + std::to_string(rep.elements) + " generators, LHS=" + fmt(rep.lhs.real()));
  }
  r.seconds = timer.seconds();
  r.add("runtime < 1800 s", r.seconds < 1800, r.seconds, 1800);
  return r;
}

// ------------------------------------------------------------------ 9

SuiteReport criterion_waldspurger(const Options& o) {
  Timer timer;
  SuiteReport r;
  r.name = "Waldspurger constancy";
  const auto f = load_form(o, lfunc::Parity::even);
  const hecke::HeckeField F(5);
  restriction::WaldspurgerConfig cfg;
  cfg.quad.jobs = o.jobs;
  cfg.afe.delta = o.delta;
  std::vector<i64> ns;
  for (i64 n = -6; n <= 6; n += 2) ns.push_back(n);
  const auto rows = restriction::waldspurger_ratio(f, F, ns, cfg);
  int used = 0;
  bool positive = true;
  for (const auto& e : rows)
    if (!e.skipped) {
      ++used;
      positive = positive && e.ratio > 0;
    }
  const double spread = restriction::relative_spread(rows);
  r.add("ratios positive", used > 0 && positive, used, static_cast<double>(ns.size()),
        std::to_string(used) + " of " + std::to_string(ns.size()) + " n used");
  r.add("relative spread < 15%", used >= 2 && spread < 0.15, spread, 0.15, "(max - min) / mean, t=" + fmt(f.t));
  r.seconds = timer.seconds();
  r.add("runtime < 1800 s", r.seconds < 1800, r.seconds, 1800);
  return r;
}

// ------------------------------------------------------------------ 10

namespace {

double tail_sum(const quadfield::QuadField& K, double t, double eps) {
  const double cD = K.unit().c_d;
  long double S = 0;
  for (i64 n = static_cast<i64>(std::floor(cD * t)) + 1;; ++n) {
    const double r = kPi * static_cast<double>(n) / K.unit().log_eps_d;
    const double term = special::G_ratio(n, t, K.unit().log_eps_d) *
                        std::pow(special::analytic_conductor(0.5, t, r), 0.25 + eps);
    S += 2 * term;  // n and -n
    if (n > 3 * cD * t + 10 && term < 1e-30 * static_cast<double>(S)) break;
  }
  return static_cast<double>(S);
}

}  // namespace

SuiteReport criterion_tail(const Options&) {
  Timer timer;
  SuiteReport r;
  r.name = "tail of the n-sum";
  const quadfield::QuadField K(5);
  const double eps = 0.01;
  const double period = 1.0 / K.unit().c_d;  // S(t) depends on frac(c_D t)
  auto period_sup = [&](double t0) {
    double s = 0;
    for (int i = 0; i <= 400; ++i) {
      const double t = t0 + period * i / 400.0;
      s = std::max(s, tail_sum(K, t, eps) / std::pow(t, eps));
    }
    return s;
  };
  const double C = period_sup(10.0);
  r.fitted.push_back({"tail constant", C, "sup of S(t) t^-0.01 over t in [10, 10 + 1/c_D], D=5"});
  for (double t0 : {10.0, 20.0, 40.0}) {
    const double point = tail_sum(K, t0, eps);
    const double sup = period_sup(t0);
    r.add("t=" + fmt(t0) + ": sup over one period of S(t) t^-eps <= 2 C", sup <= 2 * C, sup / C, 2.0,
          "S(" + fmt(t0) + ")=" + fmt(point) + ", ratio to S(10)=" + fmt(point / tail_sum(K, 10.0, eps)));
  }
  r.seconds = timer.seconds();
  r.add("runtime < 300 s", r.seconds < 300, r.seconds, 300);
  return r;
}

// ------------------------------------------------------------------ registry

const std::vector<Criterion>& acceptance_criteria() {
  static const std::vector<Criterion> list = {
      {1, "quadfield exhaustive suite", criterion_quadfield},
      {2, "geodesic dictionary suite", criterion_dictionary},
      {3, "theta suite", criterion_theta},
      {4, "V-function suite", criterion_V},
      {5, "Plancherel identity", criterion_plancherel},
      {6, "Poisson suite", criterion_poisson},
      {7, "lattice suite", criterion_lattice},
      {8, "character-orthogonality identity", criterion_orthogonality},
      {9, "Waldspurger constancy", criterion_waldspurger},
      {10, "tail behaviour", criterion_tail},
  };
  return list;
}

// ------------------------------------------------------------------ module invariants

namespace {

SuiteReport extra_hecke(const Options&) {
  Timer timer;
  SuiteReport r;
  r.name = "hecke invariants";
  double worst_conj = 0, worst_orth = 0, worst_turns = 0;
  for (i64 D : {5, 12, 40}) {
    const hecke::HeckeField F(D);
    const hecke::IdealTable T(F, 300);
    const auto psis = hecke::all_class_characters(F.group());
    for (const auto& psi : psis)
      for (i64 n = 0; n <= 4; ++n) {
        // conj chi_{psi,n} = chi_{psi^-1,-n}
        const auto a = hecke::theta_table(F, T, {psi, n}, hecke::ThetaVariant::plain);
        const auto b = hecke::theta_table(F, T, {hecke::inverse(psi, F.group()), -n}, hecke::ThetaVariant::plain);
        for (i64 m = 1; m <= 300; ++m) worst_conj = std::max(worst_conj, std::abs(std::conj(a(m)) - b(m)));
        for (i64 m = 1; m <= 300; ++m)
          for (const auto& row : T.of_norm(m)) {
            const Real turns = F.phase_turns({psi, n}, row);
            if (turns < 0 || turns >= 1) worst_turns = std::max(worst_turns, std::abs(static_cast<double>(turns)) + 1);
          }
      }
    // sum over psi of psi([I]) is h+ on the principal class and 0 elsewhere
    for (i64 m = 1; m <= 300; ++m)
      for (const auto& row : T.of_norm(m)) {
        const double s = hecke::character_orthogonality_sum(F, row.ideal);
        const double expected = F.group().class_of_ideal(row.ideal) == 0 ? F.h() : 0.0;
        worst_orth = std::max(worst_orth, std::abs(s - expected));
      }
  }
  r.add("conjugation: conj theta(psi, n) = theta(psi^-1, -n)", worst_conj < 1e-12, worst_conj, 1e-12,
        "D in {5,12,40}, m <= 300");
  r.add("character phases lie in [0, 1)", worst_turns == 0, worst_turns, 0);
  r.add("orthogonality over class characters", worst_orth < 1e-12, worst_orth, 1e-12);
  r.seconds = timer.seconds();
  return r;
}

SuiteReport extra_gamma(const Options& o) {
  Timer timer;
  SuiteReport r;
  r.name = "gamma factor invariants";
  const quadfield::QuadField K(o.D);
  const double le = K.unit().log_eps_d;

  double worst_conj = 0;
  for (double t : {2.0, 13.78})
    for (double x : {0.0, 3.0})
      for (cplx s : {cplx(0.5, 0.3), cplx(1.7, -2.0), cplx(0.25, 5.0)}) {
        const auto p = special::GammaFactorParams::make(t, K, x);
        const cplx a = special::gamma_s_f_x(std::conj(s), p), b = std::conj(special::gamma_s_f_x(s, p));
        worst_conj = std::max(worst_conj, std::abs(a - b) / std::abs(b));
      }
  r.add("gamma(conj s) = conj gamma(s)", worst_conj < 1e-13, worst_conj, 1e-13, "relative");

  int nonfinite = 0;
  for (double t : {0.5, 10.0, 100.0, 1000.0})
    for (i64 n : {0L, 1L, 17L, 1000L, 99999L, 1000000L, -1000000L})
      if (!std::isfinite(special::log_G_ratio(n, t, le)) || !std::isfinite(special::G_ratio(n, t, le))) ++nonfinite;
  r.add("G_ratio finite for |n| <= 1e6, t <= 1e3", nonfinite == 0, nonfinite, 0);

  double worst_sym = 0, most_negative = 0;
  for (i64 n = 0; n <= 60; ++n) {
    const double a = special::G_ratio(n, 10.0, le), b = special::G_ratio(-n, 10.0, le);
    worst_sym = std::max(worst_sym, std::abs(a - b) / std::max(a, 1e-300));
    most_negative = std::min(most_negative, a);
  }
  r.add("G(n) = G(-n)", worst_sym < 1e-14, worst_sym, 1e-14, "t=10, |n| <= 60, relative");
  r.add("G(n) >= 0", most_negative >= 0, most_negative, 0);

  // G(n+2)/G(n) <= e^{-pi/c_D} once n >= 4 c_D t + 10
  double worst_step = -1e300;
  const double t10 = 10.0, bound = -kPi / K.unit().c_d;
  for (i64 n = static_cast<i64>(std::ceil(4 * K.unit().c_d * t10 + 10)); n <= 400; ++n)
    worst_step = std::max(worst_step, special::log_G_ratio(n + 2, t10, le) - special::log_G_ratio(n, t10, le) - bound);
  r.add("log G(n+2) - log G(n) <= -pi/c_D for n >= 4 c_D t + 10", worst_step <= 0, worst_step, 0, "t=10, n <= 400");

  // gamma(1, Ad f) >= kappa e^{-pi t}, kappa fitted at t = 2; monotone decay
  const double kappa = special::gamma_adjoint_1(2.0) * std::exp(2 * kPi);
  r.fitted.push_back({"kappa in gamma(1,Ad f) >= kappa e^{-pi t}", kappa, "t=2"});
  double worst_kappa = 0;
  bool monotone = true;
  double prev = special::gamma_adjoint_1(2.0);
  for (double t = 2.0; t <= 50.0; t += 0.25) {
    const double g = special::gamma_adjoint_1(t);
    worst_kappa = std::max(worst_kappa, kappa / (g * std::exp(kPi * t)));
    if (t > 2.0 && !(g < prev)) monotone = false;
    prev = g;
  }
  r.add("gamma(1, Ad f) >= kappa e^{-pi t} on [2, 50]", worst_kappa <= 1.0, worst_kappa, 1.0, "largest kappa / (gamma e^{pi t})");
  r.add("gamma(1, Ad f) decreasing on [2, 50]", monotone, monotone, 1);

  // gamma(1/2,f,x) e^{pi max(|t|,|r|)} q^{1/4} bounded, constant fitted at t = 2
  auto shape = [&](double t) {
    double sup = 0;
    for (double r = -4 * t; r <= 4 * t; r += t / 50) {
      const special::GammaFactorParams p{t, o.D, r * le / kPi, le};
      const double v = static_cast<double>(special::log_gamma_s_f_x(special::lcplx(0.5L, 0.0L), p).real()) +
                       kPi * std::max(std::abs(t), std::abs(r)) + 0.25 * std::log(special::analytic_conductor(0.5, t, r));
      sup = std::max(sup, std::exp(v));
    }
    return sup;
  };
  const double C = shape(2.0);
  r.fitted.push_back({"gamma(1/2) e^{pi max} q^{1/4} bound", C, "t=2, |r| <= 4t"});
  double worst_shape = 0;
  for (double t : {5.0, 10.0, 20.0, 35.0, 50.0}) worst_shape = std::max(worst_shape, shape(t) / C);
  r.add("Rankin-Selberg gamma factor shape bounded for t in [2, 50]", worst_shape <= 1.0, worst_shape, 1.0);

  const double k0 = restriction::bessel_K_imag(0.0, 1.0).value;
  r.add("K_0(1) = 0.4210244382", std::abs(k0 - 0.4210244382407083) < 1e-10, std::abs(k0 - 0.4210244382407083), 1e-10);
  double worst_k = 0;
  for (double t : {5.0, 13.78, 30.0})
    for (double x : {0.5, 2.0, 8.0, 20.0})
      worst_k = std::max(worst_k, std::abs(restriction::bessel_K_imag_scaled(t, x) - K_imag_scaled_mp(t, x)));
  r.add("scaled K_it against a 50-digit quadrature", worst_k < 1e-10, worst_k, 1e-10, "t <= 30, x in [0.5, 20]");
  r.seconds = timer.seconds();
  return r;
}

SuiteReport extra_lfunctions(const Options& o) {
  Timer timer;
  SuiteReport r;
  r.name = "L-function invariants";
  const auto f = load_form(o, lfunc::Parity::even);
  const auto g = load_form(o, lfunc::Parity::odd);
  hecke::ThetaCache cache;
  lfunc::AFEConfig cfg;
  cfg.delta = o.delta;

  // delta streams against direct summation of 2 sum chi_D(m)/m V(m^2/D)
  {
    const quadfield::QuadField K(5);
    const auto p = special::GammaFactorParams::make(f.t, K, 2.0);
    const auto plan = lfunc::afe_plan(p, cfg);
    std::vector<double> lf(static_cast<std::size_t>(plan.M), 0.0);
    std::vector<cplx> lt(static_cast<std::size_t>(plan.M), 0.0);
    lf[0] = 1;
    lt[0] = 1;
    const auto got = lfunc::afe_sum(lf, lt, 5, p, cfg);
    long double direct = 0;
    for (i64 m = 1;; ++m) {
      const double v = special::V(static_cast<double>(m * m) / 5.0, p).value;
      direct += 2.0L * arith::kronecker(5, m) * v / m;
      if (std::abs(v) < 1e-20 && m > 10) break;
    }
    const double diff = std::abs(got.value - static_cast<double>(direct));
    r.add("delta coefficient streams match direct summation", diff < 1e-10, diff, 1e-10, "D=5, t=" + fmt(f.t) + ", x=2");
  }

  // central values over D in {5,12}, all psi, even n <= 2 c_D t
  struct Row {
    i64 D;
    int psi;
    i64 n;
    lfunc::LValueResult L;
  };
  std::vector<Row> rows;
  for (i64 D : {5, 12}) {
    const hecke::HeckeField F(D);
    const auto psis = hecke::all_class_characters(F.group());
    for (std::size_t pi = 0; pi < psis.size(); ++pi)
      for (i64 n = 0; n <= 2 * F.field().unit().c_d * f.t; n += 2) {
        auto c = cfg;
        const auto plan = lfunc::afe_plan(special::GammaFactorParams::make(f.t, F.field(), static_cast<double>(n)), c);
        if (plan.M > f.N()) c.M = f.N();  // the reported error covers the shorter sum
        rows.push_back({D, static_cast<int>(pi), n,
                        lfunc::rankin_selberg_central(f, F, {psis[pi], n}, hecke::ThetaVariant::plain, c, &cache)});
      }
  }
  double worst_neg = 0, worst_imag = 0;
  std::size_t smallest = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    worst_neg = std::max(worst_neg, -rows[i].L.value / rows[i].L.error);
    worst_imag = std::max(worst_imag, std::abs(rows[i].L.imag));
    if (rows[i].L.q_infty < rows[smallest].L.q_infty) smallest = i;
  }
  r.add("L(1/2) >= -10 x reported error", worst_neg <= 10, worst_neg, 10,
        std::to_string(rows.size()) + " values, D in {5,12}, even n <= 2 c_D t");
  r.add("L(1/2) real", worst_imag < 1e-10, worst_imag, 1e-10);
  const double Cconv = rows[smallest].L.value / std::pow(rows[smallest].L.q_infty, 0.3);
  r.fitted.push_back({"convexity constant, L <= C q^{0.3}", Cconv,
                      "smallest conductor: D=" + std::to_string(rows[smallest].D) + ", n=" + std::to_string(rows[smallest].n) +
                          ", psi=" + std::to_string(rows[smallest].psi)});
  double worst_conv = 0;
  for (const auto& row : rows) worst_conv = std::max(worst_conv, row.L.value / std::pow(row.L.q_infty, 0.3) / Cconv);
  r.add("convexity shape L(1/2) <= C q^{1/4+0.05}", worst_conv <= 1.0, worst_conv, 1.0);

  // doubling M
  const hecke::HeckeField F(5);
  const auto psi0 = hecke::all_class_characters(F.group()).front();
  {
    const auto p = special::GammaFactorParams::make(f.t, F.field(), 2.0);
    const auto plan = lfunc::afe_plan(p, cfg);
    auto c2 = cfg;
    c2.M = std::min<i64>(2 * plan.M, f.N());
    const auto L1 = lfunc::rankin_selberg_central(f, F, {psi0, 2}, hecke::ThetaVariant::plain, cfg, &cache);
    const auto L2 = lfunc::rankin_selberg_central(f, F, {psi0, 2}, hecke::ThetaVariant::plain, c2, &cache);
    const double q = special::analytic_conductor(0.5, f.t, p.r());
    const double d = std::abs(L1.value - L2.value);
    r.add("doubling M changes L(1/2) by less than 1/q and the attached error", d < 1 / q && d <= L1.error, d,
          std::min(1 / q, L1.error), "D=5, n=2, M=" + std::to_string(plan.M) + " -> " + std::to_string(c2.M));
  }

  const auto ad = lfunc::adjoint_L_1(f);
  const auto ad_odd = lfunc::adjoint_L_1(g);
  r.add("L(1, Ad f) positive, two cutoffs agree to 1e-3", ad.value > 0 && ad_odd.value > 0 && std::max(ad.spread, ad_odd.spread) < 1e-3,
        std::max(ad.spread, ad_odd.spread), 1e-3, "even " + fmt(ad.value) + ", odd " + fmt(ad_odd.value));
  {
    // a(n) = 1 on squares: sum m^-2 e^{-m^2/X} = pi^2/6 - sqrt(pi/X) + 1/(2X) up to exponentially small terms
    double worst = 0;
    for (double X : {100.0, 1000.0}) {
      std::vector<double> a(static_cast<std::size_t>(60 * X) + 1, 0.0);
      for (std::size_t m = 1; m * m < a.size(); ++m) a[m * m] = 1.0;
      const double model = kPi * kPi / 6 - std::sqrt(kPi / X) + 1 / (2 * X);
      worst = std::max(worst, std::abs(lfunc::smoothed_sum(a, X) - model));
    }
    r.add("smoothed sum reproduces the closed-form model series", worst < 1e-12, worst, 1e-12);
  }

  {
    const double adj = ad.value;
    const auto a = lfunc::completed_ratio(f, F, {psi0, 2}, cfg, &cache, adj);
    const auto b = lfunc::completed_ratio(f, F, {psi0, -2}, cfg, &cache, adj);
    const double d = std::abs(a.value - b.value) / std::abs(a.value);
    r.add("completed ratio invariant under n -> -n", d < 1e-12, d, 1e-12);
    const double recomposed = std::sqrt(5.0) * a.G * a.L.value / a.adjoint;
    r.add("completed ratio recomposes from its factors", a.value == recomposed, std::abs(a.value - recomposed), 0);
    double worst_tail = 0;
    for (i64 n = static_cast<i64>(std::floor(2 * F.field().unit().c_d * f.t)) + 1; n <= 20; ++n) {
      if (n % 2 != 0) continue;
      auto c = cfg;
      c.M = f.N();
      const auto cr = lfunc::completed_ratio(f, F, {psi0, n}, c, &cache, adj);
      worst_tail = std::max(worst_tail, std::abs(cr.value) + cr.error);
    }
    r.add("completed ratio below 1e-8 for |n| > 2 c_D t", worst_tail < 1e-8, worst_tail, 1e-8, "D=5, even n <= 20");
  }

  // the reduced sum vanishes for lambda_f = 0, and for h+ = 2 only principal ideals enter
  {
    lfunc::MaassForm zero = f;
    std::fill(zero.lambda.begin(), zero.lambda.end(), 0.0);
    const auto rep = analysis::character_orthogonality_check(zero, F, 0, cfg, nullptr, o.jobs);
    r.add("reduced sum vanishes for lambda_f = 0", std::abs(rep.rhs) == 0 && std::abs(rep.lhs) == 0, std::abs(rep.rhs), 0);
    const hecke::HeckeField F12(12);
    const auto rep12 = analysis::character_orthogonality_check(f, F12, 0, cfg, &cache, o.jobs);
    r.add("D=12 (h+=2): identity with principal generators only", rep12.ok(), rep12.difference, rep12.budget(),
          "k=0, " + std::to_string(rep12.elements) + " generators");
  }
  r.seconds = timer.seconds();
  return r;
}

SuiteReport extra_restriction(const Options& o) {
  Timer timer;
  SuiteReport r;
  r.name = "restriction invariants";
  const auto f = load_form(o, lfunc::Parity::even);
  const auto g = load_form(o, lfunc::Parity::odd);
  restriction::QuadratureConfig raw;
  raw.jobs = o.jobs;
  raw.reduce = false;
  const cplx z(0.3, 1.1);
  for (const auto* form : {&f, &g}) {
    const double a = restriction::maass_value(*form, z, raw).value;
    const double b = restriction::maass_value(*form, -1.0 / z, raw).value;
    r.add(std::string("f(z) = f(-1/z), ") + lfunc::to_string(form->parity) + " form", std::abs(a - b) < 1e-6, std::abs(a - b), 1e-6,
          "z = 0.3 + 1.1i without reduction, t=" + fmt(form->t));
    double decay = 0;
    for (double x : {0.0, 0.17, 0.5}) decay = std::max(decay, std::abs(restriction::maass_value(*form, cplx(x, form->t + 1), raw).value));
    r.add(std::string("decay above Im z = t, ") + lfunc::to_string(form->parity) + " form", decay < 1e-10, decay, 1e-10);
  }
  const double odd0 = restriction::maass_value(g, cplx(0.0, 1.3), raw).value;
  r.add("odd form vanishes on Re z = 0", std::abs(odd0) < 1e-14, std::abs(odd0), 1e-14);

  const hecke::HeckeField F(o.D);
  const auto geos = geodesics::geodesics_for_discriminant(F.field(), F.group());
  restriction::QuadratureConfig qc;
  qc.jobs = o.jobs;
  const auto gf = restriction::restrict_form(f, geos, qc);
  const auto psi0 = hecke::all_class_characters(F.group()).front();
  double worst_chart = 0, worst_parity = 0;
  for (i64 n : {0, 1, 2, 3}) {
    const auto x = restriction::geodesic_integral_I(gf, F, psi0, n, qc);
    const auto y = restriction::geodesic_integral_I_ychart(
        [&](cplx w) { return cplx(restriction::maass_value(f, w, qc).value, 0.0); }, geos, F, psi0, n, qc);
    worst_chart = std::max(worst_chart, std::abs(x.sum - y.sum) / std::max(1.0, std::abs(x.sum)));
    if (n % 2 != 0) worst_parity = std::max(worst_parity, x.I);
  }
  r.add("x-chart and y-chart periods agree", worst_chart < 1e-10, worst_chart, 1e-10, "D=" + std::to_string(o.D) + ", n <= 3");
  r.add("periods vanish when parities differ", worst_parity < 1e-8, worst_parity, 1e-8);

  // g pulled back from the character (psi0, n0): I = |C|^2 at (psi0, n0) only
  {
    const hecke::HeckeField F12(12);
    const auto psis = hecke::all_class_characters(F12.group());
    const auto& target = psis.back();
    const i64 n0 = 3;
    restriction::GeodesicFunction chi{[&](int cls, double x) {
      return hecke::eval_class_character(target, F12.group(), cls) * std::polar(1.0, 2 * kPi * static_cast<double>(n0) * x);
    }, "character"};
    const double C2 = std::pow(restriction::total_length(F12), 2);
    double worst = 0;
    for (const auto& psi : psis)
      for (i64 n = -4; n <= 4; ++n) {
        const double I = restriction::geodesic_integral_I(chi, F12, psi, n, qc).I;
        const double expect = (psi == target && n == n0) ? C2 : 0.0;
        worst = std::max(worst, std::abs(I - expect) / C2);
      }
    r.add("character on C_D: I = |C|^2 delta", worst < 1e-12, worst, 1e-12, "D=12, nontrivial psi, n0=3");
  }

  // Parseval: partial sums nondecreasing; <g1,g2> = |C| <Xi* g1, Xi* g2> on random pairs
  std::mt19937_64 rng(77);
  std::normal_distribution<double> nd;
  double worst_ip = 0, worst_mono = 0;
  for (i64 D : {5, 12}) {
    const hecke::HeckeField FD(D);
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<cplx> c1(24), c2(24);
      for (auto& v : c1) v = cplx(nd(rng), nd(rng));
      for (auto& v : c2) v = cplx(nd(rng), nd(rng));
      auto make = [](std::vector<cplx> c) {
        return restriction::GeodesicFunction{[c](int cls, double x) {
          cplx s = 0;
          for (int n = -2; n <= 3; ++n)
            s += c[static_cast<std::size_t>(6 * (cls % 4) + n + 2)] * std::polar(1.0, 2 * kPi * n * x) * std::exp(std::cos(2 * kPi * x));
          return s;
        }, "smooth"};
      };
      const auto a = make(c1), b = make(c2);
      const cplx u = restriction::inner_product(a, b, FD, qc);
      const cplx v = restriction::inner_product_pullback(a, b, FD, qc);
      worst_ip = std::max(worst_ip, std::abs(u - v) / std::abs(u));
      const auto nrm = restriction::restriction_norm(a, FD, 8, qc);
      for (std::size_t i = 1; i < nrm.partial.size(); ++i) worst_mono = std::max(worst_mono, nrm.partial[i - 1] - nrm.partial[i]);
    }
  }
  r.add("inner product equals |C| times the pulled-back inner product", worst_ip < 1e-12, worst_ip, 1e-12, "3 random pairs per D");
  r.add("Parseval partial sums nondecreasing", worst_mono <= 0, worst_mono, 0);
  r.seconds = timer.seconds();
  return r;
}

SuiteReport extra_analysis(const Options& o) {
  Timer timer;
  SuiteReport r;
  r.name = "window invariants";
  std::vector<double> grid;
  for (double x = 0.01; x < 5000; x *= 1.013) grid.push_back(x);
  const double part = analysis::partition_sum_check(grid);
  r.add("telescoped dyadic partition exact", part < 1e-14, part, 1e-14);
  double worst_one = 0, worst_w = 0;
  for (double x = 1.0; x < 4000; x *= 1.031) worst_one = std::max(worst_one, std::abs(analysis::partition_sum(x, 13) - 1));
  for (double x = 0.0; x < 3.0; x += 0.001)
    if (x < 0.5 || x > 2.0) worst_w = std::max(worst_w, std::abs(analysis::dyadic_W(x)));
  r.add("sum_k W(x/2^k) = 1 for x >= 1", worst_one < 1e-14, worst_one, 1e-14);
  r.add("W vanishes outside [1/2, 2]", worst_w == 0, worst_w, 0);

  const quadfield::QuadField K(5);
  const double cD = K.unit().c_d;
  double worst_u = 0, worst_support = 0;
  for (double t : {10.0, 20.0, 40.0}) {
    for (double x = -2 * cD * t; x <= 2 * cD * t; x += 0.01 * cD * t) {
      const double u = analysis::bump_U(x, t, cD), v = analysis::bump_U(-x, t, cD);
      worst_u = std::max(worst_u, 1 - (u + v));
      if (x <= -0.5 * cD * t) worst_support = std::max(worst_support, std::abs(u));
      if (x >= 0) worst_support = std::max(worst_support, std::abs(u - 1));
    }
  }
  r.add("U(x) + U(-x) >= 1", worst_u <= 1e-15, worst_u, 1e-15);
  r.add("U = 1 on [0, inf), 0 below -c_D t/2", worst_support == 0, worst_support, 0);

  // k_D budget: windows with 2^{k-1} >= 3 c_D t / 2 meet U nowhere
  int budget_bad = 0;
  for (double t : {10.0, 20.0, 40.0}) {
    const int kD = analysis::Windows::make(K, t, 0, o.delta).k_D();
    for (int k = 0; k <= kD + 3; ++k) {
      const auto w = analysis::Windows::make(K, t, k, o.delta);
      if (std::ldexp(1.0, k - 1) < 1.5 * cD * t) continue;
      for (i64 n = static_cast<i64>(std::floor(-cD * t)) - 2; n <= static_cast<i64>(cD * t) + 2; ++n)
        if (w.W_k(static_cast<double>(n)) * w.U(static_cast<double>(n)) != 0) ++budget_bad;
    }
  }
  r.add("windows with 2^{k-1} >= 3 c_D t/2 contribute nothing", budget_bad == 0, budget_bad, 0);

  // W_k G (Tt)^{1/2} and q / (Tt)^2 on the support of W_k U: fitted at t = 10, asserted at t in {20, 40}
  struct Scan {
    double G = 0, qlo = 1e300, qhi = 0;
  };
  auto scan = [&](double t) {
    Scan s;
    const int kD = analysis::Windows::make(K, t, 0, o.delta).k_D();
    for (int k = 0; k <= kD; ++k) {
      const auto w = analysis::Windows::make(K, t, k, o.delta);
      const double T = w.T();
      for (double x = cD * t - 2 * T; x <= cD * t - T / 2; x += T / 400) {
        const double wu = w.W_k(x) * w.U(x);
        if (wu == 0) continue;
        const special::GammaFactorParams p{t, 5, x, K.unit().log_eps_d};
        const double lg = static_cast<double>(special::log_gamma_s_f_x(special::lcplx(0.5L, 0.0L), p).real()) -
                          special::log_gamma_adjoint_1(t);
        s.G = std::max(s.G, wu * std::exp(lg) * std::sqrt(T * t));
        const double q = special::analytic_conductor(0.5, t, p.r()) / std::pow(T * t, 2);
        s.qlo = std::min(s.qlo, q);
        s.qhi = std::max(s.qhi, q);
      }
    }
    return s;
  };
  const Scan base = scan(10.0);
  r.fitted.push_back({"W_k G <= C (Tt)^{-1/2}", base.G, "D=5, t=10, all k <= k_D, x on the support"});
  r.fitted.push_back({"q lower factor", base.qlo, "D=5, t=10"});
  r.fitted.push_back({"q upper factor", base.qhi, "D=5, t=10"});
  double worst_G = 0, worst_q = 0;
  std::string qdetail;
  for (double t : {20.0, 40.0}) {
    const Scan s = scan(t);
    worst_G = std::max(worst_G, s.G / base.G);
    worst_q = std::max({worst_q, base.qlo / s.qlo, s.qhi / base.qhi});
    qdetail += " t=" + fmt(t) + ": [" + fmt(s.qlo) + ", " + fmt(s.qhi) + "]";
  }
  r.add("W_k(n) G(n) <= C (Tt)^{-1/2}", worst_G <= 1.0, worst_G, 1.0, "t in {20, 40}");
  r.add("q within the fitted factors of (Tt)^2", worst_q <= 1.0, worst_q, 1.0,
        "fitted [" + fmt(base.qlo) + ", " + fmt(base.qhi) + "];" + qdetail);

  // H_A support and derivative bounds
  int support_bad = 0;
  auto deriv_scan = [&](double t, int k, double& j1, double& j2) {
    const auto w = analysis::Windows::make(K, t, k, o.delta);
    const int a = 2;
    const double A = 4.0, T = w.T();
    for (const auto& e : quadfield::elements_in_region(K, {1, 16}, quadfield::ConeBounds::fundamental_domain())) {
      const analysis::HFunction H(K, w, a, e, 1);
      const double N = static_cast<double>(K.norm(e));
      if ((N < A / 2 || N > 2 * A) && H.active()) ++support_bad;
      if (!H.active()) continue;
      for (double x : {cD * t - 2 * T - 0.5, cD * t - T / 2 + 1e-9, cD * t + 3})
        if (analysis::H_A_direct(K, w, a, e, 1, x) != 0) ++support_bad;
      const double h = T * 1e-3, base = std::pow(t, o.eps) * std::pow(t * T * A, -0.5);
      for (double x = H.support_lo() + h; x < H.support_hi() - h; x += T / 200) {
        const double d1 = (H(x + h) - H(x - h)) / (2 * h), d2 = (H(x + h) - 2 * H(x) + H(x - h)) / (h * h);
        j1 = std::max(j1, std::abs(d1) / (base / T));
        j2 = std::max(j2, std::abs(d2) / (base / (T * T)));
      }
    }
  };
  double c1 = 0, c2 = 0;
  for (int k = 1; k <= 3; ++k) deriv_scan(10.0, k, c1, c2);
  r.fitted.push_back({"H_A' constant", c1, "D=5, t=10, k in {1,2,3}, a=2, m=1"});
  r.fitted.push_back({"H_A'' constant", c2, "D=5, t=10, k in {1,2,3}, a=2, m=1"});
  double d1 = 0, d2 = 0;
  for (int k = 1; k <= 3; ++k) deriv_scan(20.0, k, d1, d2);
  r.add("H_A vanishes off [c_D t - 2T, c_D t - T/2] and off N in [A/2, 2A]", support_bad == 0, support_bad, 0);
  r.add("|H_A'| <= C t^eps T^-1 (tTA)^-1/2", d1 <= c1, d1 / c1, 1.0, "t=20, k in {1,2,3}");
  r.add("|H_A''| <= C t^eps T^-2 (tTA)^-1/2", d2 <= c2, d2 / c2, 1.0, "t=20, k in {1,2,3}");

  // Fourier transform of a Gaussian
  {
    const analysis::FourierTransform ft([](double x) { return std::exp(-kPi * x * x); }, -8.0, 8.0);
    double worst = 0;
    for (double xi = -5; xi <= 5; xi += 0.25) worst = std::max(worst, std::abs(ft(xi) - std::exp(-kPi * xi * xi)));
    r.add("Gaussian Fourier pair", worst < 1e-12, worst, 1e-12);
  }

  // phases and the cone coordinate of F_D
  {
    double worst_phase = 0;
    bool in_range = true;
    const Real two = 2;
    for (const auto& e : quadfield::elements_in_region(K, {1, 400}, quadfield::ConeBounds::fundamental_domain())) {
      const Real l = K.log_abs_ratio(e) / K.unit().log_eps;
      in_range = in_range && l >= 0 && l < two;
      const double theta = static_cast<double>(K.log_abs_ratio(e) / (2 * K.unit().log_eps));
      for (i64 n : {1, 7, 40}) {
        const double turns = static_cast<double>(hecke::archimedean_turns(K, e, n));
        worst_phase = std::max(worst_phase, std::abs(std::polar(1.0, 2 * kPi * turns) - std::polar(1.0, 2 * kPi * n * theta)));
      }
    }
    r.add("|a/a*|^{pi i x/log eps} = e(x log(a/a*)/(2 log eps))", worst_phase < 1e-12, worst_phase, 1e-12);
    r.add("0 <= log(a/a*)/log eps < 2 on F_D", in_range, in_range, 1, "N <= 400");
  }

  // S_{xi,R} inside F_D and monotone in R
  {
    bool inside = true, monotone = true;
    for (i64 xi : {-1, 0, 1, 2}) {
      std::size_t prev = 0;
      for (double R : {0.05, 0.1, 0.25, 0.5, 1.0, 1.5, 2.0}) {
        const auto S = analysis::S_region_enumerate(K, {xi, R, 100.0});
        for (const auto& e : S) inside = inside && K.in_fundamental_domain(e);
        monotone = monotone && S.size() >= prev;
        prev = S.size();
      }
    }
    r.add("S_{xi,R} inside F_D", inside, inside, 1);
    r.add("|S_{xi,R}| nondecreasing in R", monotone, monotone, 1);
    int square_bad = 0;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-50, 50);
    for (int i = 0; i < 200; ++i) {
      const double L = std::abs(u(rng)) / 5, x0 = u(rng), y0 = u(rng);
      const i64 cnt = (static_cast<i64>(std::floor(x0 + L)) - static_cast<i64>(std::ceil(x0)) + 1) *
                      (static_cast<i64>(std::floor(y0 + L)) - static_cast<i64>(std::ceil(y0)) + 1);
      if (static_cast<double>(cnt) > (L + 1) * (L + 1)) ++square_bad;
    }
    r.add("square of side L holds <= (L+1)^2 lattice points", square_bad == 0, square_bad, 0);
  }
  r.seconds = timer.seconds();
  return r;
}

using SuiteFn = std::function<SuiteReport(const Options&)>;

const std::vector<std::pair<std::string, std::vector<SuiteFn>>>& suites() {
  static const std::vector<std::pair<std::string, std::vector<SuiteFn>>> list = {
      {"quadfield", {criterion_quadfield}},
      {"geodesics", {criterion_dictionary}},
      {"hecke", {criterion_theta, extra_hecke}},
      {"gamma", {criterion_V, extra_gamma, criterion_tail}},
      {"afe", {extra_lfunctions, criterion_orthogonality}},
      {"restriction", {criterion_plancherel, extra_restriction, criterion_waldspurger}},
      {"analysis", {extra_analysis, criterion_poisson, criterion_lattice}},
  };
  return list;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& s : suites()) n.push_back(s.first);
    return n;
  }();
  return names;
}

std::vector<SuiteReport> run_suite(const std::string& name, const Options& o) {
  std::vector<SuiteReport> out;
  for (const auto& s : suites())
    if (name == "all" || s.first == name)
      for (const auto& fn : s.second) out.push_back(fn(o));
  if (out.empty()) throw std::invalid_argument("unknown suite: " + name);
  return out;
}

std::string report_json(const std::vector<SuiteReport>& reports, const std::string& config_json) {
  nlohmann::json j;
  j["config"] = nlohmann::json::parse(config_json);
  bool all = true;
  for (const auto& rep : reports) {
    nlohmann::json s;
    s["name"] = rep.name;
    s["pass"] = rep.pass();
    s["seconds"] = rep.seconds;
    for (const auto& c : rep.checks)
      s["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"value", c.value}, {"threshold", c.threshold}, {"detail", c.detail}});
    for (const auto& f : rep.fitted)
      s["fitted"].push_back({{"name", f.name}, {"value", f.value}, {"provenance", f.provenance}});
    all = all && rep.pass();
    j["suites"].push_back(s);
  }
  j["pass"] = all;
  return j.dump(2);
}

}  // namespace geod::verify
