#include "geod/restriction.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "geod/parallel.hpp"

namespace geod::restriction {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kPanelPoints = 16;

using GL = boost::math::quadrature::gauss<double, kPanelPoints>;

// Composite Gauss-Legendre nodes and weights on [lo, hi] with `nodes` points.
void composite_rule(double lo, double hi, int nodes, std::vector<double>& x, std::vector<double>& w) {
  const int panels = std::max(1, nodes / kPanelPoints);
  const auto& absc = GL::abscissa();
  const auto& wts = GL::weights();
  x.clear();
  w.clear();
  const double width = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double c = lo + (p + 0.5) * width;
    for (std::size_t i = 0; i < absc.size(); ++i)
      for (int sgn : {-1, 1}) {
        if (absc[i] == 0.0 && sgn == 1) continue;
        x.push_back(c + sgn * absc[i] * width / 2);
        w.push_back(wts[i] * width / 2);
      }
  }
}

void check_nodes(const QuadratureConfig& cfg) {
  if (cfg.nodes < kPanelPoints || (cfg.nodes & (cfg.nodes - 1)) != 0)
    throw std::invalid_argument("QuadratureConfig: node count must be a power of 2, at least 16");
  if (!(cfg.tol > 0)) throw std::invalid_argument("QuadratureConfig: tolerance must be positive");
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double max_abs(const std::vector<cplx>& a) {
  double m = 0;
  for (const auto& v : a) m = std::max(m, std::abs(v));
  return m;
}

struct Coefficients {
  // c[cls][n + n_max] = log(eps^2) int_0^1 g(cls, x) e(-n x) dx
  std::vector<std::vector<cplx>> c;
  int nodes = 0;
  double change = 0.0;
  bool converged = false;
};

std::vector<cplx> flatten(const std::vector<std::vector<cplx>>& m) {
  std::vector<cplx> out;
  for (const auto& row : m) out.insert(out.end(), row.begin(), row.end());
  return out;
}

Coefficients class_fourier_coefficients(const GeodesicFunction& g, const hecke::HeckeField& F, i64 n_lo, i64 n_hi,
                                        const QuadratureConfig& cfg) {
  check_nodes(cfg);
  const int h = F.h();
  const double len = 2 * F.field().unit().log_eps_d;
  auto compute = [&](int nodes) {
    std::vector<double> x, w;
    composite_rule(0.0, 1.0, nodes, x, w);
    std::vector<std::vector<cplx>> vals(static_cast<std::size_t>(h), std::vector<cplx>(x.size()));
    parallel_for(static_cast<std::size_t>(h) * x.size(), cfg.jobs, [&](std::size_t k) {
      const std::size_t cls = k / x.size(), i = k % x.size();
      vals[cls][i] = g.eval(static_cast<int>(cls), x[i]);
    });
    std::vector<std::vector<cplx>> c(static_cast<std::size_t>(h), std::vector<cplx>(static_cast<std::size_t>(n_hi - n_lo + 1)));
    for (int cls = 0; cls < h; ++cls)
      for (i64 n = n_lo; n <= n_hi; ++n) {
        cplx s = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
          s += w[i] * vals[static_cast<std::size_t>(cls)][i] * std::polar(1.0, -2 * kPi * static_cast<double>(n) * x[i]);
        c[static_cast<std::size_t>(cls)][static_cast<std::size_t>(n - n_lo)] = len * s;
      }
    return c;
  };
  Coefficients out;
  int nodes = cfg.nodes;
  auto prev = compute(nodes);
  while (nodes * 2 <= cfg.max_nodes) {
    nodes *= 2;
    auto cur = compute(nodes);
    const auto a = flatten(prev), b = flatten(cur);
    out.change = max_abs_diff(a, b);
    out.c = std::move(cur);
    out.nodes = nodes;
    if (out.change <= cfg.tol * std::max(1.0, max_abs(b))) {
      out.converged = true;
      return out;
    }
    prev = out.c;
  }
  if (out.c.empty()) out.c = std::move(prev);
  out.nodes = nodes;
  return out;
}

cplx psi_inverse(const hecke::HeckeField& F, const hecke::ClassCharacter& psi, int cls) {
  return std::conj(hecke::eval_class_character(psi, F.group(), cls));
}

}  // namespace

// ------------------------------------------------------------------ Maass values

cplx reduce_to_fundamental_domain(cplx z) {
  if (!(z.imag() > 0)) throw std::domain_error("reduce_to_fundamental_domain: Im z must be positive");
  for (int it = 0; it < 10000; ++it) {
    z -= std::round(z.real());
    if (std::norm(z) >= 1.0 - 1e-14) return z;
    z = -1.0 / z;
  }
  throw std::runtime_error("reduce_to_fundamental_domain: no convergence");
}

MaassValue maass_value(const lfunc::MaassForm& f, cplx z, const QuadratureConfig& cfg) {
  if (cfg.reduce) z = reduce_to_fundamental_domain(z);
  const double x = z.real(), y = z.imag();
  if (!(y >= cfg.y_floor))
    throw std::domain_error("maass_value: Im z = " + std::to_string(y) + " below the floor " + std::to_string(cfg.y_floor));
  const bool even = f.parity == lfunc::Parity::even;
  MaassValue out;
  long double s = 0;
  double lam_max = 1.0;
  for (i64 n = 1;; ++n) {
    const double arg = 2 * kPi * static_cast<double>(n) * y;
    const double k = bessel_K_imag_scaled(f.t, arg);
    if (arg > f.t && std::abs(k) * 2 * std::sqrt(y) * 10 * lam_max < cfg.series_tol) {
      out.tail = std::abs(k) * 2 * std::sqrt(y) * 10 * lam_max;
      break;
    }
    if (n > f.N()) throw lfunc::CoefficientShortfall(n, f.N());
    const double lam = f(n);
    lam_max = std::max(lam_max, std::abs(lam));
    const double ang = 2 * kPi * static_cast<double>(n) * x;
    s += lam * std::sqrt(y) * k * 2 * (even ? std::cos(ang) : std::sin(ang));
    out.terms = static_cast<int>(n);
  }
  out.value = static_cast<double>(s);
  return out;
}

GeodesicFunction restrict_form(const lfunc::MaassForm& f, const std::vector<geodesics::ClosedGeodesic>& geos,
                               const QuadratureConfig& cfg) {
  GeodesicFunction g;
  g.smoothness = "real analytic";
  g.eval = [&f, &geos, cfg](int cls, double x) {
    return cplx(maass_value(f, geodesics::geodesic_point(geos.at(static_cast<std::size_t>(cls)), x), cfg).value, 0.0);
  };
  return g;
}

// ------------------------------------------------------------------ periods

double total_length(const hecke::HeckeField& F) { return F.h() * 2 * F.field().unit().log_eps_d; }

PeriodIntegral geodesic_integral_I(const GeodesicFunction& g, const hecke::HeckeField& F,
                                   const hecke::ClassCharacter& psi, i64 n, const QuadratureConfig& cfg) {
  const auto co = class_fourier_coefficients(g, F, n, n, cfg);
  PeriodIntegral out;
  for (int cls = 0; cls < F.h(); ++cls) out.sum += psi_inverse(F, psi, cls) * co.c[static_cast<std::size_t>(cls)][0];
  out.I = std::norm(out.sum);
  out.nodes = co.nodes;
  out.change = co.change;
  out.converged = co.converged;
  return out;
}

PeriodIntegral geodesic_integral_I_ychart(const std::function<cplx(cplx)>& g_on_H,
                                          const std::vector<geodesics::ClosedGeodesic>& geos,
                                          const hecke::HeckeField& F, const hecke::ClassCharacter& psi, i64 n,
                                          const QuadratureConfig& cfg) {
  check_nodes(cfg);
  const double log_eps = F.field().unit().log_eps_d;
  const double y_hi = std::exp(2 * log_eps);
  auto compute = [&](int nodes) {
    std::vector<double> y, w;
    composite_rule(1.0, y_hi, nodes, y, w);
    cplx total = 0;
    for (int cls = 0; cls < F.h(); ++cls) {
      cplx s = 0;
      for (std::size_t i = 0; i < y.size(); ++i) {
        const cplx z = geodesics::point_on_axis_preimage(geos.at(static_cast<std::size_t>(cls)), Real(y[i]));
        s += w[i] / y[i] * g_on_H(z) * std::polar(1.0, -kPi * static_cast<double>(n) * std::log(y[i]) / log_eps);
      }
      total += psi_inverse(F, psi, cls) * s;
    }
    return total;
  };
  PeriodIntegral out;
  int nodes = cfg.nodes;
  cplx prev = compute(nodes);
  while (nodes * 2 <= cfg.max_nodes) {
    nodes *= 2;
    const cplx cur = compute(nodes);
    out.change = std::abs(cur - prev);
    prev = cur;
    if (out.change <= cfg.tol * std::max(1.0, std::abs(cur))) {
      out.converged = true;
      break;
    }
  }
  out.sum = prev;
  out.I = std::norm(prev);
  out.nodes = nodes;
  return out;
}

RestrictionNorm restriction_norm(const GeodesicFunction& g, const hecke::HeckeField& F, int n_max,
                                 const QuadratureConfig& cfg) {
  if (n_max < 0) throw std::invalid_argument("restriction_norm: n_max must be >= 0");
  const auto co = class_fourier_coefficients(g, F, -n_max, n_max, cfg);
  const double C = total_length(F);
  const auto psis = hecke::all_class_characters(F.group());
  // I summed over psi for each n
  std::vector<double> by_n(static_cast<std::size_t>(2 * n_max + 1), 0.0);
  for (const auto& psi : psis)
    for (int j = 0; j <= 2 * n_max; ++j) {
      cplx s = 0;
      for (int cls = 0; cls < F.h(); ++cls) s += psi_inverse(F, psi, cls) * co.c[static_cast<std::size_t>(cls)][static_cast<std::size_t>(j)];
      by_n[static_cast<std::size_t>(j)] += std::norm(s);
    }
  RestrictionNorm out;
  out.converged = co.converged;
  double acc = by_n[static_cast<std::size_t>(n_max)];
  out.partial.push_back(acc / (C * C));
  for (int k = 1; k <= n_max; ++k) {
    const double add = by_n[static_cast<std::size_t>(n_max + k)] + by_n[static_cast<std::size_t>(n_max - k)];
    acc += add;
    out.partial.push_back(acc / (C * C));
    if (k == n_max) out.tail_last = add / (C * C);
  }
  out.spectral = acc / C;
  out.normalized = acc / (C * C);
  return out;
}

double direct_norm(const GeodesicFunction& g, const hecke::HeckeField& F, const QuadratureConfig& cfg) {
  return inner_product(g, g, F, cfg).real() / total_length(F);
}

cplx inner_product(const GeodesicFunction& g1, const GeodesicFunction& g2, const hecke::HeckeField& F,
                   const QuadratureConfig& cfg) {
  // arclength chart: s in [0, log eps^2), x = s / log eps^2
  check_nodes(cfg);
  const double len = 2 * F.field().unit().log_eps_d;
  auto compute = [&](int nodes) {
    std::vector<double> s, w;
    composite_rule(0.0, len, nodes, s, w);
    cplx total = 0;
    for (int cls = 0; cls < F.h(); ++cls)
      for (std::size_t i = 0; i < s.size(); ++i)
        total += w[i] * g1.eval(cls, s[i] / len) * std::conj(g2.eval(cls, s[i] / len));
    return total;
  };
  int nodes = cfg.nodes;
  cplx prev = compute(nodes);
  while (nodes * 2 <= cfg.max_nodes) {
    nodes *= 2;
    const cplx cur = compute(nodes);
    const bool done = std::abs(cur - prev) <= cfg.tol * std::max(1.0, std::abs(cur));
    prev = cur;
    if (done) break;
  }
  return prev;
}

cplx inner_product_pullback(const GeodesicFunction& g1, const GeodesicFunction& g2, const hecke::HeckeField& F,
                            const QuadratureConfig& cfg) {
  // probability measure on R/Z x H+: dx times counting measure / h
  check_nodes(cfg);
  auto compute = [&](int nodes) {
    std::vector<double> x, w;
    composite_rule(0.0, 1.0, nodes, x, w);
    cplx total = 0;
    for (int cls = 0; cls < F.h(); ++cls)
      for (std::size_t i = 0; i < x.size(); ++i) total += w[i] * g1.eval(cls, x[i]) * std::conj(g2.eval(cls, x[i]));
    return total / static_cast<double>(F.h());
  };
  int nodes = cfg.nodes;
  cplx prev = compute(nodes);
  while (nodes * 2 <= cfg.max_nodes) {
    nodes *= 2;
    const cplx cur = compute(nodes);
    const bool done = std::abs(cur - prev) <= cfg.tol * std::max(1.0, std::abs(cur));
    prev = cur;
    if (done) break;
  }
  return total_length(F) * prev;
}

// ------------------------------------------------------------------ Waldspurger

std::vector<WaldspurgerEntry> waldspurger_ratio(const lfunc::MaassForm& f, const hecke::HeckeField& F,
                                                const std::vector<i64>& ns, const WaldspurgerConfig& cfg,
                                                hecke::ThetaCache* cache) {
  const auto geos = geodesics::geodesics_for_discriminant(F.field(), F.group());
  const auto psis = hecke::all_class_characters(F.group());
  const double adjoint = lfunc::adjoint_L_1(f).value;
  hecke::ThetaCache local;
  if (!cache) cache = &local;

  // periods for every n at once, per class
  i64 lo = 0, hi = 0;
  for (i64 n : ns) {
    lo = std::min(lo, n);
    hi = std::max(hi, n);
  }
  const auto g = restrict_form(f, geos, cfg.quad);
  const auto co = class_fourier_coefficients(g, F, lo, hi, cfg.quad);

  std::vector<WaldspurgerEntry> rows;
  for (std::size_t p = 0; p < psis.size(); ++p)
    for (i64 n : ns) {
      WaldspurgerEntry e;
      e.psi_index = static_cast<int>(p);
      e.n = n;
      rows.push_back(e);
    }
  parallel_for(rows.size(), cfg.quad.jobs, [&](std::size_t i) {
    auto& e = rows[i];
    const auto& psi = psis[static_cast<std::size_t>(e.psi_index)];
    cplx s = 0;
    for (int cls = 0; cls < F.h(); ++cls)
      s += psi_inverse(F, psi, cls) * co.c[static_cast<std::size_t>(cls)][static_cast<std::size_t>(e.n - lo)];
    e.I = std::norm(s);
    const hecke::HeckeCharacter chi{psi, e.n};
    if (lfunc::parity_of(chi) != f.parity) {
      e.skipped = true;
      e.reason = "parity mismatch";
      return;
    }
    try {
      const auto cr = lfunc::completed_ratio(f, F, chi, cfg.afe, cache, adjoint);
      e.L_side = cr.value;
      e.L_error = cr.error;
    } catch (const lfunc::CoefficientShortfall& ex) {
      e.skipped = true;
      e.reason = ex.what();
      return;
    }
    if (std::abs(e.L_side) < cfg.noise_factor * e.L_error) {
      e.skipped = true;
      e.reason = "L-side below noise floor";
      return;
    }
    e.ratio = e.I / e.L_side;
  });
  if (!co.converged)
    for (auto& e : rows)
      if (!e.skipped) e.reason = "period quadrature did not converge";
  return rows;
}

double relative_spread(const std::vector<WaldspurgerEntry>& rows, int psi_index) {
  double lo = 0, hi = 0, sum = 0;
  int count = 0;
  for (const auto& e : rows) {
    if (e.skipped || e.psi_index != psi_index) continue;
    if (count == 0) lo = hi = e.ratio;
    lo = std::min(lo, e.ratio);
    hi = std::max(hi, e.ratio);
    sum += e.ratio;
    ++count;
  }
  if (count == 0) return 0.0;
  return (hi - lo) / (sum / count);
}

std::string waldspurger_csv(i64 D, const std::vector<WaldspurgerEntry>& rows) {
  std::ostringstream os;
  os << std::setprecision(17) << "D,psi,n,I_value,L_side,ratio\n";
  for (const auto& e : rows) {
    os << D << ',' << e.psi_index << ',' << e.n << ',' << e.I << ',';
    if (e.skipped)
      os << ",\n";
    else
      os << e.L_side << ',' << e.ratio << '\n';
  }
  return os.str();
}

}  // namespace geod::restriction
