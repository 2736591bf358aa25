#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "geod/arith.hpp"
#include "geod/geodesics.hpp"
#include "geod/hecke.hpp"
#include "geod/lfunctions.hpp"
#include "geod/parallel.hpp"
#include "geod/restriction.hpp"
#include "geod/verify.hpp"
#include "geod/version.hpp"

namespace {

using namespace geod;
using json = nlohmann::json;
using quadfield::i64;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  i64 D = 5;
  std::string form = "even";
  std::string data_dir;  // empty: GEOD_DATA_DIR, then the built-in default
  unsigned precision = 50;
  double delta = 0.1;
  double eps = 0.01;
  int n_max = 6;
  std::string out;
  int jobs = default_jobs();

  json to_json() const {
    return {{"D", D},         {"form", form},   {"data_dir", data_dir.empty() ? lfunc::data_dir() : data_dir},
            {"precision", precision}, {"delta", delta}, {"eps", eps},
            {"n_max", n_max}, {"jobs", jobs},   {"version", kVersion}};
  }
};

void check_D(i64 D) {
  if (!arith::is_fundamental_discriminant(D))
    throw UsageError(std::to_string(D) + " is not a positive fundamental discriminant");
}

void apply_precision(const RunConfig& c) {
  if (c.precision < 30) throw UsageError("--precision must be at least 30 digits");
  set_working_precision(c.precision);
}

std::string resolve_form(const RunConfig& c) {
  if (c.form == "even" || c.form == "odd") {
    const std::string dir = c.data_dir.empty() ? lfunc::data_dir() : c.data_dir;
    return dir + "/maass_level1_" + c.form + ".json";
  }
  return c.form;
}

lfunc::MaassForm load_form(const RunConfig& c) {
  const std::string path = resolve_form(c);
  if (!std::ifstream(path)) throw UsageError("form file not found: " + path);
  return lfunc::load_maass_form(path);
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream os(c.out);
  if (!os) throw UsageError("cannot write " + c.out);
  os << text;
}

std::string form_str(const quadfield::QuadraticForm& q) {
  return "[" + std::to_string(q.a) + ", " + std::to_string(q.b) + ", " + std::to_string(q.c) + "]";
}

// ------------------------------------------------------------------ commands

int cmd_field_info(const RunConfig& c) {
  check_D(c.D);
  apply_precision(c);
  const quadfield::QuadField K(c.D);
  const auto G = quadfield::narrow_class_group(c.D);
  const auto& u = K.unit();
  json j;
  j["D"] = c.D;
  j["pell"] = {{"x_D", u.x_D.get_str()}, {"y_D", u.y_D.get_str()}};
  j["eps"] = u.eps.str(30);
  j["log_eps"] = u.log_eps.str(30);
  j["c_D"] = u.c_D.str(30);
  j["beta_D"] = K.one_mod_four() ? "(1+sqrt(D))/2" : "sqrt(D)/2";
  j["fundamental_unit_norm"] = u.fundamental_unit_norm;
  j["h_plus"] = G.h();
  j["class_structure"] = G.orders;
  for (const auto& q : G.representatives) j["representatives"].push_back(form_str(q));
  j["reduced_forms"] = quadfield::reduced_forms(c.D).size();
  j["config"] = c.to_json();
  emit(c, j.dump(2));
  return 0;
}

int cmd_geodesics(const RunConfig& c) {
  check_D(c.D);
  apply_precision(c);
  const quadfield::QuadField K(c.D);
  const auto G = quadfield::narrow_class_group(c.D);
  json j;
  j["D"] = c.D;
  const auto geos = geodesics::geodesics_for_discriminant(K, G);
  for (std::size_t i = 0; i < geos.size(); ++i) {
    const auto& g = geos[i];
    json m = json::array();
    for (const auto& e : g.M.m) m.push_back(e.get_str());
    j["geodesics"].push_back({{"class", i},
                              {"form", form_str(g.form)},
                              {"matrix", m},
                              {"omega", g.omega.str(25)},
                              {"omega_star", g.omega_star.str(25)},
                              {"length", g.length.str(25)}});
  }
  j["total_length"] = restriction::total_length(hecke::HeckeField(c.D));
  j["config"] = c.to_json();
  emit(c, j.dump(2));
  return 0;
}

int cmd_theta(const RunConfig& c, int psi_index, i64 n, i64 M, const std::string& variant_name) {
  check_D(c.D);
  apply_precision(c);
  if (M < 1) throw UsageError("--M must be positive");
  const hecke::HeckeField F(c.D);
  const auto psis = hecke::all_class_characters(F.group());
  if (psi_index < 0 || psi_index >= static_cast<int>(psis.size()))
    throw UsageError("--psi must lie in [0, " + std::to_string(psis.size()) + ")");
  hecke::ThetaVariant v;
  if (variant_name == "plain")
    v = hecke::ThetaVariant::plain;
  else if (variant_name == "sign_weighted")
    v = hecke::ThetaVariant::sign_weighted;
  else
    throw UsageError("--variant must be plain or sign_weighted");
  const hecke::IdealTable T(F, M);
  const auto th = hecke::theta_table(F, T, {psis[static_cast<std::size_t>(psi_index)], n}, v);
  const auto lam = lfunc::theta_dirichlet_coefficients(th);
  std::ostringstream os;
  os.precision(17);
  os << "m,ideals,re,im,lambda_re,lambda_im\n";
  for (i64 m = 1; m <= M; ++m) {
    const auto s = th.sums[static_cast<std::size_t>(m - 1)];
    const auto l = lam[static_cast<std::size_t>(m - 1)];
    os << m << ',' << T.of_norm(m).size() << ',' << s.real() << ',' << s.imag() << ',' << l.real() << ',' << l.imag() << '\n';
  }
  emit(c, os.str());
  return 0;
}

int cmd_lvalues(const RunConfig& c, i64 n_min, i64 n_max) {
  check_D(c.D);
  apply_precision(c);
  if (n_min > n_max) throw UsageError("--n-min exceeds --n-max");
  const auto f = load_form(c);
  const hecke::HeckeField F(c.D);
  const auto psis = hecke::all_class_characters(F.group());
  const int want = f.parity == lfunc::Parity::even ? 0 : 1;
  const auto variant = f.parity == lfunc::Parity::even ? hecke::ThetaVariant::plain : hecke::ThetaVariant::sign_weighted;
  struct Job {
    int psi;
    i64 n;
  };
  std::vector<Job> jobs;
  for (std::size_t p = 0; p < psis.size(); ++p)
    for (i64 n = n_min; n <= n_max; ++n)
      if (((n % 2) + 2) % 2 == want) jobs.push_back({static_cast<int>(p), n});
  lfunc::AFEConfig cfg;
  cfg.delta = c.delta;
  hecke::ThetaCache cache;
  std::vector<lfunc::LValueRow> rows(jobs.size());
  parallel_for(jobs.size(), c.jobs, [&](std::size_t i) {
    const auto L = lfunc::rankin_selberg_central(f, F, {psis[static_cast<std::size_t>(jobs[i].psi)], jobs[i].n}, variant, cfg, &cache);
    rows[i] = {c.D, jobs[i].psi, jobs[i].n, L.value, L.error, L.q_infty};
  });
  emit(c, lfunc::lvalues_csv(rows));
  return 0;
}

int cmd_restriction_norm(const RunConfig& c) {
  check_D(c.D);
  apply_precision(c);
  const auto f = load_form(c);
  const hecke::HeckeField F(c.D);
  const auto geos = geodesics::geodesics_for_discriminant(F.field(), F.group());
  restriction::QuadratureConfig q;
  q.jobs = c.jobs;
  const auto g = restriction::restrict_form(f, geos, q);
  const auto norm = restriction::restriction_norm(g, F, c.n_max, q);
  const double direct = restriction::direct_norm(g, F, q);
  json j;
  j["D"] = c.D;
  j["t"] = f.t;
  j["parity"] = lfunc::to_string(f.parity);
  j["total_length"] = restriction::total_length(F);
  j["spectral"] = norm.spectral;
  j["normalized"] = norm.normalized;
  j["partial"] = norm.partial;
  j["tail_last"] = norm.tail_last;
  j["converged"] = norm.converged;
  j["direct"] = direct;
  j["config"] = c.to_json();
  emit(c, j.dump(2));
  return 0;
}

int cmd_waldspurger(const RunConfig& c) {
  check_D(c.D);
  apply_precision(c);
  const auto f = load_form(c);
  const hecke::HeckeField F(c.D);
  std::vector<i64> ns;
  for (i64 n = -c.n_max; n <= c.n_max; ++n) ns.push_back(n);
  restriction::WaldspurgerConfig cfg;
  cfg.quad.jobs = c.jobs;
  cfg.afe.delta = c.delta;
  const auto rows = restriction::waldspurger_ratio(f, F, ns, cfg);
  emit(c, restriction::waldspurger_csv(c.D, rows));
  for (std::size_t p = 0; p < hecke::all_class_characters(F.group()).size(); ++p)
    std::cerr << "psi " << p << ": relative spread " << restriction::relative_spread(rows, static_cast<int>(p)) << '\n';
  return 0;
}

int cmd_verify(const RunConfig& c, const std::string& suite, i64 dmax, double t) {
  const auto& names = verify::suite_names();
  if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end())
    throw UsageError("unknown suite '" + suite + "'");
  check_D(c.D);
  apply_precision(c);
  verify::Options o;
  o.D = c.D;
  o.t = t;
  o.delta = c.delta;
  o.eps = c.eps;
  o.jobs = c.jobs;
  if (dmax > 0) {
    o.pell_dmax = dmax;
    o.class_dmax = std::min(o.class_dmax, dmax);
    o.geodesic_dmax = std::min(o.geodesic_dmax, dmax);
  }
  if (c.form != "even") o.even_form = resolve_form(c);
  if (!c.data_dir.empty()) {
    if (o.even_form.empty()) o.even_form = c.data_dir + "/maass_level1_even.json";
    o.odd_form = c.data_dir + "/maass_level1_odd.json";
  }
  const auto reports = verify::run_suite(suite, o);
  json cfg = c.to_json();
  cfg["suite"] = suite;
  cfg["t"] = t;
  cfg["pell_dmax"] = o.pell_dmax;
  cfg["class_dmax"] = o.class_dmax;
  cfg["geodesic_dmax"] = o.geodesic_dmax;
  cfg["adjoint_gamma_factor"] = "Gamma_R(2) Gamma_R(1+2it) Gamma_R(1-2it) = 1/(pi cosh(pi t))";
  emit(c, verify::report_json(reports, cfg.dump()));
  bool ok = true;
  for (const auto& r : reports) {
    ok = ok && r.pass();
    for (const auto& ch : r.checks)
      if (!ch.pass) std::cerr << "FAIL " << r.name << ": " << ch.name << " (" << ch.value << " vs " << ch.threshold << ")\n";
  }
  return ok ? 0 : kExitFail;
}

int cmd_compute_maass(const RunConfig& c, const std::string& parity_name, double r_guess, int N) {
  apply_precision(c);
  if (c.out.empty()) throw UsageError("compute-maass needs --out");
  if (N < 1000) throw UsageError("--N must be at least 1000");
  const auto parity = lfunc::parity_from_string(parity_name);
  const auto sol = lfunc::hejhal_solve(r_guess, parity);
  const auto ext = lfunc::extend_coefficients(sol, N, c.jobs);
  lfunc::MaassForm f;
  f.t = sol.r;
  f.parity = parity;
  f.lambda = ext.lambda;
  std::ostringstream src;
  src.precision(16);
  src << "computed locally: Hejhal collocation (Y1=0.14, Y2=0.12), R converged to " << std::fixed << sol.r << ", "
      << sol.reliable << " leading coefficients stable to 1e-10; primes up to " << N
      << " by horocycle Fourier inversion, composites by Hecke multiplicativity; max sampled composite defect "
      << std::scientific << std::setprecision(2) << ext.max_composite_defect;
  f.source = src.str();
  lfunc::save_maass_form(f, c.out);
  const auto back = lfunc::load_maass_form(c.out);  // validates the written file
  std::cerr << "wrote " << c.out << ": t=" << back.t << ", N=" << back.N() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed geodesics, Hecke characters and Rankin-Selberg L-values over real quadratic fields"};
  app.set_version_flag("--version", geod::kVersion);
  app.require_subcommand(1);
  RunConfig c;
  auto common = [&c](CLI::App* sub, bool with_form) {
    sub->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--precision", c.precision, "working precision in decimal digits (>= 30)");
    sub->add_option("--out", c.out, "write the result to this file instead of stdout");
    if (with_form) {
      sub->add_option("--form", c.form, "even, odd, or a path to a coefficient file");
      sub->add_option("--data-dir", c.data_dir, "directory of coefficient files (overrides GEOD_DATA_DIR)");
      sub->add_option("--delta", c.delta, "AFE truncation exponent");
    }
  };

  auto* field = app.add_subcommand("field-info", "Pell solution, unit, class group and reduced forms");
  field->add_option("D", c.D, "fundamental discriminant")->required();
  common(field, false);

  auto* geo = app.add_subcommand("geodesics", "closed geodesics, one per narrow class");
  geo->add_option("D", c.D, "fundamental discriminant")->required();
  common(geo, false);

  int psi = 0;
  i64 n = 0, M = 50;
  std::string variant = "plain";
  auto* theta = app.add_subcommand("theta", "theta coefficients of a Hecke character as CSV");
  theta->add_option("D", c.D, "fundamental discriminant")->required();
  theta->add_option("--psi", psi, "class character index");
  theta->add_option("--n", n, "frequency of the archimedean part");
  theta->add_option("--M", M, "largest norm");
  theta->add_option("--variant", variant, "plain or sign_weighted");
  common(theta, false);

  i64 n_lo = 0, n_hi = 6;
  auto* lv = app.add_subcommand("lvalues", "central values L(1/2, f x theta) as CSV");
  lv->add_option("--D", c.D, "fundamental discriminant");
  lv->add_option("--n-min", n_lo);
  lv->add_option("--n-max", n_hi);
  common(lv, true);

  auto* rn = app.add_subcommand("restriction-norm", "L2 norm of a Maass form restricted to the geodesics");
  rn->add_option("--D", c.D, "fundamental discriminant");
  rn->add_option("--n-max", c.n_max, "largest |n| in the spectral sum");
  common(rn, true);

  auto* wald = app.add_subcommand("waldspurger", "period integrals against completed L-ratios as CSV");
  wald->add_option("--D", c.D, "fundamental discriminant");
  wald->add_option("--n-max", c.n_max, "|n| range");
  common(wald, true);

  std::string suite;
  i64 dmax = 0;
  double t = 20.0;
  auto* ver = app.add_subcommand("verify", "run a verification suite and print a JSON report");
  ver->add_option("suite", suite, "quadfield, geodesics, hecke, gamma, afe, restriction, analysis or all")->required();
  ver->add_option("--dmax", dmax, "largest discriminant for the exhaustive field checks");
  ver->add_option("--D", c.D, "discriminant for the analytic checks");
  ver->add_option("--t", t, "spectral parameter for the window checks");
  ver->add_option("--eps", c.eps);
  common(ver, true);

  std::string parity = "even";
  double r_guess = 0;
  int N = 200000;
  auto* cm = app.add_subcommand("compute-maass", "compute level-1 Maass form coefficients by collocation");
  cm->add_option("--parity", parity, "even or odd");
  cm->add_option("--r", r_guess, "spectral parameter guess")->required();
  cm->add_option("--N", N, "number of coefficients");
  common(cm, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*field) return cmd_field_info(c);
    if (*geo) return cmd_geodesics(c);
    if (*theta) return cmd_theta(c, psi, n, M, variant);
    if (*lv) return cmd_lvalues(c, n_lo, n_hi);
    if (*rn) return cmd_restriction_norm(c);
    if (*wald) return cmd_waldspurger(c);
    if (*ver) return cmd_verify(c, suite, dmax, t);
    if (*cm) return cmd_compute_maass(c, parity, r_guess, N);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const lfunc::CoefficientShortfall& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
