#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "geod/hecke.hpp"
#include "geod/hejhal.hpp"
#include "geod/special_functions.hpp"

namespace geod::lfunc {

using i64 = std::int64_t;

struct MaassForm {
  double t = 0.0;
  Parity parity = Parity::even;
  int level = 1;
  std::vector<double> lambda;  // lambda[n-1]
  std::string source;

  i64 N() const { return static_cast<i64>(lambda.size()); }
  double operator()(i64 n) const { return lambda.at(static_cast<std::size_t>(n - 1)); }
};

struct HeckeCheck {
  int pairs = 0;
  double max_defect = 0.0;
};

// 100 random pairs (m, n) with mn <= N, fixed seed. Throws
// std::runtime_error when a relation is off by more than tol.
HeckeCheck check_hecke_relations(const MaassForm& f, double tol = 1e-8, int pairs = 100, std::uint64_t seed = 20240607);

// Throws std::invalid_argument for schema or normalization problems and
// std::runtime_error for failing Hecke relations.
MaassForm maass_form_from_json(const std::string& text);
MaassForm load_maass_form(const std::string& path);
std::string maass_form_to_json(const MaassForm& f);
void save_maass_form(const MaassForm& f, const std::string& path);

// GEOD_DATA_DIR if set, otherwise the data/ directory of the source tree.
std::string data_dir();
std::string default_form_path(Parity parity);

struct VerificationConfig {
  double theta = 7.0 / 64.0;
  double eps = 0.01;
  double delta = 0.1;
};

struct AFEConfig {
  double c = 1.0;
  double delta = 0.1;
  double v_tol = 1e-8;    // terms with |V| below this are dropped
  i64 M = 0;              // fixed truncation; 0 = choose
  bool enforce_parity = true;
  special::VConfig v;
};

struct LValueResult {
  double value = 0.0;
  double imag = 0.0;  // vanishes for real characters
  i64 M = 0;
  double error = 0.0;
  double q_infty = 0.0;
};

class CoefficientShortfall : public std::runtime_error {
 public:
  CoefficientShortfall(i64 required, i64 available);
  i64 required;
  i64 available;
};

// Chebyshev interpolant of y -> V(y, x) on [y_lo, y_hi], pieces of unit
// width in log y.
class VInterpolant {
 public:
  VInterpolant(const special::GammaFactorParams& p, double y_lo, double y_hi, const special::VConfig& cfg = {});
  double operator()(double y) const;
  double max_quad_error() const { return quad_error_; }
  double y_lo() const { return y_lo_; }
  double y_hi() const { return y_hi_; }

 private:
  double y_lo_, y_hi_, l0_;
  int pieces_;
  std::vector<std::vector<double>> values_;  // per piece, at Chebyshev nodes
  double quad_error_ = 0.0;
};

// Smallest y (on a doubling grid past the balance point) with |V| < tol.
double V_cutoff(const special::GammaFactorParams& p, double tol, const special::VConfig& cfg = {});

// Truncation of the AFE box sum: n, m <= M and m^2 n / D <= y_zero, with V
// tabulated on [y_lo, y_hi].
struct AFEPlan {
  i64 M = 0;
  double y_cut = 0.0;   // |V| < v_tol beyond this
  double y_zero = 0.0;  // |V| < 1e-8 v_tol beyond this
  double y_lo = 0.0, y_hi = 0.0;
};
AFEPlan afe_plan(const special::GammaFactorParams& p, const AFEConfig& cfg);

// Hecke eigenvalue normalisation of the theta coefficients, m >= 1:
// lambda_theta(m) = (1/2) sum_{N a = m} chi(a). The sign-weighted variant
// differs from this by the constant 1/i on m > 0.
std::vector<hecke::cplx> theta_dirichlet_coefficients(const hecke::ThetaCoefficients& th);

Parity parity_of(const hecke::HeckeCharacter& chi);

LValueResult rankin_selberg_central(const MaassForm& f, const hecke::HeckeField& F, const hecke::HeckeCharacter& chi,
                                    hecke::ThetaVariant variant, const AFEConfig& cfg = {},
                                    hecke::ThetaCache* cache = nullptr);

// Same sum with explicit coefficient streams (used by the synthetic checks).
LValueResult afe_sum(const std::vector<double>& lambda_f, const std::vector<hecke::cplx>& lambda_theta, i64 D,
                     const special::GammaFactorParams& p, const AFEConfig& cfg);

// sum_{n} a(n)/n e^{-n/X}, a = zeta(2s) * lambda(n^2); lambda(n^2) from the
// prime values by the Hecke recursion.
double adjoint_smoothed_sum(const MaassForm& f, double X);
// sum_{n>=1} a[n]/n e^{-n/X}; a[0] is ignored
double smoothed_sum(const std::vector<double>& a, double X);
std::vector<double> adjoint_coefficients(const MaassForm& f);

struct AdjointResult {
  double value = 0.0;
  double X = 0.0;
  double raw_X = 0.0;   // smoothed sum at X
  double raw_2X = 0.0;  // smoothed sum at X/2 (second cutoff)
  double spread = 0.0;  // relative difference of the extrapolations at X and X/2
};

// Richardson extrapolation in the even powers of 1/X.
AdjointResult adjoint_L_1(const MaassForm& f);

struct CompletedRatio {
  double value = 0.0;
  double G = 0.0;
  LValueResult L;
  double adjoint = 0.0;
  double error = 0.0;
};

CompletedRatio completed_ratio(const MaassForm& f, const hecke::HeckeField& F, const hecke::HeckeCharacter& chi,
                               const AFEConfig& cfg = {}, hecke::ThetaCache* cache = nullptr, double adjoint = 0.0);

struct LValueRow {
  i64 D;
  int psi_index;
  i64 n;
  double value;
  double error;
  double q_infty;
};

std::string lvalues_csv(const std::vector<LValueRow>& rows);

}  // namespace geod::lfunc
