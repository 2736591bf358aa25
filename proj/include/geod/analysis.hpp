#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "geod/lfunctions.hpp"
#include "geod/quadfield.hpp"

namespace geod::analysis {

using quadfield::FieldElement;
using quadfield::i64;
using cplx = std::complex<double>;

// e^{-1/(1-u^2)} on (-1, 1), zero outside, and its derivatives.
double mollifier(double u);
double mollifier_derivative(int j, double u);

// 1 left of p, 0 right of q (q > p, or q < p for a mirrored step),
// smooth and monotone in between.
class SmoothStep {
 public:
  SmoothStep(double p, double q);
  double operator()(double x) const;
  double derivative(int j, double x) const;
  double p() const { return p_; }
  double q() const { return q_; }

 private:
  double p_, q_;
};

// eta = 1 on (-inf, 1], 0 on [2, inf); W(x) = eta(x) - eta(2x).
double eta(double x);
double dyadic_W(double x);
double dyadic_W_derivative(int j, double x);
double partition_sum(double x, int K);  // sum_{k=0}^{K} W(x / 2^k)
// max over the grid of |partition_sum(x, K) - (eta(x/2^K) - eta(2x))|,
// with K large enough that 2^K >= x.
double partition_sum_check(const std::vector<double>& grid);

// Parameters of the windows attached to (D, t, k).
struct Windows {
  double t = 0.0;
  i64 D = 5;
  double log_eps = 0.0;
  int k = 0;
  double delta = 0.1;

  static Windows make(const quadfield::QuadField& K, double t, int k, double delta = 0.1);
  double cD() const;          // log eps / pi
  double T() const;           // 2^k
  double Tt_power() const;    // (T t)^{1+delta}
  i64 a_T() const;            // smallest integer > (T t)^{1+delta}
  int k_D() const;            // log2(3 c_D t / 2) + 1
  double W_k(double x) const;
  double W_k_derivative(int j, double x) const;
  double U(double x) const;
  double U_derivative(int j, double x) const;
  double U_T(double norm) const;
  double W_prime(int a, double norm) const;  // W(|N| / 2^a)
  // integers n with W_k(n) U(n) != 0
  std::vector<i64> window_support() const;
};

double bump_U(double x, double t, double cD);

// x -> V(y, x) on an interval, Chebyshev pieces of width <= 1.
class VxInterpolant {
 public:
  VxInterpolant(double y, double t, double log_eps, double x_lo, double x_hi, const special::VConfig& cfg = {});
  double operator()(double x) const;

 private:
  double x_lo_, width_;
  int pieces_;
  std::vector<std::vector<double>> values_;
};

// H_A(alpha, m, x) for fixed (alpha, m) as a function of x.
class HFunction {
 public:
  HFunction(const quadfield::QuadField& K, const Windows& w, int a, FieldElement alpha, i64 m,
            const special::VConfig& cfg = {});
  double operator()(double x) const;
  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }
  double theta() const { return theta_; }  // log(alpha/alpha*) / (2 log eps)
  double norm() const { return norm_; }
  // false when W'_a U_T vanishes at N(alpha)
  bool active() const { return prefactor_ != 0.0; }

 private:
  Windows w_;
  double norm_, theta_, prefactor_, lo_, hi_;
  std::unique_ptr<VxInterpolant> V_;
};

// Direct evaluation without interpolation, for spot checks.
double H_A_direct(const quadfield::QuadField& K, const Windows& w, int a, FieldElement alpha, i64 m, double x,
                  const special::VConfig& cfg = {});

// Fourier transform int H(x) e(-x xi) dx by composite Gauss-Legendre over
// the support, panels doubled until two successive results agree.
class FourierTransform {
 public:
  FourierTransform(std::function<double(double)> h, double lo, double hi, double tol = 1e-14, int min_panels = 8);
  cplx operator()(double xi) const;
  int nodes() const { return static_cast<int>(x_.size()); }

 private:
  std::vector<double> x_, wh_;
  void build(const std::function<double(double)>& h, double lo, double hi, int panels);
  double lo_, hi_;
  std::function<double(double)> h_;
  double tol_;
};

struct PoissonReport {
  double lhs_re = 0, lhs_im = 0;
  double rhs_re = 0, rhs_im = 0;
  double residual = 0;
  int xi_max = 0;
  bool truncation_ok = false;
};

// |sum_n H(n) e(n theta) - sum_xi Hhat(xi - theta)|, xi-sum grown until
// the last block is below tail_tol.
PoissonReport poisson_identity_residual(const HFunction& H, double tail_tol = 1e-13, int xi_cap = 20000);

// Pi_alpha(m) with V taken from the same per-n interpolants and cutoffs as
// the AFE sums, so both sides of the orthogonality identity truncate alike.
struct PiTables {
  Windows w;
  std::vector<i64> ns;
  std::vector<double> weights;  // (T t)^{-1/2} W_k(n) U(n)
  std::vector<lfunc::AFEPlan> plans;
  std::vector<lfunc::VInterpolant> V;
};
PiTables make_pi_tables(const quadfield::QuadField& K, const Windows& w, const lfunc::AFEConfig& cfg);
cplx Pi_alpha(const quadfield::QuadField& K, const PiTables& P, FieldElement alpha, i64 m);

// Both sides of the character-orthogonality identity at a fixed k:
//   lhs = (Tt)^{-1/2} sum_psi sum_n W_k(n) U(n) L(1/2, f x theta_{psi,n})
//   rhs = h+ sum_m chi_D(m)/m sum_{alpha in F_D, N <= M} lambda_f(N) N^{-1/2} Pi_alpha(m)
// with one truncation M shared by every n in the window.
struct IdentityReport {
  int k = 0;
  std::vector<i64> ns;
  i64 M = 0;
  cplx lhs, rhs;
  double lhs_error = 0.0;  // weighted sum of the reported AFE errors
  double rhs_error = 0.0;  // rounding bound for the rearranged sum
  double difference = 0.0;
  double budget() const { return lhs_error + rhs_error; }
  bool ok() const { return difference <= budget(); }
  i64 elements = 0;  // alpha in F_D used on the right
};
IdentityReport character_orthogonality_check(const lfunc::MaassForm& f, const hecke::HeckeField& F, int k,
                                             const lfunc::AFEConfig& cfg = {}, hecke::ThetaCache* cache = nullptr,
                                             int jobs = 1);

struct LatticeRegion {
  i64 xi = 0;
  double R = 1.0;
  double A = 1.0;
};

std::vector<FieldElement> S_region_enumerate(const quadfield::QuadField& K, const LatticeRegion& region);
// Plain box scan with working-precision tests; the oracle for the above.
std::vector<FieldElement> S_region_bruteforce(const quadfield::QuadField& K, const LatticeRegion& region);

// Throws std::logic_error if a point of S violates the parallelogram
// conditions; returns true otherwise.
bool parallelogram_check(const quadfield::QuadField& K, const LatticeRegion& region,
                         const std::vector<FieldElement>& points);

struct CountBound {
  i64 count = 0;
  double shape = 0.0;  // R A + sqrt(A)
  double bound = 0.0;  // C (R A + sqrt(A))
};
CountBound lipschitz_count_bound(const quadfield::QuadField& K, const LatticeRegion& region, double C);

}  // namespace geod::analysis
