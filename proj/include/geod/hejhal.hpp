#pragma once

#include <string>
#include <vector>

namespace geod::lfunc {

enum class Parity { even, odd };

std::string to_string(Parity p);
Parity parity_from_string(const std::string& s);

// Hejhal's collocation method for level-1 Hecke-Maass cusp forms.
struct HejhalParams {
  double Y1 = 0.14;
  double Y2 = 0.12;
  int extra_points = 25;     // Q = M0 + extra_points
  double r_tol = 1e-13;
  int max_iter = 40;
};

struct HejhalSolution {
  double r = 0.0;
  Parity parity = Parity::even;
  std::vector<double> c;   // c[k-1] = coefficient of index k, c[0] = 1
  int reliable = 0;        // leading coefficients agreeing across Y1, Y2 to 1e-10
  double coefficient_spread = 0.0;
  int iterations = 0;
};

// Coefficients c(1..M0) at fixed R by solving the linear collocation system.
std::vector<double> hejhal_coefficients(double r, Parity parity, double Y, int M0, int Q);

// Refines R near r_guess by secant iteration on c_{Y1}(2) - c_{Y2}(2).
HejhalSolution hejhal_solve(double r_guess, Parity parity, const HejhalParams& params = {});

struct ExtensionReport {
  std::vector<double> lambda;   // lambda[n-1], n = 1..N
  double max_composite_defect = 0.0;   // direct vs multiplicative, sampled
  int composites_checked = 0;
};

// Prime coefficients up to N by Fourier inversion on low horocycles,
// composites by Hecke multiplicativity.
ExtensionReport extend_coefficients(const HejhalSolution& sol, int N, int jobs = 1);

}  // namespace geod::lfunc
