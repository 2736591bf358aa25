#include "geod/hejhal.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "geod/arith.hpp"
#include "geod/bessel.hpp"
#include "geod/parallel.hpp"

namespace geod::lfunc {

using restriction::bessel_K_imag_scaled;

std::string to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

Parity parity_from_string(const std::string& s) {
  if (s == "even") return Parity::even;
  if (s == "odd") return Parity::odd;
  throw std::invalid_argument("parity must be 'even' or 'odd', got '" + s + "'");
}

namespace {

constexpr double kPi = std::numbers::pi;

struct Point {
  double x;
  double y;
};

// Pullback to the standard fundamental domain of SL2(Z).
Point pullback(double x, double y) {
  for (int guard = 0; guard < 10000; ++guard) {
    x -= std::nearbyint(x);
    double r2 = x * x + y * y;
    if (r2 >= 1.0 - 1e-14) return {x, y};
    x = -x / r2;
    y = y / r2;
  }
  throw std::runtime_error("pullback did not terminate");
}

double trig(Parity p, double arg) { return p == Parity::even ? std::cos(arg) : std::sin(arg); }

int auto_M0(double r, double Y) {
  return static_cast<int>(std::ceil((0.5 * kPi * r + 38.0) / (2.0 * kPi * Y)));
}

// Terms needed to evaluate the expansion at Im z >= sqrt(3)/2.
int terms_in_domain(double r) {
  return static_cast<int>(std::ceil((0.5 * kPi * r + 40.0) / (2.0 * kPi * 0.8660254037844386)));
}

double coefficient_two(double r, Parity parity, double Y) {
  int M0 = auto_M0(r, Y);
  return hejhal_coefficients(r, parity, Y, M0, M0 + 25)[1];
}

}  // namespace

std::vector<double> hejhal_coefficients(double r, Parity parity, double Y, int M0, int Q) {
  if (!(Y > 0.0 && Y < 0.8660254037844386)) throw std::invalid_argument("hejhal: need 0 < Y < sqrt(3)/2");
  if (M0 < 3 || Q <= M0) throw std::invalid_argument("hejhal: need Q > M0 >= 3");
  Eigen::MatrixXd P(Q, M0);
  Eigen::MatrixXd C(Q, M0);
  for (int m = 0; m < Q; ++m) {
    double x = (m + 0.5) / (2.0 * Q);
    Point z = pullback(x, Y);
    double sy = std::sqrt(z.y);
    for (int k = 1; k <= M0; ++k) {
      P(m, k - 1) = sy * bessel_K_imag_scaled(r, 2.0 * kPi * k * z.y) * trig(parity, 2.0 * kPi * k * z.x);
      C(m, k - 1) = trig(parity, 2.0 * kPi * k * x);
    }
  }
  Eigen::MatrixXd V = (2.0 / Q) * C.transpose() * P;
  const double sY = std::sqrt(Y);
  for (int n = 1; n <= M0; ++n) V(n - 1, n - 1) -= sY * bessel_K_imag_scaled(r, 2.0 * kPi * n * Y);
  // c(1) = 1; drop the first equation.
  Eigen::MatrixXd A = V.block(1, 1, M0 - 1, M0 - 1);
  Eigen::VectorXd rhs = -V.block(1, 0, M0 - 1, 1);
  Eigen::VectorXd sol = A.partialPivLu().solve(rhs);
  std::vector<double> c(M0);
  c[0] = 1.0;
  for (int k = 2; k <= M0; ++k) c[k - 1] = sol(k - 2);
  return c;
}

HejhalSolution hejhal_solve(double r_guess, Parity parity, const HejhalParams& params) {
  auto g = [&](double r) {
    return coefficient_two(r, parity, params.Y1) - coefficient_two(r, parity, params.Y2);
  };
  double r0 = r_guess;
  double r1 = r_guess + 1e-4;
  double g0 = g(r0);
  double g1 = g(r1);
  int it = 0;
  for (; it < params.max_iter; ++it) {
    if (g1 == g0) break;
    double r2 = r1 - g1 * (r1 - r0) / (g1 - g0);
    if (std::abs(r2 - r_guess) > 0.5) throw std::runtime_error("hejhal: secant left the search window");
    r0 = r1;
    g0 = g1;
    r1 = r2;
    g1 = g(r1);
    if (std::abs(r1 - r0) < params.r_tol) break;
  }
  HejhalSolution out;
  out.r = r1;
  out.parity = parity;
  out.iterations = it + 1;
  int M1 = auto_M0(r1, params.Y1);
  int M2 = auto_M0(r1, params.Y2);
  auto c1 = hejhal_coefficients(r1, parity, params.Y1, M1, M1 + params.extra_points);
  out.c = hejhal_coefficients(r1, parity, params.Y2, M2, M2 + params.extra_points);
  out.reliable = 1;
  for (int k = 2; k <= M1; ++k) {
    double d = std::abs(c1[k - 1] - out.c[k - 1]);
    if (d > 1e-10) break;
    out.coefficient_spread = std::max(out.coefficient_spread, d);
    out.reliable = k;
  }
  return out;
}

namespace {

struct Block {
  int lo;
  int hi;
  double Y;
  int Q;
  std::vector<double> f;  // f(z_m^*) at x_m = (m + 1/2)/(2Q)
};

double block_coefficient(const Block& b, double r, Parity parity, int n) {
  double s = 0.0;
  for (int m = 0; m < b.Q; ++m) s += b.f[m] * trig(parity, 2.0 * kPi * n * (m + 0.5) / (2.0 * b.Q));
  double A = 2.0 * s / b.Q;
  return A / (std::sqrt(b.Y) * bessel_K_imag_scaled(r, 2.0 * kPi * n * b.Y));
}

}  // namespace

ExtensionReport extend_coefficients(const HejhalSolution& sol, int N, int jobs) {
  const double r = sol.r;
  const Parity parity = sol.parity;
  const int K = terms_in_domain(r);
  if (sol.reliable < K) throw std::runtime_error("extend_coefficients: too few reliable low coefficients");

  ExtensionReport rep;
  rep.lambda.assign(static_cast<std::size_t>(N), 0.0);
  const auto primes = arith::primes_up_to(N);

  // Low block from the collocation solution directly.
  const int start = std::max(5, static_cast<int>(std::ceil(r / kPi)) + 1);
  std::vector<Block> blocks;
  for (int lo = start; lo <= N;) {
    int hi = std::min(N, std::max(lo + 1, static_cast<int>(std::floor(lo * 1.15))));
    Block b;
    b.lo = lo;
    b.hi = hi;
    b.Y = r / (2.0 * kPi * lo);
    b.Q = static_cast<int>(std::ceil(0.5 * (hi + lo * (1.0 + 45.0 / r)))) + 8;
    blocks.push_back(std::move(b));
    lo = hi + 1;
  }

  parallel_for(blocks.size(), jobs, [&](std::size_t i) {
    Block& b = blocks[i];
    b.f.resize(b.Q);
    for (int m = 0; m < b.Q; ++m) {
      Point z = pullback((m + 0.5) / (2.0 * b.Q), b.Y);
      double sy = std::sqrt(z.y);
      double v = 0.0;
      for (int k = 1; k <= K; ++k)
        v += sol.c[k - 1] * sy * bessel_K_imag_scaled(r, 2.0 * kPi * k * z.y) * trig(parity, 2.0 * kPi * k * z.x);
      b.f[m] = v;
    }
  });

  rep.lambda[0] = 1.0;
  for (int p : primes) {
    if (p < start) {
      rep.lambda[p - 1] = sol.c[p - 1];
      continue;
    }
  }
  parallel_for(blocks.size(), jobs, [&](std::size_t i) {
    const Block& b = blocks[i];
    auto it = std::lower_bound(primes.begin(), primes.end(), b.lo);
    for (; it != primes.end() && *it <= b.hi; ++it) rep.lambda[*it - 1] = block_coefficient(b, r, parity, *it);
  });
  arith::fill_hecke_multiplicative(rep.lambda);

  // Spot-check a few composites per block against direct inversion.
  for (const Block& b : blocks) {
    int checked = 0;
    for (int n = b.lo; n <= b.hi && checked < 6; ++n) {
      if (std::binary_search(primes.begin(), primes.end(), n)) continue;
      double direct = block_coefficient(b, r, parity, n);
      rep.max_composite_defect = std::max(rep.max_composite_defect, std::abs(direct - rep.lambda[n - 1]));
      ++checked;
      ++rep.composites_checked;
    }
  }
  return rep;
}

}  // namespace geod::lfunc
