#include "geod/arith.hpp"

#include <cmath>
#include <stdexcept>

namespace geod::arith {

i64 gcd(i64 a, i64 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i64 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

i64 isqrt(i128 n) {
  if (n < 0) throw std::domain_error("isqrt of negative");
  i128 r = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return static_cast<i64>(r);
}

i64 isqrt(i64 n) { return isqrt(static_cast<i128>(n)); }

bool is_square(i64 n) {
  if (n < 0) return false;
  i64 r = isqrt(n);
  return r * r == n;
}

bool is_squarefree(i64 n) {
  if (n < 0) n = -n;
  if (n == 0) return false;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return false;
    }
  }
  return true;
}

bool is_fundamental_discriminant(i64 D) {
  if (D <= 1 || is_square(D)) return false;
  if (mod(D, 4) == 1) return is_squarefree(D);
  if (mod(D, 4) != 0) return false;
  i64 m = D / 4;
  i64 r = mod(m, 4);
  return (r == 2 || r == 3) && is_squarefree(m);
}

int kronecker(i64 D, i64 m) {
  if (m <= 0) throw std::domain_error("kronecker: m must be positive");
  int result = 1;
  while (m % 2 == 0) {
    m /= 2;
    i64 r = mod(D, 8);
    if (r % 2 == 0) return 0;
    if (r == 3 || r == 5) result = -result;
  }
  // Jacobi symbol (D/m) for odd m.
  i64 a = mod(D, m);
  i64 n = m;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      i64 r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

std::vector<int> primes_up_to(int n) {
  std::vector<int> out;
  if (n < 2) return out;
  std::vector<char> composite(static_cast<std::size_t>(n) + 1, 0);
  for (int p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    for (long long q = static_cast<long long>(p) * p; q <= n; q += p) composite[q] = 1;
  }
  return out;
}

std::vector<std::pair<i64, int>> factor(i64 n) {
  std::vector<std::pair<i64, int>> out;
  if (n < 0) n = -n;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

void fill_hecke_multiplicative(std::vector<double>& lambda) {
  const std::size_t N = lambda.size();
  if (N == 0) return;
  std::vector<std::size_t> spf(N + 1, 0);
  for (std::size_t p = 2; p <= N; ++p) {
    if (spf[p] != 0) continue;
    for (std::size_t q = p; q <= N; q += p)
      if (spf[q] == 0) spf[q] = p;
  }
  lambda[0] = 1.0;
  for (std::size_t n = 2; n <= N; ++n) {
    std::size_t p = spf[n];
    if (p == n) continue;
    std::size_t pk = 1;
    std::size_t m = n;
    while (m % p == 0) {
      m /= p;
      pk *= p;
    }
    if (m > 1) {
      lambda[n - 1] = lambda[pk - 1] * lambda[m - 1];
    } else {
      lambda[n - 1] = lambda[p - 1] * lambda[n / p - 1] - lambda[n / (p * p) - 1];
    }
  }
}

}  // namespace geod::arith
