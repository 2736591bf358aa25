#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace geod::arith {

using i64 = std::int64_t;
using i128 = __int128;

i64 gcd(i64 a, i64 b);
i64 mod(i64 a, i64 m);              // representative in [0, m)
i64 isqrt(i64 n);                   // floor(sqrt(n)) for n >= 0
i64 isqrt(i128 n);
bool is_square(i64 n);
bool is_squarefree(i64 n);
bool is_fundamental_discriminant(i64 D);  // positive, non-square
int kronecker(i64 D, i64 m);        // Kronecker symbol (D/m), m >= 1

std::vector<int> primes_up_to(int n);
std::vector<std::pair<i64, int>> factor(i64 n);

// Fills lambda(n) for composite n from prime values lambda(p) using
// lambda(p^{k+1}) = lambda(p) lambda(p^k) - lambda(p^{k-1}) and coprime
// multiplicativity. lambda[0] must be 1; entries at primes are inputs.
void fill_hecke_multiplicative(std::vector<double>& lambda);

}  // namespace geod::arith
