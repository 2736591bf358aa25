#include "geod/forms.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>

#include "geod/arith.hpp"

namespace geod::quadfield {

using arith::i128;

bool is_primitive(const QuadraticForm& q) { return arith::gcd(arith::gcd(q.a, q.b), q.c) == 1; }

bool is_reduced(const QuadraticForm& q) {
  const i64 D = q.discriminant();
  if (D <= 0 || arith::is_square(D)) return false;
  const i64 r = arith::isqrt(D);
  const i64 a2 = 2 * std::abs(q.a);
  return q.b > 0 && q.b <= r && a2 >= r + 1 - q.b && a2 <= r + q.b;
}

QuadraticForm rho(const QuadraticForm& q) {
  const i64 D = q.discriminant();
  const i64 r = arith::isqrt(D);
  const i64 c = q.c;
  if (c == 0) throw std::invalid_argument("rho: degenerate form");
  const i64 m = 2 * std::abs(c);
  i64 lo = std::abs(c) <= r ? r + 1 - m : -std::abs(c) + 1;
  // b' = -b mod 2|c|, b' in [lo, lo + m)
  i64 bp = lo + arith::mod(-q.b - lo, m);
  i128 num = static_cast<i128>(bp) * bp - D;
  if (num % (4 * static_cast<i128>(c)) != 0) throw std::logic_error("rho: non-integral coefficient");
  return QuadraticForm{c, bp, static_cast<i64>(num / (4 * static_cast<i128>(c)))};
}

QuadraticForm reduce(const QuadraticForm& q) {
  QuadraticForm f = q;
  for (int guard = 0; guard < 100000; ++guard) {
    if (is_reduced(f)) return f;
    f = rho(f);
  }
  throw std::runtime_error("reduce: no reduced form reached");
}

std::vector<QuadraticForm> reduced_forms(i64 D) {
  std::vector<QuadraticForm> out;
  const i64 r = arith::isqrt(D);
  for (i64 b = 1; b <= r; ++b) {
    if (arith::mod(b - D, 2) != 0) continue;
    const i64 num = b * b - D;
    for (i64 a2 = r + 1 - b; a2 <= r + b; ++a2) {
      if (a2 % 2 != 0 || a2 <= 0) continue;
      const i64 a = a2 / 2;
      if (num % (4 * a) != 0) continue;
      for (i64 s : {1, -1}) {
        QuadraticForm q{s * a, b, num / (4 * s * a)};
        if (is_primitive(q)) out.push_back(q);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<QuadraticForm> cycle_of(const QuadraticForm& reduced) {
  std::vector<QuadraticForm> out{reduced};
  QuadraticForm f = rho(reduced);
  while (f != reduced) {
    out.push_back(f);
    if (out.size() > 1000000) throw std::runtime_error("cycle_of: cycle too long");
    f = rho(f);
  }
  return out;
}

namespace {

i64 ext_gcd(i64 a, i64 b, i64& u, i64& v) {
  i64 u0 = 1, v0 = 0, u1 = 0, v1 = 1;
  while (b != 0) {
    i64 q = a / b;
    i64 t = a - q * b;
    a = b;
    b = t;
    t = u0 - q * u1;
    u0 = u1;
    u1 = t;
    t = v0 - q * v1;
    v0 = v1;
    v1 = t;
  }
  if (a < 0) {
    a = -a;
    u0 = -u0;
    v0 = -v0;
  }
  u = u0;
  v = v0;
  return a;
}

}  // namespace

QuadraticForm compose(const QuadraticForm& f, const QuadraticForm& g) {
  const i64 D = f.discriminant();
  if (g.discriminant() != D) throw std::invalid_argument("compose: discriminants differ");
  if (f.a <= 0 || g.a <= 0) throw std::invalid_argument("compose: leading coefficients must be positive");
  const i64 a1 = f.a, a2 = g.a, b1 = f.b, b2 = g.b;
  const i64 s = (b1 + b2) / 2;
  i64 u, v, w, r;
  i64 e1 = ext_gcd(a1, a2, u, v);
  i64 e = ext_gcd(e1, s, w, r);
  i128 p = static_cast<i128>(w) * u, q = static_cast<i128>(w) * v;
  i64 A = a1 / e * (a2 / e);
  i128 num = p * a1 * b2 + q * a2 * b1 + static_cast<i128>(r) * ((static_cast<i128>(b1) * b2 + D) / 2);
  if (num % e != 0) throw std::logic_error("compose: non-integral middle coefficient");
  i128 m2 = 2 * static_cast<i128>(A);
  i128 B = (num / e) % m2;
  if (B < 0) B += m2;
  i128 C = (B * B - D);
  if (C % (4 * static_cast<i128>(A)) != 0) throw std::logic_error("compose: B^2 != D mod 4A");
  return QuadraticForm{A, static_cast<i64>(B), static_cast<i64>(C / (4 * static_cast<i128>(A)))};
}

QuadraticForm form_of_ideal(i64 D, const IdealRep& I) {
  i128 num = static_cast<i128>(I.b) * I.b - D;
  return QuadraticForm{I.n0, I.b, static_cast<i64>(num / (4 * static_cast<i128>(I.n0)))};
}

IdealRep ideal_of_form(i64 D, const QuadraticForm& q) {
  if (q.a <= 0) throw std::invalid_argument("ideal_of_form: needs a > 0");
  return normalize_ideal(D, 1, q.a, q.b);
}

int NarrowClassGroup::class_of_form(const QuadraticForm& q) const {
  auto it = cycle_index.find(reduce(q));
  if (it == cycle_index.end()) throw std::logic_error("class_of_form: reduced form not in any cycle");
  return it->second;
}

int NarrowClassGroup::class_of_ideal(const IdealRep& I) const { return class_of_form(form_of_ideal(D, I)); }

int NarrowClassGroup::inverse(int cls) const {
  for (int j = 0; j < h(); ++j)
    if (table[cls][j] == 0) return j;
  throw std::logic_error("inverse: class has no inverse");
}

int NarrowClassGroup::power(int cls, int k) const {
  int n = h();
  int e = ((k % n) + n) % n;
  int out = 0;
  for (int i = 0; i < e; ++i) out = table[out][cls];
  return out;
}

int NarrowClassGroup::class_of_exponents(const std::vector<int>& t) const {
  int out = 0;
  for (std::size_t i = 0; i < generators.size(); ++i) out = table[out][power(generators[i], t[i])];
  return out;
}

namespace {

std::vector<int> cyclic_subgroup(const NarrowClassGroup& G, int g) {
  std::vector<int> out{0};
  int x = g;
  while (x != 0) {
    out.push_back(x);
    x = G.table[x][g];
  }
  return out;
}

void for_each_exponent(const std::vector<int>& orders, const std::function<bool(const std::vector<int>&)>& fn) {
  std::vector<int> t(orders.size(), 0);
  for (;;) {
    if (!fn(t)) return;
    std::size_t i = 0;
    while (i < t.size()) {
      if (++t[i] < orders[i]) break;
      t[i] = 0;
      ++i;
    }
    if (i == t.size()) return;
  }
}

}  // namespace

NarrowClassGroup narrow_class_group(i64 D) {
  Discriminant check(D);
  NarrowClassGroup G;
  G.D = D;
  const auto forms = reduced_forms(D);
  std::set<QuadraticForm> seen;
  std::vector<std::vector<QuadraticForm>> cycles;
  for (const auto& q : forms) {
    if (seen.count(q)) continue;
    auto cyc = cycle_of(q);
    for (const auto& f : cyc) seen.insert(f);
    cycles.push_back(std::move(cyc));
  }
  const i64 b0 = arith::mod(D, 2);
  const QuadraticForm principal = reduce(QuadraticForm{1, b0, (b0 * b0 - D) / 4});

  struct Entry {
    QuadraticForm rep;
    bool principal;
    const std::vector<QuadraticForm>* cycle;
  };
  std::vector<Entry> entries;
  for (const auto& cyc : cycles) {
    QuadraticForm rep{};
    bool have = false;
    for (const auto& f : cyc)
      if (f.a > 0 && (!have || f < rep)) {
        rep = f;
        have = true;
      }
    if (!have) throw std::logic_error("narrow_class_group: cycle without positive leading coefficient");
    bool is_principal = std::find(cyc.begin(), cyc.end(), principal) != cyc.end();
    entries.push_back({rep, is_principal, &cyc});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    if (x.principal != y.principal) return x.principal;
    return x.rep < y.rep;
  });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    G.representatives.push_back(entries[i].rep);
    for (const auto& f : *entries[i].cycle) G.cycle_index[f] = static_cast<int>(i);
  }
  const int h = G.h();
  G.table.assign(h, std::vector<int>(h, 0));
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < h; ++j) G.table[i][j] = G.class_of_form(compose(G.representatives[i], G.representatives[j]));

  // Greedy cyclic decomposition: largest order first, trivial intersection
  // with what is already generated.
  std::vector<char> in_sub(h, 0);
  in_sub[0] = 1;
  int sub_size = 1;
  while (sub_size < h) {
    int best = -1;
    std::size_t best_order = 0;
    for (int g = 1; g < h; ++g) {
      if (in_sub[g]) continue;
      auto cyc = cyclic_subgroup(G, g);
      bool trivial = true;
      for (std::size_t k = 1; k < cyc.size(); ++k)
        if (in_sub[cyc[k]]) trivial = false;
      if (trivial && cyc.size() > best_order) {
        best = g;
        best_order = cyc.size();
      }
    }
    if (best < 0) throw std::logic_error("narrow_class_group: cyclic decomposition failed");
    auto cyc = cyclic_subgroup(G, best);
    std::vector<char> next = in_sub;
    for (int x = 0; x < h; ++x)
      if (in_sub[x])
        for (int y : cyc) next[G.table[x][y]] = 1;
    in_sub = next;
    sub_size = static_cast<int>(std::count(in_sub.begin(), in_sub.end(), 1));
    G.generators.push_back(best);
    G.orders.push_back(static_cast<int>(best_order));
  }
  long prod = 1;
  for (int o : G.orders) prod *= o;
  if (prod != h) throw std::logic_error("narrow_class_group: orders do not multiply to h+");
  for (int g : G.generators) G.generator_ideals.push_back(ideal_of_form(D, G.representatives[g]));

  G.exponents.assign(h, {});
  for_each_exponent(G.orders, [&](const std::vector<int>& t) {
    int c = G.class_of_exponents(t);
    if (!G.exponents[c].empty() || (c == 0 && std::any_of(t.begin(), t.end(), [](int v) { return v != 0; })))
      throw std::logic_error("narrow_class_group: exponent map is not a bijection");
    G.exponents[c] = t;
    return true;
  });
  if (h == 1) G.exponents[0] = {};
  return G;
}

std::vector<int> ideal_class_index(const IdealRep& I, const NarrowClassGroup& G) {
  const int c = G.class_of_ideal(I);
  std::vector<int> found;
  bool ok = false;
  for_each_exponent(G.orders, [&](const std::vector<int>& t) {
    int x = c;
    for (std::size_t i = 0; i < t.size(); ++i) x = G.table[x][G.power(G.inverse(G.generators[i]), t[i])];
    if (x == 0) {
      if (ok) throw std::logic_error("ideal_class_index: exponent vector not unique");
      found = t;
      ok = true;
    }
    return true;
  });
  if (!ok) throw std::logic_error("ideal_class_index: inconsistent group data");
  return found;
}

}  // namespace geod::quadfield
