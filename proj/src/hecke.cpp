#include "geod/hecke.hpp"

#include <cmath>
#include <stdexcept>

#include "geod/parallel.hpp"

namespace geod::hecke {

using quadfield::FieldElement;

namespace {
constexpr long double kTwoPiL = 6.283185307179586476925286766559005768L;
}

std::vector<ClassCharacter> all_class_characters(const NarrowClassGroup& G) {
  std::vector<ClassCharacter> out;
  std::vector<int> e(G.orders.size(), 0);
  for (;;) {
    out.push_back(ClassCharacter{e});
    std::size_t i = 0;
    while (i < e.size()) {
      if (++e[i] < G.orders[i]) break;
      e[i] = 0;
      ++i;
    }
    if (i == e.size()) break;
  }
  return out;
}

ClassCharacter inverse(const ClassCharacter& psi, const NarrowClassGroup& G) {
  ClassCharacter out = psi;
  for (std::size_t i = 0; i < out.e.size(); ++i) out.e[i] = (G.orders[i] - out.e[i]) % G.orders[i];
  return out;
}

bool is_trivial(const ClassCharacter& psi) {
  for (int v : psi.e)
    if (v != 0) return false;
  return true;
}

double class_character_turns(const ClassCharacter& psi, const NarrowClassGroup& G, const std::vector<int>& t) {
  if (psi.e.size() != G.orders.size() || t.size() != G.orders.size())
    throw std::invalid_argument("class character does not match the class group");
  // common denominator keeps this exact
  long den = 1;
  for (int o : G.orders) den *= o;
  long num = 0;
  for (std::size_t i = 0; i < t.size(); ++i) num += static_cast<long>(psi.e[i]) * t[i] * (den / G.orders[i]);
  num %= den;
  if (num < 0) num += den;
  return static_cast<double>(num) / static_cast<double>(den);
}

cplx eval_class_character(const ClassCharacter& psi, const NarrowClassGroup& G, int cls) {
  double turns = class_character_turns(psi, G, G.exponents.at(cls));
  if (turns == 0.0) return 1.0;
  if (turns == 0.5) return -1.0;
  return std::polar(1.0, 2 * M_PI * turns);
}

HeckeField::HeckeField(i64 D) : K_(D), G_(quadfield::narrow_class_group(D)) {
  for (std::size_t i = 0; i < G_.generators.size(); ++i) {
    IdealRep J = G_.generator_ideals[i];
    IdealRep P = quadfield::unit_ideal(D);
    for (int k = 0; k < G_.orders[i]; ++k) P = quadfield::multiply(D, P, J);
    FieldElement g = quadfield::totally_positive_generator(K_, P);
    gen_log_ratio_.push_back(K_.log_abs_ratio(g));
  }
}

double HeckeField::spectral_r(i64 n) const { return M_PI * static_cast<double>(n) / K_.unit().log_eps_d; }

HeckeField::IdealData HeckeField::ideal_data(const IdealRep& I) const {
  IdealData out;
  out.ideal = I;
  out.t = quadfield::ideal_class_index(I, G_);
  IdealRep P = I;
  for (std::size_t i = 0; i < out.t.size(); ++i) {
    IdealRep Jc = quadfield::conjugate(K_.D(), G_.generator_ideals[i]);
    for (int k = 0; k < out.t[i]; ++k) P = quadfield::multiply(K_.D(), P, Jc);
  }
  out.y = quadfield::totally_positive_generator(K_, P);
  out.archimedean = K_.log_abs_ratio(out.y);
  for (std::size_t i = 0; i < out.t.size(); ++i)
    out.archimedean += Real(out.t[i]) * gen_log_ratio_[i] / Real(G_.orders[i]);
  return out;
}

namespace {

Real frac(const Real& x) { return x - floor(x); }

}  // namespace

Real HeckeField::phase_turns(const HeckeCharacter& chi, const IdealData& data) const {
  Real arch = Real(chi.n) * data.archimedean / (2 * K_.unit().log_eps);
  return frac(arch + Real(class_character_turns(chi.psi, G_, data.t)));
}

Real archimedean_turns(const QuadField& K, FieldElement x, i64 n) {
  return frac(Real(n) * K.log_abs_ratio(x) / (2 * K.unit().log_eps));
}

namespace {

cplx unit_from_turns(const Real& turns) {
  // reduce to (-1/2, 1/2] before leaving working precision
  Real t = turns;
  if (t > Real(0.5)) t -= 1;
  long double a = kTwoPiL * static_cast<long double>(t);
  return cplx(static_cast<double>(std::cos(a)), static_cast<double>(std::sin(a)));
}

}  // namespace

cplx eval_hecke_character(const HeckeField& F, const HeckeCharacter& chi, const IdealRep& I) {
  return unit_from_turns(F.phase_turns(chi, F.ideal_data(I)));
}

IdealTable::IdealTable(const HeckeField& F, i64 M) : M_(M), rows_(static_cast<std::size_t>(M)) {
  if (M < 1) throw std::invalid_argument("IdealTable: M must be positive");
  parallel_for(static_cast<std::size_t>(M), 1, [&](std::size_t i) {
    for (const auto& I : quadfield::ideals_of_norm(F.D(), static_cast<i64>(i) + 1)) rows_[i].push_back(F.ideal_data(I));
  });
}

cplx ThetaCoefficients::operator()(i64 m) const {
  if (m == 0) throw std::invalid_argument("theta coefficient at 0");
  i64 a = m < 0 ? -m : m;
  if (a > size()) throw std::out_of_range("theta coefficient beyond the table");
  cplx s = sums[static_cast<std::size_t>(a - 1)];
  if (variant == ThetaVariant::plain) return 0.5 * s;
  // sgn(m) / (2i) * s
  return (m > 0 ? 1.0 : -1.0) * s / cplx(0.0, 2.0);
}

ThetaCoefficients theta_table(const HeckeField& F, const IdealTable& T, const HeckeCharacter& chi, ThetaVariant v) {
  ThetaCoefficients out;
  out.chi = chi;
  out.variant = v;
  out.sums.resize(static_cast<std::size_t>(T.size()));
  for (i64 m = 1; m <= T.size(); ++m) {
    long double re = 0, im = 0;
    for (const auto& d : T.of_norm(m)) {
      Real t = F.phase_turns(chi, d);
      if (t > Real(0.5)) t -= 1;
      long double a = kTwoPiL * static_cast<long double>(t);
      re += std::cos(a);
      im += std::sin(a);
    }
    out.sums[static_cast<std::size_t>(m - 1)] = cplx(static_cast<double>(re), static_cast<double>(im));
  }
  return out;
}

cplx theta_coefficient(const HeckeField& F, const HeckeCharacter& chi, ThetaVariant v, i64 m) {
  if (m == 0) throw std::invalid_argument("theta_coefficient: m must be nonzero");
  const i64 a = m < 0 ? -m : m;
  long double re = 0, im = 0;
  for (const auto& I : quadfield::ideals_of_norm(F.D(), a)) {
    Real t = F.phase_turns(chi, F.ideal_data(I));
    if (t > Real(0.5)) t -= 1;
    long double ang = kTwoPiL * static_cast<long double>(t);
    re += std::cos(ang);
    im += std::sin(ang);
  }
  ThetaCoefficients one;
  one.chi = chi;
  one.variant = v;
  one.sums.assign(static_cast<std::size_t>(a), cplx(0.0));
  one.sums.back() = cplx(static_cast<double>(re), static_cast<double>(im));
  return one(m);
}

std::shared_ptr<const ThetaCoefficients> ThetaCache::get(const HeckeField& F, const HeckeCharacter& chi, ThetaVariant v,
                                                         i64 M) {
  std::lock_guard<std::mutex> lock(mu_);
  auto key = std::make_tuple(F.D(), chi.psi.e, chi.n, static_cast<int>(v));
  auto it = tables_.find(key);
  if (it != tables_.end() && it->second->size() >= M) return it->second;
  auto& ideals = ideals_[F.D()];
  if (!ideals || ideals->size() < M) ideals = std::make_shared<const IdealTable>(F, M);
  auto table = std::make_shared<const ThetaCoefficients>(theta_table(F, *ideals, chi, v));
  tables_[key] = table;
  return table;
}

double character_orthogonality_sum(const HeckeField& F, const IdealRep& I) {
  const auto t = quadfield::ideal_class_index(I, F.group());
  long double s = 0;
  for (const auto& psi : all_class_characters(F.group())) {
    long double a = kTwoPiL * class_character_turns(psi, F.group(), t);
    s += std::cos(a);
  }
  return static_cast<double>(s);
}

}  // namespace geod::hecke
