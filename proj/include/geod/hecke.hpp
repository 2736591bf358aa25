#pragma once

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "geod/forms.hpp"

namespace geod::hecke {

using quadfield::i64;
using quadfield::IdealRep;
using quadfield::NarrowClassGroup;
using quadfield::QuadField;
using cplx = std::complex<double>;

struct ClassCharacter {
  std::vector<int> e;  // exponents relative to the generators J_i
  auto operator<=>(const ClassCharacter&) const = default;
};

std::vector<ClassCharacter> all_class_characters(const NarrowClassGroup& G);
ClassCharacter inverse(const ClassCharacter& psi, const NarrowClassGroup& G);
bool is_trivial(const ClassCharacter& psi);
// 2 pi * sum e_i t_i / h_i reduced to [0, 1) turns, as a fraction of a full turn
double class_character_turns(const ClassCharacter& psi, const NarrowClassGroup& G, const std::vector<int>& t);
cplx eval_class_character(const ClassCharacter& psi, const NarrowClassGroup& G, int cls);

struct HeckeCharacter {
  ClassCharacter psi;
  i64 n = 0;
};

// Field, class group and the archimedean data attached to the chosen
// generators. Immutable after construction.
class HeckeField {
 public:
  explicit HeckeField(i64 D);

  const QuadField& field() const { return K_; }
  const NarrowClassGroup& group() const { return G_; }
  i64 D() const { return K_.D(); }
  int h() const { return G_.h(); }
  // log|g_i/g_i*| for the fundamental-domain generator g_i of J_i^{h_i}
  const std::vector<Real>& generator_log_ratios() const { return gen_log_ratio_; }
  double spectral_r(i64 n) const;  // pi n / log eps

  struct IdealData {
    IdealRep ideal;
    std::vector<int> t;        // class index
    quadfield::FieldElement y;  // generator of I * prod conj(J_i)^{t_i} in F_D
    Real archimedean;          // log|y/y*| + sum t_i log|g_i/g_i*| / h_i
  };
  IdealData ideal_data(const IdealRep& I) const;

  // Phase of chi_{psi,n}(I) in turns, computed at working precision and
  // reduced to [0,1).
  Real phase_turns(const HeckeCharacter& chi, const IdealData& data) const;

 private:
  QuadField K_;
  NarrowClassGroup G_;
  std::vector<Real> gen_log_ratio_;
};

cplx eval_hecke_character(const HeckeField& F, const HeckeCharacter& chi, const IdealRep& I);

// |x/x*|^{pi i n / log eps} as a phase in turns (working precision).
Real archimedean_turns(const QuadField& K, quadfield::FieldElement x, i64 n);

enum class ThetaVariant { plain, sign_weighted };

// Ideals of norm 1..M with their class and archimedean data; shared by all
// characters of the field.
class IdealTable {
 public:
  IdealTable(const HeckeField& F, i64 M);
  i64 size() const { return M_; }
  const std::vector<HeckeField::IdealData>& of_norm(i64 m) const { return rows_.at(m - 1); }

 private:
  i64 M_;
  std::vector<std::vector<HeckeField::IdealData>> rows_;
};

struct ThetaCoefficients {
  HeckeCharacter chi;
  ThetaVariant variant = ThetaVariant::plain;
  std::vector<cplx> sums;  // sums[m-1] = sum over ideals of norm m of chi
  cplx operator()(i64 m) const;  // m != 0, |m| <= M
  i64 size() const { return static_cast<i64>(sums.size()); }
};

ThetaCoefficients theta_table(const HeckeField& F, const IdealTable& T, const HeckeCharacter& chi, ThetaVariant v);
cplx theta_coefficient(const HeckeField& F, const HeckeCharacter& chi, ThetaVariant v, i64 m);

// Tables keyed by (D, psi, n, variant), grown on demand. Thread-safe.
class ThetaCache {
 public:
  std::shared_ptr<const ThetaCoefficients> get(const HeckeField& F, const HeckeCharacter& chi, ThetaVariant v, i64 M);

 private:
  std::mutex mu_;
  std::map<std::tuple<i64, std::vector<int>, i64, int>, std::shared_ptr<const ThetaCoefficients>> tables_;
  std::map<i64, std::shared_ptr<const IdealTable>> ideals_;
};

// Sum of psi([I]) over all class characters: h+ or 0.
double character_orthogonality_sum(const HeckeField& F, const IdealRep& I);

}  // namespace geod::hecke
