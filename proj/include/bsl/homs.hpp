#pragma once

#include <map>

#include "bsl/tokens.hpp"

namespace bsl {

// Value of θ in (Γ_0/[Γ_0,Γ_0]) × (Γ_1/[Γ_1,Γ_1]), stored as quotient ids.
struct ThetaValue {
  int a0 = 0;
  int a1 = 0;
  friend bool operator==(const ThetaValue&, const ThetaValue&) = default;
};

// θ evaluated generator-by-generator on token strings; portraits re-expand to
// tokens first, so any representative word yields the same value.
class ThetaHom {
 public:
  explicit ThetaHom(const AmalgamFamily& fam);

  ThetaValue value_of(const std::vector<Token>& tokens) const;
  ThetaValue value_of_word(const AmalgamWord<AmalgamOracle>& w) const;
  ThetaValue mul(const ThetaValue& x, const ThetaValue& y) const;
  bool is_identity(const ThetaValue& x) const { return x.a0 == 0 && x.a1 == 0; }
  bool n_member(const std::vector<Token>& tokens) const { return is_identity(value_of(tokens)); }

  const AbelQuotient& quotient(int j) const { return j == 0 ? q0_ : q1_; }

 private:
  const AmalgamFamily* fam_;
  AbelQuotient q0_, q1_;
};

// Label of one position of (Γ/[Γ,Γ]) ≀_Z Z; Γ ≅ Σ_{-1} × Σ_1 so the quotient
// splits into side components.
struct EtaLabel {
  int m = 0;
  int p = 0;
  friend bool operator==(const EtaLabel&, const EtaLabel&) = default;
  friend auto operator<=>(const EtaLabel&, const EtaLabel&) = default;
};

struct WreathZElem {
  long long shift = 0;
  std::map<long long, EtaLabel> labels;  // identity labels pruned
  friend bool operator==(const WreathZElem&, const WreathZElem&) = default;

  bool is_identity() const { return shift == 0 && labels.empty(); }
};

class EtaHom {
 public:
  explicit EtaHom(const HnnFamily& fam);

  WreathZElem value_of(const std::vector<Token>& tokens) const;
  WreathZElem value_of_word(const HnnWord<HnnOracle>& w) const;
  WreathZElem mul(const WreathZElem& x, const WreathZElem& y) const;
  WreathZElem inverse(const WreathZElem& x) const;
  bool xi_member(const std::vector<Token>& tokens) const { return value_of(tokens).is_identity(); }

  const AbelQuotient& quotient(int eps) const { return eps < 0 ? qm_ : qp_; }
  EtaLabel project(const GammaElem& g) const;

 private:
  EtaLabel label_mul(const EtaLabel& a, const EtaLabel& b) const;
  EtaLabel label_inv(const EtaLabel& a) const;
  EtaLabel label_pow(const EtaLabel& a, long long k) const;

  const HnnFamily* fam_;
  AbelQuotient qm_, qp_;
};

}  // namespace bsl
