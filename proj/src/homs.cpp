#include "bsl/homs.hpp"

#include "bsl/error.hpp"

namespace bsl {

namespace {

int quotient_pow(const AbelQuotient& q, int id, long long k) {
  int step = k >= 0 ? id : q.inverse(id);
  int acc = 0;
  for (long long i = 0; i < std::llabs(k); ++i) acc = q.mul(acc, step);
  return acc;
}

}  // namespace

ThetaHom::ThetaHom(const AmalgamFamily& fam)
    : fam_(&fam), q0_(fam.gamma(0).abelianization()), q1_(fam.gamma(1).abelianization()) {}

ThetaValue ThetaHom::mul(const ThetaValue& x, const ThetaValue& y) const {
  return {q0_.mul(x.a0, y.a0), q1_.mul(x.a1, y.a1)};
}

ThetaValue ThetaHom::value_of(const std::vector<Token>& tokens) const {
  ThetaValue acc;
  for (const Token& tok : tokens) {
    ThetaValue v;
    if (const auto* g = std::get_if<TokAmalgamG>(&tok.atom)) {
      const AbelQuotient& q = g->j == 0 ? q0_ : q1_;
      int id = quotient_pow(q, q.project(g->sigma), tok.power);
      v = g->j == 0 ? ThetaValue{id, 0} : ThetaValue{0, id};
    } else if (const auto* h = std::get_if<TokAmalgamH>(&tok.atom)) {
      int parity = (h->j + static_cast<int>(h->path.size())) % 2;
      const AbelQuotient& q = parity == 0 ? q0_ : q1_;
      int id = quotient_pow(q, q.project(h->sigma), tok.power);
      v = parity == 0 ? ThetaValue{id, 0} : ThetaValue{0, id};
    } else {
      fail(ErrorKind::Domain, "token outside the amalgam family");
    }
    acc = mul(acc, v);
  }
  return acc;
}

ThetaValue ThetaHom::value_of_word(const AmalgamWord<AmalgamOracle>& w) const {
  std::vector<Token> tokens;
  for (const AmalgamSyllable& s : w.syllables)
    tokens.push_back({TokAmalgamG{s.side, fam_->transversal(s.side).at(s.rep)}, 1});
  for (Token& t : portrait_to_tokens(*fam_, w.tail)) tokens.push_back(std::move(t));
  return value_of(tokens);
}

EtaHom::EtaHom(const HnnFamily& fam)
    : fam_(&fam), qm_(fam.sigma(-1).abelianization()), qp_(fam.sigma(1).abelianization()) {}

EtaLabel EtaHom::project(const GammaElem& g) const { return {qm_.project(g.sm), qp_.project(g.sp)}; }

EtaLabel EtaHom::label_mul(const EtaLabel& a, const EtaLabel& b) const {
  return {qm_.mul(a.m, b.m), qp_.mul(a.p, b.p)};
}

EtaLabel EtaHom::label_inv(const EtaLabel& a) const { return {qm_.inverse(a.m), qp_.inverse(a.p)}; }

EtaLabel EtaHom::label_pow(const EtaLabel& a, long long k) const {
  EtaLabel step = k >= 0 ? a : label_inv(a);
  EtaLabel acc;
  for (long long i = 0; i < std::llabs(k); ++i) acc = label_mul(acc, step);
  return acc;
}

WreathZElem EtaHom::mul(const WreathZElem& x, const WreathZElem& y) const {
  // (f, m)(f', m') = (k -> f(k) + f'(k - m), m + m')
  WreathZElem out;
  out.shift = x.shift + y.shift;
  out.labels = x.labels;
  for (const auto& [pos, lab] : y.labels) {
    long long k = pos + x.shift;
    EtaLabel combined = label_mul(out.labels.count(k) ? out.labels[k] : EtaLabel{}, lab);
    if (combined == EtaLabel{})
      out.labels.erase(k);
    else
      out.labels[k] = combined;
  }
  return out;
}

WreathZElem EtaHom::inverse(const WreathZElem& x) const {
  WreathZElem out;
  out.shift = -x.shift;
  for (const auto& [pos, lab] : x.labels) out.labels[pos - x.shift] = label_inv(lab);
  return out;
}

WreathZElem EtaHom::value_of(const std::vector<Token>& tokens) const {
  WreathZElem acc;
  for (const Token& tok : tokens) {
    WreathZElem v;
    if (std::holds_alternative<TokTau>(tok.atom)) {
      v.shift = tok.power;
    } else if (const auto* t = std::get_if<TokHnnTop>(&tok.atom)) {
      EtaLabel lab = label_pow(project(t->sigma), tok.power);
      if (!(lab == EtaLabel{})) v.labels[0] = lab;
    } else if (const auto* p = std::get_if<TokHnnPath>(&tok.atom)) {
      long long pos = 0;
      for (const HnnStep& s : p->path) pos += s.eps;
      EtaLabel lab = label_pow(project(p->sigma), tok.power);
      if (!(lab == EtaLabel{})) v.labels[pos] = lab;
    } else {
      fail(ErrorKind::Domain, "token outside the HNN family");
    }
    acc = mul(acc, v);
  }
  return acc;
}

WreathZElem EtaHom::value_of_word(const HnnWord<HnnOracle>& w) const {
  std::vector<Token> tokens;
  for (const HnnSyllable& s : w.syllables) {
    if (s.rep != 0) {
      GammaElem rep = fam_->gamma_from_sigma(-s.eps, fam_->sigma(-s.eps).transversal(0).at(s.rep));
      tokens.push_back({TokHnnTop{rep}, 1});
    }
    tokens.push_back({TokTau{}, s.eps});
  }
  for (Token& t : hnn_portrait_to_tokens(*fam_, w.tail)) tokens.push_back(std::move(t));
  return value_of(tokens);
}

}  // namespace bsl
