#pragma once

#include <compare>
#include <concepts>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "bsl/error.hpp"

namespace bsl {

// ---------------------------------------------------------------------------
// Oracle concepts. The engine never inspects base elements; everything flows
// through these operations.
// ---------------------------------------------------------------------------

template <class O>
concept BaseOracle = requires(const O& o, const typename O::Elem& e) {
  { o.identity() } -> std::convertible_to<typename O::Elem>;
  { o.mul(e, e) } -> std::convertible_to<typename O::Elem>;
  { o.inv(e) } -> std::convertible_to<typename O::Elem>;
  { o.is_identity(e) } -> std::convertible_to<bool>;
};

template <class O>
concept AmalgamBaseOracle =
    BaseOracle<O> && requires(const O& o, const typename O::Elem& e, int j, int i) {
      { o.in_h(e) } -> std::convertible_to<bool>;
      { o.side_of(e) } -> std::convertible_to<int>;
      { o.coset_decompose(e) } -> std::convertible_to<std::pair<std::optional<int>, typename O::Elem>>;
      { o.rep(j, i) } -> std::convertible_to<typename O::Elem>;
      { o.rep_ids(j) } -> std::convertible_to<std::vector<int>>;
    };

template <class O>
concept HnnBaseOracle =
    BaseOracle<O> && requires(const O& o, const typename O::Elem& e, int eps, int i) {
      { o.in_h_eps(e, eps) } -> std::convertible_to<bool>;
      { o.coset_decompose_eps(e, eps) } -> std::convertible_to<std::pair<int, typename O::Elem>>;
      { o.rep_eps(eps, i) } -> std::convertible_to<typename O::Elem>;
      { o.rep_ids(eps) } -> std::convertible_to<std::vector<int>>;
      { o.conjugate_by_tau(e, eps) } -> std::convertible_to<typename O::Elem>;
    };

// ---------------------------------------------------------------------------
// Amalgam words: (s_1 ... s_n) . tail with alternating coset-rep syllables
// and the tail in H.
// ---------------------------------------------------------------------------

struct AmalgamSyllable {
  int side = 0;
  int rep = 0;  // nontrivial rep id (never the basepoint)

  friend bool operator==(const AmalgamSyllable&, const AmalgamSyllable&) = default;
  friend auto operator<=>(const AmalgamSyllable&, const AmalgamSyllable&) = default;
};

template <class O>
struct AmalgamWord {
  std::vector<AmalgamSyllable> syllables;
  typename O::Elem tail;

  friend bool operator==(const AmalgamWord&, const AmalgamWord&) = default;
};

template <AmalgamBaseOracle O>
AmalgamWord<O> amalgam_identity_word(const O& o) {
  return {{}, o.identity()};
}

// Right-multiply a normal-form word by one base element.
template <AmalgamBaseOracle O>
void amalgam_push(const O& o, AmalgamWord<O>& w, const typename O::Elem& g) {
  if (o.in_h(g)) {
    w.tail = o.mul(w.tail, g);
    return;
  }
  int j = o.side_of(g);
  typename O::Elem x = o.mul(w.tail, g);
  if (!w.syllables.empty() && w.syllables.back().side == j) {
    x = o.mul(o.rep(j, w.syllables.back().rep), x);
    w.syllables.pop_back();
    if (o.in_h(x)) {
      w.tail = std::move(x);
      return;
    }
  }
  auto [index, remainder] = o.coset_decompose(x);
  if (!index) fail(ErrorKind::OracleContract, "decomposition of a non-H element returned no rep");
  if (!(o.mul(o.rep(j, *index), remainder) == x))
    fail(ErrorKind::OracleContract, "coset decomposition failed to recompose");
  w.syllables.push_back({j, *index});
  w.tail = std::move(remainder);
}

template <AmalgamBaseOracle O>
AmalgamWord<O> amalgam_reduce(const O& o, const std::vector<typename O::Elem>& letters) {
  AmalgamWord<O> w = amalgam_identity_word(o);
  for (const auto& g : letters) amalgam_push(o, w, g);
  return w;
}

template <AmalgamBaseOracle O>
AmalgamWord<O> amalgam_mul(const O& o, const AmalgamWord<O>& a, const AmalgamWord<O>& b) {
  AmalgamWord<O> w = a;
  for (const AmalgamSyllable& s : b.syllables) amalgam_push(o, w, o.rep(s.side, s.rep));
  amalgam_push(o, w, b.tail);
  return w;
}

template <AmalgamBaseOracle O>
AmalgamWord<O> amalgam_inv(const O& o, const AmalgamWord<O>& a) {
  AmalgamWord<O> w = amalgam_identity_word(o);
  amalgam_push(o, w, o.inv(a.tail));
  for (auto it = a.syllables.rbegin(); it != a.syllables.rend(); ++it)
    amalgam_push(o, w, o.inv(o.rep(it->side, it->rep)));
  return w;
}

template <AmalgamBaseOracle O>
bool amalgam_is_identity_word(const O& o, const AmalgamWord<O>& w) {
  return w.syllables.empty() && o.is_identity(w.tail);
}

template <AmalgamBaseOracle O>
AmalgamWord<O> amalgam_word_of(const O& o, const typename O::Elem& g) {
  AmalgamWord<O> w = amalgam_identity_word(o);
  amalgam_push(o, w, g);
  return w;
}

// ---------------------------------------------------------------------------
// HNN words: s_1 t^{e_1} ... s_n t^{e_n} . tail in Britton normal form.
// Rep id 0 stands for the identity coset representative.
// ---------------------------------------------------------------------------

struct HnnSyllable {
  int rep = 0;
  int eps = 1;

  friend bool operator==(const HnnSyllable&, const HnnSyllable&) = default;
  friend auto operator<=>(const HnnSyllable&, const HnnSyllable&) = default;
};

template <class O>
struct HnnWord {
  std::vector<HnnSyllable> syllables;
  typename O::Elem tail;

  friend bool operator==(const HnnWord&, const HnnWord&) = default;
};

// A raw letter is a base element or a tau power (+1 / -1).
template <class O>
using HnnLetter = std::variant<typename O::Elem, int>;

template <HnnBaseOracle O>
HnnWord<O> hnn_identity_word(const O& o) {
  return {{}, o.identity()};
}

template <HnnBaseOracle O>
void hnn_push_elem(const O& o, HnnWord<O>& w, const typename O::Elem& g) {
  w.tail = o.mul(w.tail, g);
}

template <HnnBaseOracle O>
void hnn_push_tau(const O& o, HnnWord<O>& w, int eps) {
  if (eps != 1 && eps != -1) fail(ErrorKind::Domain, "tau power sign must be +1 or -1");
  auto [index, h] = o.coset_decompose_eps(w.tail, -eps);
  if (!(o.mul(o.rep_eps(-eps, index), h) == w.tail))
    fail(ErrorKind::OracleContract, "coset decomposition failed to recompose");
  typename O::Elem moved = o.conjugate_by_tau(h, -eps);
  if (index == 0 && !w.syllables.empty() && w.syllables.back().eps == -eps) {
    HnnSyllable last = w.syllables.back();
    w.syllables.pop_back();
    w.tail = o.mul(o.rep_eps(eps, last.rep), moved);
    return;
  }
  w.syllables.push_back({index, eps});
  w.tail = std::move(moved);
}

template <HnnBaseOracle O>
HnnWord<O> hnn_reduce(const O& o, const std::vector<HnnLetter<O>>& letters) {
  HnnWord<O> w = hnn_identity_word(o);
  for (const auto& letter : letters) {
    if (std::holds_alternative<int>(letter))
      hnn_push_tau(o, w, std::get<int>(letter));
    else
      hnn_push_elem(o, w, std::get<typename O::Elem>(letter));
  }
  return w;
}

template <HnnBaseOracle O>
HnnWord<O> hnn_mul(const O& o, const HnnWord<O>& a, const HnnWord<O>& b) {
  HnnWord<O> w = a;
  for (const HnnSyllable& s : b.syllables) {
    if (s.rep != 0) hnn_push_elem(o, w, o.rep_eps(-s.eps, s.rep));
    hnn_push_tau(o, w, s.eps);
  }
  hnn_push_elem(o, w, b.tail);
  return w;
}

template <HnnBaseOracle O>
HnnWord<O> hnn_inv(const O& o, const HnnWord<O>& a) {
  HnnWord<O> w = hnn_identity_word(o);
  hnn_push_elem(o, w, o.inv(a.tail));
  for (auto it = a.syllables.rbegin(); it != a.syllables.rend(); ++it) {
    hnn_push_tau(o, w, -it->eps);
    if (it->rep != 0) hnn_push_elem(o, w, o.inv(o.rep_eps(-it->eps, it->rep)));
  }
  return w;
}

template <HnnBaseOracle O>
bool hnn_is_identity_word(const O& o, const HnnWord<O>& w) {
  return w.syllables.empty() && o.is_identity(w.tail);
}

template <HnnBaseOracle O>
HnnWord<O> hnn_word_of(const O&, const typename O::Elem& g) {
  return {{}, g};
}

// ---------------------------------------------------------------------------
// Vertices: cosets of the vertex groups, canonicalized as normal-form
// prefixes. The amalgam tree is bipartite on the vertex-group side.
// ---------------------------------------------------------------------------

struct AmalgamVertex {
  std::vector<AmalgamSyllable> prefix;  // last syllable side = 1 - side when nonempty
  int side = 0;

  friend bool operator==(const AmalgamVertex&, const AmalgamVertex&) = default;
  friend auto operator<=>(const AmalgamVertex&, const AmalgamVertex&) = default;
};

struct HnnVertex {
  std::vector<HnnSyllable> prefix;  // Britton normal form

  friend bool operator==(const HnnVertex&, const HnnVertex&) = default;
  friend auto operator<=>(const HnnVertex&, const HnnVertex&) = default;
};

template <AmalgamBaseOracle O>
AmalgamVertex amalgam_act(const O& o, const AmalgamWord<O>& g, const AmalgamVertex& v) {
  AmalgamWord<O> w = g;
  for (const AmalgamSyllable& s : v.prefix) amalgam_push(o, w, o.rep(s.side, s.rep));
  std::vector<AmalgamSyllable> prefix = std::move(w.syllables);
  if (!prefix.empty() && prefix.back().side == v.side) prefix.pop_back();
  return {std::move(prefix), v.side};
}

template <HnnBaseOracle O>
HnnVertex hnn_act(const O& o, const HnnWord<O>& g, const HnnVertex& v) {
  HnnWord<O> w = g;
  for (const HnnSyllable& s : v.prefix) {
    if (s.rep != 0) hnn_push_elem(o, w, o.rep_eps(-s.eps, s.rep));
    hnn_push_tau(o, w, s.eps);
  }
  return {std::move(w.syllables)};
}

// Tree coordinates. Heights are distances to the side-0 root (amalgam) or to
// the base vertex (HNN); parents strip the last syllable.

inline int vertex_height(const AmalgamVertex& v) {
  if (v.prefix.empty()) return v.side == 0 ? 0 : 1;
  return static_cast<int>(v.prefix.size()) + (v.prefix.front().side == 1 ? 1 : 0);
}

inline AmalgamVertex vertex_parent(const AmalgamVertex& v) {
  if (v.prefix.empty()) {
    if (v.side == 0) fail(ErrorKind::Domain, "the side-0 root has no parent");
    return {{}, 0};
  }
  std::vector<AmalgamSyllable> p(v.prefix.begin(), v.prefix.end() - 1);
  return {std::move(p), v.prefix.back().side};
}

inline int vertex_height(const HnnVertex& v) { return static_cast<int>(v.prefix.size()); }

inline HnnVertex vertex_parent(const HnnVertex& v) {
  if (v.prefix.empty()) fail(ErrorKind::Domain, "the base vertex has no parent");
  return {std::vector<HnnSyllable>(v.prefix.begin(), v.prefix.end() - 1)};
}

template <class V>
std::vector<V> geodesic(const V& a, const V& b) {
  std::vector<V> up_a{a}, up_b{b};
  while (vertex_height(up_a.back()) > vertex_height(up_b.back())) up_a.push_back(vertex_parent(up_a.back()));
  while (vertex_height(up_b.back()) > vertex_height(up_a.back())) up_b.push_back(vertex_parent(up_b.back()));
  while (!(up_a.back() == up_b.back())) {
    up_a.push_back(vertex_parent(up_a.back()));
    up_b.push_back(vertex_parent(up_b.back()));
  }
  std::vector<V> path = std::move(up_a);
  for (auto it = up_b.rbegin() + 1; it != up_b.rend(); ++it) path.push_back(*it);
  return path;
}

template <class V>
int tree_distance(const V& a, const V& b) {
  return static_cast<int>(geodesic(a, b).size()) - 1;
}

// ---------------------------------------------------------------------------
// Cyclic reduction and the elliptic/hyperbolic dichotomy. An amalgam word is
// elliptic iff its cyclically reduced core has at most one syllable; an HNN
// word is elliptic iff the core has no tau letters. Both rules are validated
// against bounded fixed-point search in the test suites.
// ---------------------------------------------------------------------------

template <class O, class W, class V>
struct Classification {
  bool hyperbolic = false;
  W conjugator;  // input = conjugator * core * conjugator^{-1}
  W core;
  int translation_length = 0;
  std::optional<V> witness;  // a fixed vertex, when elliptic
};

template <AmalgamBaseOracle O>
using AmalgamClassification = Classification<O, AmalgamWord<O>, AmalgamVertex>;

template <HnnBaseOracle O>
using HnnClassification = Classification<O, HnnWord<O>, HnnVertex>;

template <AmalgamBaseOracle O>
std::pair<AmalgamWord<O>, AmalgamWord<O>> amalgam_cyclic_reduce(const O& o, const AmalgamWord<O>& w) {
  AmalgamWord<O> core = w;
  AmalgamWord<O> conj = amalgam_identity_word(o);
  while (core.syllables.size() >= 2 && core.syllables.front().side == core.syllables.back().side) {
    AmalgamSyllable s = core.syllables.front();
    AmalgamWord<O> rep_word = amalgam_word_of(o, o.rep(s.side, s.rep));
    core = amalgam_mul(o, amalgam_mul(o, amalgam_inv(o, rep_word), core), rep_word);
    conj = amalgam_mul(o, conj, rep_word);
  }
  return {core, conj};
}

template <AmalgamBaseOracle O>
AmalgamClassification<O> amalgam_classify(const O& o, const AmalgamWord<O>& w) {
  auto [core, conj] = amalgam_cyclic_reduce(o, w);
  AmalgamClassification<O> c;
  c.conjugator = conj;
  c.core = core;
  if (core.syllables.size() >= 2) {
    c.hyperbolic = true;
    c.translation_length = static_cast<int>(core.syllables.size());
    return c;
  }
  c.hyperbolic = false;
  int base_side = core.syllables.empty() ? 0 : core.syllables.front().side;
  c.witness = amalgam_act(o, conj, AmalgamVertex{{}, base_side});
  return c;
}

template <HnnBaseOracle O>
std::pair<HnnWord<O>, HnnWord<O>> hnn_cyclic_reduce(const O& o, const HnnWord<O>& w) {
  HnnWord<O> core = w;
  HnnWord<O> conj = hnn_identity_word(o);
  // a full round of rotations without a pinch certifies cyclic reducedness;
  // the plateau snapshot keeps the conjugator minimal in that case
  HnnWord<O> plateau_core = core;
  HnnWord<O> plateau_conj = conj;
  std::size_t stable_rotations = 0;
  while (!core.syllables.empty() && stable_rotations < core.syllables.size()) {
    if (stable_rotations == 0) {
      plateau_core = core;
      plateau_conj = conj;
    }
    std::size_t before = core.syllables.size();
    HnnSyllable s = core.syllables.front();
    HnnWord<O> head = hnn_identity_word(o);
    if (s.rep != 0) hnn_push_elem(o, head, o.rep_eps(-s.eps, s.rep));
    hnn_push_tau(o, head, s.eps);
    core = hnn_mul(o, hnn_mul(o, hnn_inv(o, head), core), head);
    conj = hnn_mul(o, conj, head);
    stable_rotations = core.syllables.size() < before ? 0 : stable_rotations + 1;
  }
  if (!core.syllables.empty()) return {plateau_core, plateau_conj};
  return {core, conj};
}

template <HnnBaseOracle O>
HnnClassification<O> hnn_classify(const O& o, const HnnWord<O>& w) {
  auto [core, conj] = hnn_cyclic_reduce(o, w);
  HnnClassification<O> c;
  c.conjugator = conj;
  c.core = core;
  if (!core.syllables.empty()) {
    c.hyperbolic = true;
    c.translation_length = static_cast<int>(core.syllables.size());
    return c;
  }
  c.hyperbolic = false;
  c.witness = hnn_act(o, conj, HnnVertex{});
  return c;
}

// ---------------------------------------------------------------------------
// Quasi-kernel oracle for HNN families: K_eps as the intersection of the
// conjugates r H r^{-1} over reduced words r outside T_eps† with at most
// max_syllables tau letters (one representative per coset rH). For portraits
// of depth d the intersection stabilizes at d+1 syllables: a sign-flip step
// at the deepest level moves a vertex whose tree edge carries a trailing tau.
// ---------------------------------------------------------------------------

template <HnnBaseOracle O>
class KEpsOracle {
 public:
  KEpsOracle(const O& o, int eps, int max_syllables, int syllable_cap = 3) : o_(&o) {
    if (max_syllables > syllable_cap)
      fail(ErrorKind::Limit, "conjugator syllable length exceeds configured bound");
    // breadth-first by syllable count, so cheap conjugators run first
    std::vector<std::vector<HnnSyllable>> seqs{{}};
    std::size_t level_start = 0;
    for (int len = 1; len <= max_syllables; ++len) {
      std::size_t level_end = seqs.size();
      for (std::size_t k = level_start; k < level_end; ++k) {
        for (int e : {-1, 1}) {
          for (int rep : o.rep_ids(-e)) {
            if (rep == 0 && !seqs[k].empty() && seqs[k].back().eps == -e) continue;
            std::vector<HnnSyllable> q = seqs[k];
            q.push_back({rep, e});
            seqs.push_back(std::move(q));
          }
        }
      }
      level_start = level_end;
    }
    for (const auto& seq : seqs) {
      if (!seq.empty() && seq.front().rep == 0 && seq.front().eps == eps) continue;  // T_eps†
      for (int tail_rep : o.rep_ids(-1)) {
        HnnWord<O> r{seq, o.rep_eps(-1, tail_rep)};
        conjugators_.push_back({r, hnn_inv(o, r)});
      }
    }
  }

  bool member(const typename O::Elem& g) const {
    HnnWord<O> gw = hnn_word_of(*o_, g);
    for (const auto& [r, r_inv] : conjugators_) {
      HnnWord<O> x = hnn_mul(*o_, hnn_mul(*o_, r_inv, gw), r);
      if (!x.syllables.empty() || !o_->in_h_eps(x.tail, -1)) return false;
    }
    return true;
  }

  std::size_t conjugator_count() const { return conjugators_.size(); }

 private:
  const O* o_;
  std::vector<std::pair<HnnWord<O>, HnnWord<O>>> conjugators_;
};

template <HnnBaseOracle O>
bool k_eps_oracle(const O& o, const typename O::Elem& g, int eps, int max_syllables,
                  int syllable_cap = 3) {
  return KEpsOracle<O>(o, eps, max_syllables, syllable_cap).member(g);
}

}  // namespace bsl
