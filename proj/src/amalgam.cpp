#include "bsl/amalgam.hpp"

#include <algorithm>
#include <set>

#include "bsl/error.hpp"

namespace bsl {

const Portrait* Portrait::child(int slot) const {
  auto it = std::lower_bound(children.begin(), children.end(), slot,
                             [](const auto& kv, int s) { return kv.first < s; });
  if (it == children.end() || it->first != slot) return nullptr;
  return &it->second;
}

int Portrait::depth() const {
  int d = 0;
  for (const auto& [slot, c] : children) d = std::max(d, 1 + c.depth());
  return d;
}

namespace {

Portrait bare(int side, Perm top) {
  Portrait p;
  p.side = side;
  p.top = std::move(top);
  return p;
}

void insert_child(Portrait& p, int slot, Portrait c) {
  if (c.is_identity()) return;
  auto it = std::lower_bound(p.children.begin(), p.children.end(), slot,
                             [](const auto& kv, int s) { return kv.first < s; });
  p.children.insert(it, {slot, std::move(c)});
}

}  // namespace

AmalgamFamily::AmalgamFamily(PermGroup gamma0, PermGroup gamma1)
    : gamma0_(std::move(gamma0)), gamma1_(std::move(gamma1)) {
  for (int j = 0; j < 2; ++j) {
    if (!gamma(j).is_transitive())
      fail(ErrorKind::Domain, "gamma" + std::to_string(j) + " must act transitively");
    if (gamma(j).degree() < 2)
      fail(ErrorKind::Domain, "index sets must have at least two points");
  }
  stab0_ = gamma0_.stabilizer(gamma0_.basepoint());
  stab1_ = gamma1_.stabilizer(gamma1_.basepoint());
  if (stab0_.order() == 1 && stab1_.order() == 1)
    fail(ErrorKind::Domain, "basepoint stabilizers must not both be trivial");
  trans0_ = gamma0_.transversal(gamma0_.basepoint());
  trans1_ = gamma1_.transversal(gamma1_.basepoint());
}

std::vector<int> AmalgamFamily::nontrivial_rep_ids(int j) const {
  std::vector<int> ids;
  for (int i = 0; i < domain_size(j); ++i)
    if (i != basepoint(j)) ids.push_back(i);
  return ids;
}

Portrait AmalgamFamily::identity() const { return bare(0, Perm(domain_size(0))); }

Portrait AmalgamFamily::gen_g(int j, const Perm& sigma) const {
  if (j != 0 && j != 1) fail(ErrorKind::Domain, "side must be 0 or 1");
  if (!gamma(j).contains(sigma))
    fail(ErrorKind::InvalidGenerator, "permutation is not an element of gamma" + std::to_string(j));
  return canonical(bare(j, sigma));
}

Portrait AmalgamFamily::gen_h(int j, const std::vector<int>& path, const Perm& sigma) const {
  if (j != 0 && j != 1) fail(ErrorKind::Domain, "side must be 0 or 1");
  if (path.empty()) fail(ErrorKind::InvalidPath, "h-generator path must be nonempty");
  for (std::size_t k = 0; k < path.size(); ++k) {
    int side = (j + static_cast<int>(k)) % 2;
    if (path[k] < 0 || path[k] >= domain_size(side) || path[k] == basepoint(side))
      fail(ErrorKind::InvalidPath,
           "path index " + std::to_string(path[k]) + " not in I'_" + std::to_string(side));
  }
  int sigma_side = (j + static_cast<int>(path.size())) % 2;
  if (!point_stabilizer(sigma_side).contains(sigma))
    fail(ErrorKind::InvalidGenerator,
         "permutation is not in the basepoint stabilizer of gamma" + std::to_string(sigma_side));
  Portrait node = bare(sigma_side, sigma);
  for (std::size_t k = path.size(); k-- > 0;) {
    int side = (j + static_cast<int>(k)) % 2;
    Portrait parent = bare(side, Perm(domain_size(side)));
    insert_child(parent, path[k], std::move(node));
    node = std::move(parent);
  }
  return canonical(std::move(node));
}

Portrait AmalgamFamily::rep(int j, int index) const {
  auto it = transversal(j).find(index);
  if (it == transversal(j).end()) fail(ErrorKind::MissingCoset, "no transversal rep for index");
  return canonical(bare(j, it->second));
}

Portrait AmalgamFamily::mul_same_side(const Portrait& a, const Portrait& b) const {
  Portrait out = bare(a.side, a.top * b.top);
  Perm a_top_inv = a.top.inverse();
  std::vector<int> slots;
  slots.reserve(a.children.size() + b.children.size());
  for (const auto& [slot, c] : a.children) slots.push_back(slot);
  for (const auto& [slot, c] : b.children) slots.push_back(a.top(slot));
  std::sort(slots.begin(), slots.end());
  slots.erase(std::unique(slots.begin(), slots.end()), slots.end());
  for (int slot : slots) {
    const Portrait* ca = a.child(slot);
    const Portrait* cb = b.child(a_top_inv(slot));
    Portrait prod;
    if (ca && cb)
      prod = mul_same_side(*ca, *cb);
    else if (ca)
      prod = *ca;
    else if (cb)
      prod = *cb;
    else
      continue;
    if (!prod.is_identity()) out.children.push_back({slot, std::move(prod)});
  }
  return out;
}

Portrait AmalgamFamily::mul(const Portrait& a, const Portrait& b) const {
  if (a.side == b.side) return canonical(mul_same_side(a, b));
  if (in_h(a)) return canonical(mul_same_side(to_side(a, b.side), b));
  if (in_h(b)) return canonical(mul_same_side(a, to_side(b, a.side)));
  fail(ErrorKind::SideMismatch, "cannot multiply portraits on different sides outside H");
}

Portrait AmalgamFamily::inv_raw(const Portrait& a) const {
  Portrait out = bare(a.side, a.top.inverse());
  for (const auto& [slot, c] : a.children) insert_child(out, out.top(slot), inv_raw(c));
  return out;
}

Portrait AmalgamFamily::inv(const Portrait& a) const { return canonical(inv_raw(a)); }

Portrait AmalgamFamily::conj(const Portrait& a, const Portrait& b) const {
  return mul(mul(a, b), inv(a));
}

bool AmalgamFamily::in_h(const Portrait& g) const { return g.top.fixes(basepoint(g.side)); }

std::pair<Portrait, Portrait> AmalgamFamily::h_factor(const Portrait& h) const {
  if (!in_h(h)) fail(ErrorKind::Domain, "h_factor requires an element of H");
  int j = h.side;
  Portrait qj = bare(j, h.top);
  Portrait qother = bare(1 - j, Perm(domain_size(1 - j)));
  for (const auto& [slot, c] : h.children) {
    if (slot == basepoint(j))
      qother = c;
    else
      insert_child(qj, slot, c);
  }
  if (j == 0) return {std::move(qj), std::move(qother)};
  return {std::move(qother), std::move(qj)};
}

Portrait AmalgamFamily::to_side(const Portrait& g, int side) const {
  if (g.side == side) return g;
  if (!in_h(g)) fail(ErrorKind::Domain, "only H elements can change sides");
  auto [q0, q1] = h_factor(g);
  const Portrait& own = side == 0 ? q0 : q1;
  const Portrait& other = side == 0 ? q1 : q0;
  Portrait out = bare(side, own.top);
  out.children = own.children;
  insert_child(out, basepoint(side), other);
  return out;
}

Portrait AmalgamFamily::canonical(Portrait g) const {
  if (g.side != 0 && in_h(g)) return to_side(g, 0);
  return g;
}

std::pair<std::optional<int>, Portrait> AmalgamFamily::coset_decompose(const Portrait& g) const {
  if (in_h(g)) return {std::nullopt, canonical(g)};
  int j = g.side;
  int index = g.top(basepoint(j));
  Portrait remainder = mul_same_side(inv(rep(j, index)), g);
  return {index, canonical(std::move(remainder))};
}

bool AmalgamFamily::quasi_kernel_member(const Portrait& h, int j) const {
  if (!in_h(h)) fail(ErrorKind::Domain, "quasi-kernel membership requires an element of H");
  auto [q0, q1] = h_factor(h);
  return (j == 0 ? q0 : q1).is_identity();
}

bool AmalgamFamily::c_jn_member(const Portrait& h, int j, int n, int n_cap) const {
  if (!in_h(h)) fail(ErrorKind::Domain, "conjugate-intersection membership requires an element of H");
  if (n > n_cap) fail(ErrorKind::Limit, "transversal word length exceeds configured bound");
  if (n == 0) return true;
  // enumerate alternating transversal sequences (k_j, ..., k_{j+n-1}); the
  // conjugate g^{-1} h g is peeled one rep at a time, and once an
  // intermediate conjugate leaves H the full word is reduced of length >= 3
  // and cannot return to H
  std::vector<int> choice(n, 0);
  std::vector<std::vector<int>> ids(n);
  for (int t = 0; t < n; ++t) ids[t] = nontrivial_rep_ids((j + t) % 2);
  for (;;) {
    Portrait x = h;
    bool inside = true;
    for (int t = 0; t < n; ++t) {
      if (!in_h(x)) {
        inside = false;
        break;
      }
      Portrait r = rep((j + t) % 2, ids[t][choice[t]]);
      x = mul(mul(inv(r), x), r);
    }
    if (!inside || !in_h(x)) return false;
    int t = n - 1;
    while (t >= 0 && choice[t] + 1 == static_cast<int>(ids[t].size())) choice[t--] = 0;
    if (t < 0) break;
    ++choice[t];
  }
  return true;
}

AmalgamCstarReport cstar_report(const AmalgamFamily& fam, bool gamma0_stab_nonamenable,
                                bool gamma1_stab_nonamenable) {
  AmalgamCstarReport r;
  r.unique_trace = true;
  r.cstar_simple = gamma0_stab_nonamenable || gamma1_stab_nonamenable;
  r.quasi_kernel_amenable = !gamma0_stab_nonamenable && !gamma1_stab_nonamenable;
  bool hyp = true;
  for (int j = 0; j < 2; ++j) {
    const PermGroup& g = fam.gamma(j);
    hyp = hyp && (g.is_2transitive() || g.is_sym2()) &&
          (g.generated_by_stabilizers() || g.is_sym2());
  }
  r.structure_hypotheses = hyp;
  return r;
}

}  // namespace bsl
