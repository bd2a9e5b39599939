#include "bsl/hnn.hpp"

#include <algorithm>
#include <set>

#include "bsl/error.hpp"

namespace bsl {

const HnnPortrait* HnnPortrait::child(const HnnStep& s) const {
  auto it = std::lower_bound(children.begin(), children.end(), s,
                             [](const auto& kv, const HnnStep& key) { return kv.first < key; });
  if (it == children.end() || !(it->first == s)) return nullptr;
  return &it->second;
}

int HnnPortrait::depth() const {
  int d = 0;
  for (const auto& [s, c] : children) d = std::max(d, 1 + c.depth());
  return d;
}

namespace {

void insert_child(HnnPortrait& p, const HnnStep& s, HnnPortrait c) {
  if (c.is_identity()) return;
  auto it = std::lower_bound(p.children.begin(), p.children.end(), s,
                             [](const auto& kv, const HnnStep& key) { return kv.first < key; });
  p.children.insert(it, {s, std::move(c)});
}

}  // namespace

HnnFamily::HnnFamily(PermGroup sigma_m, PermGroup sigma_p)
    : sigma_m_(std::move(sigma_m)), sigma_p_(std::move(sigma_p)) {
  for (int eps : {-1, 1}) {
    if (!sigma(eps).is_transitive())
      fail(ErrorKind::Domain, "sigma groups must act transitively");
    if (sigma(eps).degree() < 2) fail(ErrorKind::Domain, "index sets need at least two points");
  }
  stab_m_ = sigma_m_.stabilizer(sigma_m_.basepoint());
  stab_p_ = sigma_p_.stabilizer(sigma_p_.basepoint());
  trans_m_ = sigma_m_.transversal(sigma_m_.basepoint());
  trans_p_ = sigma_p_.transversal(sigma_p_.basepoint());
}

std::vector<int> HnnFamily::rep_ids(int eps) const {
  std::vector<int> ids{0};
  for (int i = 1; i < domain_size(eps); ++i) ids.push_back(i);
  return ids;
}

GammaElem HnnFamily::gamma_identity() const { return {Perm(domain_size(-1)), Perm(domain_size(1))}; }

GammaElem HnnFamily::gamma_from_sigma(int eps, const Perm& s) const {
  if (!sigma(eps).contains(s)) fail(ErrorKind::InvalidGenerator, "permutation not in the sigma group");
  GammaElem g = gamma_identity();
  (eps < 0 ? g.sm : g.sp) = s;
  return g;
}

bool HnnFamily::in_gamma(const GammaElem& g) const {
  return sigma_m_.contains(g.sm) && sigma_p_.contains(g.sp);
}

bool HnnFamily::in_gamma_eps(const GammaElem& g, int eps) const {
  return in_gamma(g) && g.fixes_basepoint(eps);
}

HnnPortrait HnnFamily::identity() const {
  HnnPortrait p;
  p.ctx = 0;
  p.label = gamma_identity();
  return p;
}

HnnPortrait HnnFamily::gen_top(const GammaElem& sigma) const {
  if (!in_gamma(sigma)) fail(ErrorKind::InvalidGenerator, "label must lie in the product group");
  HnnPortrait p = identity();
  p.label = sigma;
  return p;
}

void HnnFamily::validate_step(int parent_ctx, const HnnStep& s) const {
  if (s.eps != -1 && s.eps != 1) fail(ErrorKind::InvalidPath, "step sign must be -1 or +1");
  int index_side = -s.eps;
  if (s.index < 0 || s.index >= domain_size(index_side))
    fail(ErrorKind::InvalidPath, "step index outside its index set");
  if (parent_ctx != 0 && parent_ctx * s.eps == -1 && s.index == 0)
    fail(ErrorKind::InvalidPath, "step index must avoid the basepoint after a sign flip");
}

HnnPortrait HnnFamily::gen_path(const std::vector<HnnStep>& path, const GammaElem& sigma) const {
  if (path.empty()) fail(ErrorKind::InvalidPath, "generator path must be nonempty");
  int prev = 0;
  for (const HnnStep& s : path) {
    validate_step(prev, s);
    prev = s.eps;
  }
  if (!in_gamma_eps(sigma, path.back().eps))
    fail(ErrorKind::InvalidGenerator, "label must fix the basepoint matching the final step sign");
  HnnPortrait node;
  node.ctx = path.back().eps;
  node.label = sigma;
  for (std::size_t k = path.size(); k-- > 0;) {
    HnnPortrait parent;
    parent.ctx = k == 0 ? 0 : path[k - 1].eps;
    parent.label = gamma_identity();
    insert_child(parent, path[k], std::move(node));
    node = std::move(parent);
  }
  return node;
}

HnnPortrait HnnFamily::rep_eps(int eps, int index) const {
  const auto& trans = eps < 0 ? trans_m_ : trans_p_;
  auto it = trans.find(index);
  if (it == trans.end()) fail(ErrorKind::MissingCoset, "no transversal rep for index");
  return gen_top(gamma_from_sigma(eps, it->second));
}

HnnPortrait HnnFamily::mul_node(const HnnPortrait& a, const HnnPortrait& b) const {
  if (a.ctx != b.ctx) fail(ErrorKind::SideMismatch, "portrait contexts differ");
  HnnPortrait out;
  out.ctx = a.ctx;
  out.label = a.label * b.label;
  GammaElem a_inv = a.label.inverse();
  std::vector<HnnStep> slots;
  slots.reserve(a.children.size() + b.children.size());
  for (const auto& [s, c] : a.children) slots.push_back(s);
  for (const auto& [s, c] : b.children) slots.push_back({s.eps, a.label.act(-s.eps, s.index)});
  std::sort(slots.begin(), slots.end());
  slots.erase(std::unique(slots.begin(), slots.end()), slots.end());
  for (const HnnStep& s : slots) {
    const HnnPortrait* ca = a.child(s);
    const HnnPortrait* cb = b.child({s.eps, a_inv.act(-s.eps, s.index)});
    HnnPortrait prod;
    if (ca && cb)
      prod = mul_node(*ca, *cb);
    else if (ca)
      prod = *ca;
    else if (cb)
      prod = *cb;
    else
      continue;
    if (!prod.is_identity()) out.children.push_back({s, std::move(prod)});
  }
  return out;
}

HnnPortrait HnnFamily::mul(const HnnPortrait& a, const HnnPortrait& b) const { return mul_node(a, b); }

HnnPortrait HnnFamily::inv_node(const HnnPortrait& a) const {
  HnnPortrait out;
  out.ctx = a.ctx;
  out.label = a.label.inverse();
  for (const auto& [s, c] : a.children)
    insert_child(out, {s.eps, out.label.act(-s.eps, s.index)}, inv_node(c));
  return out;
}

HnnPortrait HnnFamily::inv(const HnnPortrait& a) const { return inv_node(a); }

HnnPortrait HnnFamily::conj(const HnnPortrait& a, const HnnPortrait& b) const {
  return mul(mul(a, b), inv(a));
}

bool HnnFamily::in_h_eps(const HnnPortrait& g, int eps) const {
  if (g.ctx != 0) fail(ErrorKind::Domain, "membership test expects a root portrait");
  return g.label.fixes_basepoint(eps);
}

std::pair<int, HnnPortrait> HnnFamily::coset_decompose_eps(const HnnPortrait& g, int eps) const {
  int index = g.label.act(eps, 0);
  HnnPortrait remainder = mul(inv(rep_eps(eps, index)), g);
  return {index, std::move(remainder)};
}

HnnPortrait HnnFamily::conjugate_by_tau(const HnnPortrait& g, int eps) const {
  if (g.ctx != 0) fail(ErrorKind::Domain, "tau conjugation expects a root portrait");
  if (!in_h_eps(g, eps))
    fail(ErrorKind::BrittonPinch, "tau conjugation applied outside H_eps");
  HnnStep promoted_slot{-eps, 0};  // (ι_eps, -eps)
  HnnStep demoted_slot{eps, 0};    // (ι_{-eps}, eps)
  HnnPortrait out = identity();
  HnnPortrait demoted;
  demoted.ctx = eps;
  demoted.label = g.label;
  for (const auto& [s, c] : g.children) {
    if (s == promoted_slot) {
      out.label = c.label;
      for (const auto& [s2, c2] : c.children) insert_child(out, s2, c2);
    } else {
      insert_child(demoted, s, c);
    }
  }
  insert_child(out, demoted_slot, std::move(demoted));
  return out;
}

bool HnnFamily::k_eps_member(const HnnPortrait& g, int eps) const {
  if (g.ctx != 0) fail(ErrorKind::Domain, "membership test expects a root portrait");
  if (!g.label.is_identity()) return false;
  HnnStep allowed{eps, 0};  // (ι_{-eps}, eps)
  for (const auto& [s, c] : g.children)
    if (!(s == allowed)) return false;
  return true;
}

bool HnnFamily::lambda_bar_member(const HnnPortrait& g, int eps) const {
  if (g.ctx != 0) fail(ErrorKind::Domain, "membership test expects a root portrait");
  if (!g.label.fixes_basepoint(-eps)) return false;
  return g.child({eps, 0}) == nullptr;
}

HnnCstarReport cstar_report_hnn(const HnnFamily& fam, bool sigma_m_nonamenable,
                                bool sigma_p_nonamenable) {
  HnnCstarReport r;
  r.unique_trace = true;
  r.cstar_simple = sigma_m_nonamenable || sigma_p_nonamenable;
  r.quasi_kernel_amenable = !sigma_m_nonamenable && !sigma_p_nonamenable;
  bool hyp = true;
  for (int eps : {-1, 1}) {
    const PermGroup& s = fam.sigma(eps);
    hyp = hyp && (s.is_2transitive() || s.is_sym2()) &&
          (s.generated_by_stabilizers() || s.is_sym2());
  }
  r.structure_hypotheses = hyp;
  return r;
}

}  // namespace bsl
