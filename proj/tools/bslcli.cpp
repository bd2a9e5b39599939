// Command-line surface for the tree-action families: reductions, vertex
// actions, balls, classification, fledge reports, homomorphism evaluation,
// verification suites, and DOT export.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "bsl/error.hpp"
#include "bsl/homs.hpp"
#include "bsl/instance.hpp"
#include "bsl/oracles.hpp"
#include "bsl/tokens.hpp"
#include "bsl/tree.hpp"
#include "bsl/verify.hpp"
#include "bsl/words.hpp"

namespace {

using namespace bsl;

struct Options {
  std::string config_path;
  std::string family = "amalgam";
  bool json = false;
  std::uint64_t seed = 0;
  std::string out_path;
  int vside = 0;
  std::string radii_text = "4,6,8";
  std::string word2;          // for mul
  std::string color_word;     // for export-dot
  std::string hom_name;       // theta | eta
};

std::vector<int> parse_radii(const std::string& text) {
  std::vector<int> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stoi(item));
  if (out.empty()) fail(ErrorKind::Parse, "empty radii list");
  return out;
}

void emit(const nlohmann::json& j, const Options& opt, const std::string& plain) {
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!opt.out_path.empty()) {
    file.open(opt.out_path);
    out = &file;
  }
  if (opt.json)
    *out << j.dump(2) << "\n";
  else
    *out << plain << "\n";
}

TokenContext context_of(const Instance& inst) {
  TokenContext ctx;
  ctx.kind = instance_kind(inst);
  if (const auto* a = std::get_if<AmalgamInstance>(&inst)) ctx.amalgam = &a->family;
  if (const auto* h = std::get_if<HnnInstance>(&inst)) ctx.hnn = &h->family;
  return ctx;
}

// ---------------------------------------------------------------------------
// per-family command implementations
// ---------------------------------------------------------------------------

struct AmalgamCtx {
  const AmalgamFamily& fam;
  AmalgamOracle o;
  Caps caps;

  AmalgamWord<AmalgamOracle> parse(const std::string& text) const {
    TokenContext ctx{FamilyKind::Amalgam, &fam, nullptr};
    std::vector<Portrait> letters;
    for (const Token& t : parse_word_text(text, ctx)) letters.push_back(amalgam_token_elem(fam, t));
    return amalgam_reduce(o, letters);
  }
  std::string show(const AmalgamWord<AmalgamOracle>& w) const { return word_text(fam, w); }
};

struct HnnCtx {
  const HnnFamily& fam;
  HnnOracle o;
  Caps caps;

  HnnWord<HnnOracle> parse(const std::string& text) const {
    TokenContext ctx{FamilyKind::Hnn, nullptr, &fam};
    std::vector<HnnLetter<HnnOracle>> letters;
    for (const Token& t : parse_word_text(text, ctx))
      for (auto& l : hnn_token_letters(fam, t)) letters.push_back(std::move(l));
    return hnn_reduce(o, letters);
  }
  std::string show(const HnnWord<HnnOracle>& w) const { return word_text(fam, w); }
};

struct Bs23Ctx {
  Bs23Oracle o;
  Caps caps;

  HnnWord<Bs23Oracle> parse(const std::string& text) const {
    TokenContext ctx{FamilyKind::Bs23, nullptr, nullptr};
    std::vector<HnnLetter<Bs23Oracle>> letters;
    for (const Token& t : parse_word_text(text, ctx))
      for (auto& l : bs23_token_letters(t)) letters.push_back(std::move(l));
    return hnn_reduce(o, letters);
  }
  std::string show(const HnnWord<Bs23Oracle>& w) const { return word_text(w); }
};

nlohmann::json token_array(const std::vector<Token>& tokens, const TokenContext& ctx) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Token& t : tokens) arr.push_back(print_word_text({t}, ctx));
  return arr;
}

int run_reduce(const Instance& inst, const Options& opt, const std::string& word) {
  std::string text;
  nlohmann::json tokens;
  TokenContext tctx = context_of(inst);
  if (const auto* a = std::get_if<AmalgamInstance>(&inst)) {
    AmalgamCtx ctx{a->family, AmalgamOracle{&a->family}, a->caps};
    auto w = ctx.parse(word);
    text = ctx.show(w);
    tokens = token_array(word_tokens(a->family, w), tctx);
  } else if (const auto* h = std::get_if<HnnInstance>(&inst)) {
    HnnCtx ctx{h->family, HnnOracle{&h->family}, h->caps};
    auto w = ctx.parse(word);
    text = ctx.show(w);
    tokens = token_array(word_tokens(h->family, w), tctx);
  } else {
    Bs23Ctx ctx{Bs23Oracle{}, std::get<Bs23Instance>(inst).caps};
    auto w = ctx.parse(word);
    text = ctx.show(w);
    tokens = token_array(word_tokens(w), tctx);
  }
  emit(nlohmann::json{{"normalForm", text}, {"tokens", tokens}}, opt, text);
  return 0;
}

int run_mul(const Instance& inst, const Options& opt, const std::string& w1, const std::string& w2) {
  std::string text;
  if (const auto* a = std::get_if<AmalgamInstance>(&inst)) {
    AmalgamCtx ctx{a->family, AmalgamOracle{&a->family}, a->caps};
    text = ctx.show(amalgam_mul(ctx.o, ctx.parse(w1), ctx.parse(w2)));
  } else if (const auto* h = std::get_if<HnnInstance>(&inst)) {
    HnnCtx ctx{h->family, HnnOracle{&h->family}, h->caps};
    text = ctx.show(hnn_mul(ctx.o, ctx.parse(w1), ctx.parse(w2)));
  } else {
    Bs23Ctx ctx{Bs23Oracle{}, std::get<Bs23Instance>(inst).caps};
    text = ctx.show(hnn_mul(ctx.o, ctx.parse(w1), ctx.parse(w2)));
  }
  emit(nlohmann::json{{"normalForm", text}}, opt, text);
  return 0;
}

int run_act(const Instance& inst, const Options& opt, const std::string& word,
            const std::string& vertex_word) {
  std::string text;
  if (const auto* a = std::get_if<AmalgamInstance>(&inst)) {
    AmalgamCtx ctx{a->family, AmalgamOracle{&a->family}, a->caps};
    AmalgamWord<AmalgamOracle> g = ctx.parse(word);
    AmalgamVertex v = amalgam_act(ctx.o, ctx.parse(vertex_word), AmalgamVertex{{}, opt.vside});
    text = vertex_text(amalgam_act(ctx.o, g, v), a->family);
  } else if (const auto* h = std::get_if<HnnInstance>(&inst)) {
    HnnCtx ctx{h->family, HnnOracle{&h->family}, h->caps};
    HnnVertex v = hnn_act(ctx.o, ctx.parse(vertex_word), HnnVertex{});
    text = vertex_text(hnn_act(ctx.o, ctx.parse(word), v), h->family);
  } else {
    Bs23Ctx ctx{Bs23Oracle{}, std::get<Bs23Instance>(inst).caps};
    HnnVertex v = hnn_act(ctx.o, ctx.parse(vertex_word), HnnVertex{});
    text = vertex_text(hnn_act(ctx.o, ctx.parse(word), v));
  }
  emit(nlohmann::json{{"vertex", text}}, opt, text);
  return 0;
}

template <class Ctx, class V>
nlohmann::json ball_summary(const Ball<V>& ball, const std::function<std::string(const V&)>& show) {
  nlohmann::json j;
  j["radius"] = ball.radius;
  j["vertices"] = ball.verts.size();
  nlohmann::json names = nlohmann::json::array();
  for (const V& v : ball.verts) names.push_back(show(v));
  j["vertexNames"] = names;
  return j;
}

int run_ball(const Instance& inst, const Options& opt, int radius) {
  nlohmann::json j;
  std::size_t count = 0;
  if (const auto* a = std::get_if<AmalgamInstance>(&inst)) {
    AmalgamOracle o{&a->family};
    Ball<AmalgamVertex> ball = build_ball(o, AmalgamVertex{{}, 0}, radius, a->caps.ball_radius);
    const AmalgamFamily& fam = a->family;
    j = ball_summary<AmalgamCtx, AmalgamVertex>(
        ball, [&fam](const AmalgamVertex& v) { return vertex_text(v, fam); });
    count = ball.verts.size();
  } else if (const auto* h = std::get_if<HnnInstance>(&inst)) {
    HnnOracle o{&h->family};
    Ball<HnnVertex> ball = build_ball(o, HnnVertex{}, radius, h->caps.ball_radius);
    const HnnFamily& fam = h->family;
    j = ball_summary<HnnCtx, HnnVertex>(ball,
                                        [&fam](const HnnVertex& v) { return vertex_text(v, fam); });
    count = ball.verts.size();
  } else {
    Bs23Oracle o;
    Ball<HnnVertex> ball = build_ball(o, HnnVertex{}, radius, std::get<Bs23Instance>(inst).caps.ball_radius);
    j = ball_summary<Bs23Ctx, HnnVertex>(ball, [](const HnnVertex& v) { return vertex_text(v); });
    count = ball.verts.size();
  }
  emit(j, opt, "ball radius " + std::to_string(radius) + ": " + std::to_string(count) + " vertices");
  return 0;
}

template <class Cls>
nlohmann::json classification_json(const Cls& cls, const std::string& core_text,
                                   const std::string& witness_text) {
  nlohmann::json j;
  j["type"] = cls.hyperbolic ? "hyperbolic" : "elliptic";
  j["core"] = core_text;
  if (cls.hyperbolic)
    j["translationLength"] = cls.translation_length;
  else
    j["witnessVertex"] = witness_text;
  return j;
}

int run_classify(const Instance& inst, const Options& opt, const std::string& word) {
  nlohmann::json j;
  std::string plain;
  if (const auto* a = std::get_if<AmalgamInstance>(&inst)) {
    AmalgamCtx ctx{a->family, AmalgamOracle{&a->family}, a->caps};
    auto cls = amalgam_classify(ctx.o, ctx.parse(word));
    j = classification_json(cls, ctx.show(cls.core),
                            cls.witness ? vertex_text(*cls.witness, a->family) : "");
  } else if (const auto* h = std::get_if<HnnInstance>(&inst)) {
    HnnCtx ctx{h->family, HnnOracle{&h->family}, h->caps};
    auto cls = hnn_classify(ctx.o, ctx.parse(word));
    j = classification_json(cls, ctx.show(cls.core),
                            cls.witness ? vertex_text(*cls.witness, h->family) : "");
  } else {
    Bs23Ctx ctx{Bs23Oracle{}, std::get<Bs23Instance>(inst).caps};
    auto cls = hnn_classify(ctx.o, ctx.parse(word));
    j = classification_json(cls, ctx.show(cls.core), cls.witness ? vertex_text(*cls.witness) : "");
  }
  plain = j["type"].get<std::string>() +
          (j.contains("witnessVertex") ? " at " + j["witnessVertex"].get<std::string>()
                                       : " with translation length " + std::to_string(j["translationLength"].get<int>()));
  emit(j, opt, plain);
  return 0;
}

nlohmann::json fledge_json(const FledgeReport& fr) {
  nlohmann::json diam = nlohmann::json::array();
  for (auto [r, d] : fr.diameter_per_radius) diam.push_back(nlohmann::json{{"radius", r}, {"diameter", d}});
  const char* verdict = fr.verdict == FledgeVerdict::BoundedWitness    ? "boundedWitness"
                        : fr.verdict == FledgeVerdict::GrowingWitness ? "growingWitness"
                                                                       : "inconclusive";
  return nlohmann::json{{"diameterPerRadius", diam}, {"verdict", verdict}};
}

int run_fledge(const Instance& inst, const Options& opt, const std::string& word) {
  std::vector<int> radii = parse_radii(opt.radii_text);
  nlohmann::json j;
  if (const auto* a = std::get_if<AmalgamInstance>(&inst)) {
    AmalgamCtx ctx{a->family, AmalgamOracle{&a->family}, a->caps};
    AmalgamWord<AmalgamOracle> w = ctx.parse(word);
    if (amalgam_is_identity_word(ctx.o, w)) fail(ErrorKind::Domain, "fledge needs a nontrivial element");
    if (amalgam_classify(ctx.o, w).hyperbolic)
      fail(ErrorKind::Classification, "fledge reports are for elliptic elements");
    std::function<AmalgamVertex(const AmalgamWord<AmalgamOracle>&, const AmalgamVertex&)> act =
        [&](const AmalgamWord<AmalgamOracle>& g, const AmalgamVertex& v) { return amalgam_act(ctx.o, g, v); };
    j = fledge_json(fledge_report<AmalgamOracle, AmalgamWord<AmalgamOracle>, AmalgamVertex>(
        ctx.o, w, radii, AmalgamVertex{{}, 0}, act, ctx.caps.ball_radius));
  } else if (const auto* h = std::get_if<HnnInstance>(&inst)) {
    HnnCtx ctx{h->family, HnnOracle{&h->family}, h->caps};
    HnnWord<HnnOracle> w = ctx.parse(word);
    if (hnn_is_identity_word(ctx.o, w)) fail(ErrorKind::Domain, "fledge needs a nontrivial element");
    if (hnn_classify(ctx.o, w).hyperbolic)
      fail(ErrorKind::Classification, "fledge reports are for elliptic elements");
    std::function<HnnVertex(const HnnWord<HnnOracle>&, const HnnVertex&)> act =
        [&](const HnnWord<HnnOracle>& g, const HnnVertex& v) { return hnn_act(ctx.o, g, v); };
    j = fledge_json(fledge_report<HnnOracle, HnnWord<HnnOracle>, HnnVertex>(
        ctx.o, w, radii, HnnVertex{}, act, ctx.caps.ball_radius));
  } else {
    Bs23Ctx ctx{Bs23Oracle{}, std::get<Bs23Instance>(inst).caps};
    HnnWord<Bs23Oracle> w = ctx.parse(word);
    if (w.syllables.empty() && w.tail == 0) fail(ErrorKind::Domain, "fledge needs a nontrivial element");
    if (hnn_classify(ctx.o, w).hyperbolic)
      fail(ErrorKind::Classification, "fledge reports are for elliptic elements");
    std::function<HnnVertex(const HnnWord<Bs23Oracle>&, const HnnVertex&)> act =
        [&](const HnnWord<Bs23Oracle>& g, const HnnVertex& v) { return hnn_act(ctx.o, g, v); };
    j = fledge_json(fledge_report<Bs23Oracle, HnnWord<Bs23Oracle>, HnnVertex>(
        ctx.o, w, radii, HnnVertex{}, act, ctx.caps.ball_radius));
  }
  std::string plain = "verdict: " + j["verdict"].get<std::string>() + ", diameters:";
  for (const auto& d : j["diameterPerRadius"])
    plain += " (" + std::to_string(d["radius"].get<int>()) + "," + std::to_string(d["diameter"].get<int>()) + ")";
  emit(j, opt, plain);
  return 0;
}

int run_delta(const Instance& inst, const Options& opt, const std::string& word, int radius) {
  nlohmann::json j;
  std::string plain;
  if (const auto* a = std::get_if<AmalgamInstance>(&inst)) {
    AmalgamCtx ctx{a->family, AmalgamOracle{&a->family}, a->caps};
    Ball<AmalgamVertex> ball = build_ball(ctx.o, AmalgamVertex{{}, 0}, radius, ctx.caps.ball_radius);
    DeltaResult<AmalgamVertex> d = delta_map(ctx.o, ball, ctx.parse(word), radius);
    if (d.hyperbolic) {
      nlohmann::json ray = nlohmann::json::array();
      for (const AmalgamVertex& v : d.ray) ray.push_back(vertex_text(v, a->family));
      j = nlohmann::json{{"type", "hyperbolic"}, {"rayPrefix", ray}};
      plain = "hyperbolic: ray toward " + vertex_text(d.ray.back(), a->family);
    } else {
      const char* kind = d.center->kind == RefinedKind::Vertex ? "vertex"
                         : d.center->kind == RefinedKind::Half ? "1/2"
                         : d.center->kind == RefinedKind::QuarterNearA ? "1/4" : "3/4";
      j = nlohmann::json{{"type", "elliptic"},
                         {"center", {{"position", kind},
                                     {"a", vertex_text(d.center->a, a->family)},
                                     {"b", vertex_text(d.center->b, a->family)}}}};
      plain = std::string("elliptic: center at ") + kind + " of " + vertex_text(d.center->a, a->family);
    }
  } else if (const auto* h = std::get_if<HnnInstance>(&inst)) {
    HnnCtx ctx{h->family, HnnOracle{&h->family}, h->caps};
    Ball<HnnVertex> ball = build_ball(ctx.o, HnnVertex{}, radius, ctx.caps.ball_radius);
    DeltaResult<HnnVertex> d = delta_map(ctx.o, ball, ctx.parse(word), radius);
    if (d.hyperbolic) {
      nlohmann::json ray = nlohmann::json::array();
      for (const HnnVertex& v : d.ray) ray.push_back(vertex_text(v, h->family));
      j = nlohmann::json{{"type", "hyperbolic"}, {"rayPrefix", ray}};
      plain = "hyperbolic: ray toward " + vertex_text(d.ray.back(), h->family);
    } else {
      const char* kind = d.center->kind == RefinedKind::Vertex ? "vertex"
                         : d.center->kind == RefinedKind::Half ? "1/2"
                         : d.center->kind == RefinedKind::QuarterNearA ? "1/4" : "3/4";
      j = nlohmann::json{{"type", "elliptic"},
                         {"center", {{"position", kind},
                                     {"a", vertex_text(d.center->a, h->family)},
                                     {"b", vertex_text(d.center->b, h->family)}}}};
      plain = std::string("elliptic: center at ") + kind + " of " + vertex_text(d.center->a, h->family);
    }
  } else {
    Bs23Ctx ctx{Bs23Oracle{}, std::get<Bs23Instance>(inst).caps};
    Ball<HnnVertex> ball = build_ball(ctx.o, HnnVertex{}, radius, ctx.caps.ball_radius);
    DeltaResult<HnnVertex> d = delta_map(ctx.o, ball, ctx.parse(word), radius);
    if (d.hyperbolic) {
      nlohmann::json ray = nlohmann::json::array();
      for (const HnnVertex& v : d.ray) ray.push_back(vertex_text(v));
      j = nlohmann::json{{"type", "hyperbolic"}, {"rayPrefix", ray}};
      plain = "hyperbolic: ray toward " + vertex_text(d.ray.back());
    } else {
      const char* kind = d.center->kind == RefinedKind::Vertex ? "vertex"
                         : d.center->kind == RefinedKind::Half ? "1/2"
                         : d.center->kind == RefinedKind::QuarterNearA ? "1/4" : "3/4";
      j = nlohmann::json{{"type", "elliptic"},
                         {"center", {{"position", kind},
                                     {"a", vertex_text(d.center->a)},
                                     {"b", vertex_text(d.center->b)}}}};
      plain = std::string("elliptic: center at ") + kind + " of " + vertex_text(d.center->a);
    }
  }
  emit(j, opt, plain);
  return 0;
}

int run_hom(const Instance& inst, const Options& opt, const std::string& word) {
  nlohmann::json j;
  std::string plain;
  if (opt.hom_name == "theta") {
    const auto* a = std::get_if<AmalgamInstance>(&inst);
    if (!a) fail(ErrorKind::Domain, "theta is the amalgam-family homomorphism");
    ThetaHom theta(a->family);
    TokenContext ctx{FamilyKind::Amalgam, &a->family, nullptr};
    ThetaValue v = theta.value_of(parse_word_text(word, ctx));
    j = nlohmann::json{{"a0", v.a0}, {"a1", v.a1}, {"kernelMember", theta.is_identity(v)}};
    plain = "theta = (" + std::to_string(v.a0) + ", " + std::to_string(v.a1) + ")" +
            (theta.is_identity(v) ? " [kernel]" : "");
  } else if (opt.hom_name == "eta") {
    const auto* h = std::get_if<HnnInstance>(&inst);
    if (!h) fail(ErrorKind::Domain, "eta is the HNN-family homomorphism");
    EtaHom eta(h->family);
    TokenContext ctx{FamilyKind::Hnn, nullptr, &h->family};
    WreathZElem v = eta.value_of(parse_word_text(word, ctx));
    nlohmann::json labels = nlohmann::json::object();
    for (const auto& [pos, lab] : v.labels)
      labels[std::to_string(pos)] = nlohmann::json::array({lab.m, lab.p});
    j = nlohmann::json{{"shift", v.shift}, {"labels", labels}, {"kernelMember", v.is_identity()}};
    plain = "eta: shift " + std::to_string(v.shift) + ", " + std::to_string(v.labels.size()) +
            " nontrivial labels" + (v.is_identity() ? " [kernel]" : "");
  } else {
    fail(ErrorKind::Parse, "hom expects 'theta' or 'eta'");
  }
  emit(j, opt, plain);
  return 0;
}

int run_verify(const Instance& inst, const Options& opt, const std::string& suite) {
  std::vector<SuiteResult> results;
  auto add = [&](SuiteResult r) { results.push_back(std::move(r)); };

  if (suite == "selftest-fail") {
    add(verify_selftest_fail());
  } else if (const auto* a = std::get_if<AmalgamInstance>(&inst)) {
    const AmalgamFamily& fam = a->family;
    if (suite == "relations" || suite == "all") add(verify_relations_amalgam(fam, a->caps.path_depth));
    if (suite == "quasikernels" || suite == "all") {
      if (h_portrait_count(fam, 2) <= (1 << 20))
        add(verify_quasikernels_amalgam(fam, 2, a->caps.path_depth));
      else
        add(verify_quasikernels_amalgam_sampled(fam, 1000, 2, a->caps.path_depth, opt.seed));
    }
    if (suite == "homomorphisms" || suite == "all") add(verify_homomorphisms_amalgam(fam, 500, opt.seed));
    if (suite == "faithfulness" || suite == "all") add(verify_faithfulness_amalgam(fam, 200, 50, opt.seed));
    if (suite == "fledge" || suite == "all") add(verify_fledge_amalgam(fam));
    if (suite == "classification" || suite == "all") add(verify_classification_amalgam(fam, a->caps.syllable_length));
    if (suite == "delta" || suite == "all") add(verify_delta_amalgam(fam, 100, opt.seed));
    if (suite == "reports" || suite == "all") add(verify_reports_amalgam(fam));
  } else if (const auto* h = std::get_if<HnnInstance>(&inst)) {
    const HnnFamily& fam = h->family;
    if (suite == "relations" || suite == "all") add(verify_relations_hnn(fam, h->caps.path_depth));
    if (suite == "quasikernels" || suite == "all") {
      if (hnn_portrait_count(fam, 2) <= (1 << 20))
        add(verify_quasikernels_hnn(fam, 2, 3));
      else
        add(verify_quasikernels_hnn_sampled(fam, 1000, 2, 3, opt.seed));
    }
    if (suite == "homomorphisms" || suite == "all") add(verify_homomorphisms_hnn(fam, 500, opt.seed));
    if (suite == "faithfulness" || suite == "all") add(verify_faithfulness_hnn(fam, 200, 50, opt.seed));
    if (suite == "fledge" || suite == "all") add(verify_fledge_hnn(fam));
    if (suite == "classification" || suite == "all") add(verify_classification_hnn(fam, h->caps.syllable_length));
    if (suite == "delta" || suite == "all") add(verify_delta_hnn(fam, 100, opt.seed));
    if (suite == "reports" || suite == "all") add(verify_reports_hnn(fam));
  } else {
    if (suite == "bs23" || suite == "all") add(verify_bs23_suite());
  }
  if (results.empty()) fail(ErrorKind::Parse, "unknown suite '" + suite + "' for this family");

  nlohmann::json j = nlohmann::json::array();
  std::string plain;
  bool ok = true;
  for (const SuiteResult& r : results) {
    ok = ok && r.passed();
    nlohmann::json notes = nlohmann::json::array();
    for (const std::string& n : r.failure_notes) notes.push_back(n);
    j.push_back(nlohmann::json{{"suite", r.name},
                               {"cases", r.cases},
                               {"failures", r.failures},
                               {"passed", r.passed()},
                               {"failureNotes", notes}});
    plain += r.name + ": " + (r.passed() ? "pass" : "FAIL") + " (" + std::to_string(r.cases) +
             " cases, " + std::to_string(r.failures) + " failures)\n";
    for (const std::string& n : r.failure_notes) plain += "  note: " + n + "\n";
  }
  if (!plain.empty()) plain.pop_back();
  emit(j, opt, plain);
  return ok ? 0 : 1;
}

template <class O, class W, class V>
std::string dot_of_ball(const O& o, const Ball<V>& ball, const std::function<std::string(const V&)>& show,
                        const W* word, const std::function<V(const W&, const V&)>& act) {
  std::vector<char> fixed;
  std::set<int> psi_ids;
  std::set<int> hull_ids;
  if (word) {
    fixed = fixed_vertices<O, W, V>(o, ball, *word, act);
    PsiResult<V> psi = psi_set(ball, fixed, ball.radius);
    for (const auto& p : psi.members) psi_ids.insert(ball.id(p.a));
    for (const auto& p : upsilon_hull(psi.members))
      if (!p.midpoint) hull_ids.insert(ball.id(p.a));
  }
  std::ostringstream out;
  out << "graph ball {\n  node [shape=circle, style=filled];\n";
  for (std::size_t vid = 0; vid < ball.verts.size(); ++vid) {
    std::string color = "white";
    if (word) {
      if (psi_ids.count(static_cast<int>(vid)))
        color = "dodgerblue";
      else if (hull_ids.count(static_cast<int>(vid)))
        color = "lightblue";
      else
        color = fixed[vid] ? "palegreen" : "lightcoral";
    }
    out << "  v" << vid << " [label=\"" << show(ball.verts[vid]) << "\", fillcolor=" << color << "];\n";
  }
  for (std::size_t vid = 0; vid < ball.verts.size(); ++vid)
    for (int n : ball.adj[vid])
      if (static_cast<int>(vid) < n) out << "  v" << vid << " -- v" << n << ";\n";
  out << "}\n";
  return out.str();
}

int run_export_dot(const Instance& inst, const Options& opt, int radius) {
  std::string dot;
  if (const auto* a = std::get_if<AmalgamInstance>(&inst)) {
    AmalgamCtx ctx{a->family, AmalgamOracle{&a->family}, a->caps};
    Ball<AmalgamVertex> ball = build_ball(ctx.o, AmalgamVertex{{}, 0}, radius, ctx.caps.ball_radius);
    const AmalgamFamily& fam = a->family;
    std::function<std::string(const AmalgamVertex&)> show =
        [&fam](const AmalgamVertex& v) { return vertex_text(v, fam); };
    std::function<AmalgamVertex(const AmalgamWord<AmalgamOracle>&, const AmalgamVertex&)> act =
        [&](const AmalgamWord<AmalgamOracle>& g, const AmalgamVertex& v) { return amalgam_act(ctx.o, g, v); };
    if (!opt.color_word.empty()) {
      AmalgamWord<AmalgamOracle> w = ctx.parse(opt.color_word);
      dot = dot_of_ball<AmalgamOracle, AmalgamWord<AmalgamOracle>, AmalgamVertex>(ctx.o, ball, show, &w, act);
    } else {
      dot = dot_of_ball<AmalgamOracle, AmalgamWord<AmalgamOracle>, AmalgamVertex>(ctx.o, ball, show, nullptr, act);
    }
  } else if (const auto* h = std::get_if<HnnInstance>(&inst)) {
    HnnCtx ctx{h->family, HnnOracle{&h->family}, h->caps};
    Ball<HnnVertex> ball = build_ball(ctx.o, HnnVertex{}, radius, ctx.caps.ball_radius);
    const HnnFamily& fam = h->family;
    std::function<std::string(const HnnVertex&)> show =
        [&fam](const HnnVertex& v) { return vertex_text(v, fam); };
    std::function<HnnVertex(const HnnWord<HnnOracle>&, const HnnVertex&)> act =
        [&](const HnnWord<HnnOracle>& g, const HnnVertex& v) { return hnn_act(ctx.o, g, v); };
    if (!opt.color_word.empty()) {
      HnnWord<HnnOracle> w = ctx.parse(opt.color_word);
      dot = dot_of_ball<HnnOracle, HnnWord<HnnOracle>, HnnVertex>(ctx.o, ball, show, &w, act);
    } else {
      dot = dot_of_ball<HnnOracle, HnnWord<HnnOracle>, HnnVertex>(ctx.o, ball, show, nullptr, act);
    }
  } else {
    Bs23Ctx ctx{Bs23Oracle{}, std::get<Bs23Instance>(inst).caps};
    Ball<HnnVertex> ball = build_ball(ctx.o, HnnVertex{}, radius, ctx.caps.ball_radius);
    std::function<std::string(const HnnVertex&)> show = [](const HnnVertex& v) { return vertex_text(v); };
    std::function<HnnVertex(const HnnWord<Bs23Oracle>&, const HnnVertex&)> act =
        [&](const HnnWord<Bs23Oracle>& g, const HnnVertex& v) { return hnn_act(ctx.o, g, v); };
    if (!opt.color_word.empty()) {
      HnnWord<Bs23Oracle> w = ctx.parse(opt.color_word);
      dot = dot_of_ball<Bs23Oracle, HnnWord<Bs23Oracle>, HnnVertex>(ctx.o, ball, show, &w, act);
    } else {
      dot = dot_of_ball<Bs23Oracle, HnnWord<Bs23Oracle>, HnnVertex>(ctx.o, ball, show, nullptr, act);
    }
  }
  if (!opt.out_path.empty()) {
    std::ofstream file(opt.out_path);
    file << dot;
  } else {
    std::cout << dot;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Bass-Serre tree families: words, portraits, actions, verification"};
  app.add_option("--config", opt.config_path, "instance config JSON file (or '-' for stdin)");
  app.add_option("--family", opt.family, "built-in instance: amalgam | hnn | bs23");
  app.add_flag("--json", opt.json, "JSON output");
  app.add_option("--seed", opt.seed, "seed for randomized suites (default 0)");
  app.add_option("--out", opt.out_path, "write output to a file");
  app.fallthrough();  // global flags may follow the subcommand
  app.require_subcommand(1);

  std::string word, word2, vertex_word, suite;
  int radius = 8;

  CLI::App* cmd_reduce = app.add_subcommand("reduce", "normal form of a word");
  cmd_reduce->add_option("word", word)->required();
  CLI::App* cmd_mul = app.add_subcommand("mul", "product of two words");
  cmd_mul->add_option("w1", word)->required();
  cmd_mul->add_option("w2", word2)->required();
  CLI::App* cmd_act = app.add_subcommand("act", "act on the vertex given by a coset word");
  cmd_act->add_option("word", word)->required();
  cmd_act->add_option("vertex", vertex_word)->required();
  cmd_act->add_option("--vside", opt.vside, "amalgam vertex side (0 or 1)");
  CLI::App* cmd_ball = app.add_subcommand("ball", "bounded tree neighborhood");
  cmd_ball->add_option("radius", radius)->required();
  CLI::App* cmd_classify = app.add_subcommand("classify", "elliptic/hyperbolic classification");
  cmd_classify->add_option("word", word)->required();
  CLI::App* cmd_fledge = app.add_subcommand("fledge", "hull diameters over radii");
  cmd_fledge->add_option("word", word)->required();
  cmd_fledge->add_option("--radii", opt.radii_text, "comma-separated radii (default 4,6,8)");
  CLI::App* cmd_delta = app.add_subcommand("delta", "equivariant point: hull center or attracting ray");
  cmd_delta->add_option("word", word)->required();
  cmd_delta->add_option("--radius", radius, "working radius (default 8)");
  CLI::App* cmd_hom = app.add_subcommand("hom", "evaluate theta or eta on a word");
  cmd_hom->add_option("name", opt.hom_name)->required();
  cmd_hom->add_option("word", word)->required();
  CLI::App* cmd_verify = app.add_subcommand("verify", "run a verification suite");
  cmd_verify->add_option("suite", suite)->required();
  CLI::App* cmd_dot = app.add_subcommand("export-dot", "DOT export of a ball");
  cmd_dot->add_option("radius", radius)->required();
  cmd_dot->add_option("--word", opt.color_word, "color fixed/moved/hull vertices for this element");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Instance inst = [&]() {
      if (!opt.config_path.empty()) {
        nlohmann::json j;
        if (opt.config_path == "-") {
          std::cin >> j;
        } else {
          std::ifstream file(opt.config_path);
          if (!file) fail(ErrorKind::Parse, "cannot open config " + opt.config_path);
          file >> j;
        }
        return instance_from_json(j);
      }
      if (opt.family == "amalgam") return default_instance(FamilyKind::Amalgam);
      if (opt.family == "hnn") return default_instance(FamilyKind::Hnn);
      if (opt.family == "bs23") return default_instance(FamilyKind::Bs23);
      fail(ErrorKind::Parse, "unknown family '" + opt.family + "'");
    }();

    if (const char* override_text = std::getenv("BSL_CAP_OVERRIDE")) {
      std::visit([&](auto& i) { i.caps = caps_with_overrides(i.caps, override_text); }, inst);
    }

    if (cmd_reduce->parsed()) return run_reduce(inst, opt, word);
    if (cmd_mul->parsed()) return run_mul(inst, opt, word, word2);
    if (cmd_act->parsed()) return run_act(inst, opt, word, vertex_word);
    if (cmd_ball->parsed()) return run_ball(inst, opt, radius);
    if (cmd_classify->parsed()) return run_classify(inst, opt, word);
    if (cmd_fledge->parsed()) return run_fledge(inst, opt, word);
    if (cmd_delta->parsed()) return run_delta(inst, opt, word, radius);
    if (cmd_hom->parsed()) return run_hom(inst, opt, word);
    if (cmd_verify->parsed()) return run_verify(inst, opt, suite);
    if (cmd_dot->parsed()) return run_export_dot(inst, opt, radius);
    return 2;
  } catch (const bsl::Error& e) {
    std::cerr << "error [" << error_kind_name(e.kind()) << "]: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::Parse:
        return 2;
      case ErrorKind::Internal:
      case ErrorKind::OracleContract:
        return 3;
      default:
        return 2;
    }
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error [json]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error [internal]: " << e.what() << "\n";
    return 3;
  }
}
