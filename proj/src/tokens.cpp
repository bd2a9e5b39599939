#include "bsl/tokens.hpp"

#include <cctype>
#include <sstream>

#include "bsl/error.hpp"

namespace bsl {

namespace {

struct Cursor {
  const std::string& text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() { return text[pos]; }
  bool accept(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c))
      fail(ErrorKind::Parse, std::string("expected '") + c + "' at position " + std::to_string(pos));
  }
  long long integer() {
    skip_ws();
    size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
      fail(ErrorKind::Parse, "expected integer at position " + std::to_string(start));
    return std::stoll(text.substr(start, pos - start));
  }
  std::string until(char stop) {
    size_t start = pos;
    while (pos < text.size() && text[pos] != stop) ++pos;
    if (pos == text.size()) fail(ErrorKind::Parse, std::string("missing '") + stop + "'");
    return text.substr(start, pos - start);
  }
};

int global_domain(const HnnFamily& fam) { return fam.domain_size(-1) + fam.domain_size(1); }

}  // namespace

Perm gamma_to_global(const HnnFamily& fam, const GammaElem& g) {
  int m = fam.domain_size(-1);
  std::vector<int> img(global_domain(fam));
  for (int i = 0; i < m; ++i) img[i] = g.sm(i);
  for (int i = 0; i < fam.domain_size(1); ++i) img[m + i] = m + g.sp(i);
  return Perm(img);
}

GammaElem gamma_from_global(const HnnFamily& fam, const Perm& p) {
  int m = fam.domain_size(-1);
  if (p.degree() != global_domain(fam))
    fail(ErrorKind::Parse, "permutation degree does not match the disjoint union");
  std::vector<int> im(m), ip(fam.domain_size(1));
  for (int i = 0; i < m; ++i) {
    if (p(i) >= m) fail(ErrorKind::Parse, "permutation mixes the two index sets");
    im[i] = p(i);
  }
  for (int i = 0; i < fam.domain_size(1); ++i) {
    if (p(m + i) < m) fail(ErrorKind::Parse, "permutation mixes the two index sets");
    ip[i] = p(m + i) - m;
  }
  GammaElem g{Perm(im), Perm(ip)};
  if (!fam.in_gamma(g)) fail(ErrorKind::Parse, "permutation is not an element of the product group");
  return g;
}

namespace {

Token parse_atom(Cursor& cur, const TokenContext& ctx) {
  cur.skip_ws();
  if (cur.pos >= cur.text.size()) fail(ErrorKind::Parse, "expected a generator atom");
  char c = cur.peek();
  Token tok;
  if (c == 't') {
    ++cur.pos;
    if (ctx.kind == FamilyKind::Amalgam) fail(ErrorKind::Parse, "'t' is not a generator of this family");
    tok.atom = TokTau{};
  } else if (c == 'b') {
    ++cur.pos;
    if (ctx.kind != FamilyKind::Bs23) fail(ErrorKind::Parse, "'b' is not a generator of this family");
    tok.atom = TokB{};
  } else if (c == '1') {
    ++cur.pos;
    tok.atom = TokB{};
    tok.power = 0;
    if (ctx.kind != FamilyKind::Bs23) {
      // identity atom in the portrait families: an empty g-token
      if (ctx.kind == FamilyKind::Amalgam)
        tok.atom = TokAmalgamG{0, Perm(ctx.amalgam->domain_size(0))};
      else
        tok.atom = TokHnnTop{ctx.hnn->gamma_identity()};
      tok.power = 1;
    }
    return tok;  // no power suffix on "1"
  } else if (c == 'g') {
    if (ctx.kind != FamilyKind::Amalgam) fail(ErrorKind::Parse, "'g' generators belong to the amalgam family");
    ++cur.pos;
    long long j = cur.integer();
    if (j != 0 && j != 1) fail(ErrorKind::Parse, "generator side must be 0 or 1");
    cur.expect('[');
    std::string perm_text = cur.until(']');
    cur.expect(']');
    Perm sigma = Perm::from_cycles(perm_text, ctx.amalgam->domain_size(static_cast<int>(j)));
    if (!ctx.amalgam->gamma(static_cast<int>(j)).contains(sigma))
      fail(ErrorKind::Parse, "permutation is not an element of gamma" + std::to_string(j));
    tok.atom = TokAmalgamG{static_cast<int>(j), sigma};
  } else if (c == 'h') {
    ++cur.pos;
    cur.skip_ws();
    bool amalgam_h = cur.pos < cur.text.size() && std::isdigit(static_cast<unsigned char>(cur.peek()));
    if (amalgam_h != (ctx.kind == FamilyKind::Amalgam))
      fail(ErrorKind::Parse, "h-generator form does not match the family");
    if (amalgam_h) {
      long long j = cur.integer();
      if (j != 0 && j != 1) fail(ErrorKind::Parse, "generator side must be 0 or 1");
      cur.expect('[');
      std::string body = cur.until(']');
      cur.expect(']');
      size_t semi = body.find(';');
      if (semi == std::string::npos) fail(ErrorKind::Parse, "h-generator needs 'path;perm'");
      std::vector<int> path;
      {
        std::istringstream in(body.substr(0, semi));
        std::string item;
        while (std::getline(in, item, ',')) {
          if (item.find_first_not_of(" \t") == std::string::npos)
            fail(ErrorKind::Parse, "empty path entry");
          path.push_back(std::stoi(item));
        }
      }
      if (path.empty()) fail(ErrorKind::Parse, "h-generator path is empty");
      int sigma_side = (static_cast<int>(j) + static_cast<int>(path.size())) % 2;
      Perm sigma = Perm::from_cycles(body.substr(semi + 1), ctx.amalgam->domain_size(sigma_side));
      tok.atom = TokAmalgamH{static_cast<int>(j), std::move(path), sigma};
      // defer subgroup/path validation to the evaluator for a precise error
      amalgam_token_elem(*ctx.amalgam, tok);
    } else {
      if (ctx.kind != FamilyKind::Hnn) fail(ErrorKind::Parse, "h-generators belong to the portrait families");
      cur.expect('[');
      std::string body = cur.until(']');
      cur.expect(']');
      size_t semi = body.find(';');
      if (semi == std::string::npos) {
        Perm global = Perm::from_cycles(body, global_domain(*ctx.hnn));
        tok.atom = TokHnnTop{gamma_from_global(*ctx.hnn, global)};
      } else {
        std::vector<HnnStep> path;
        Cursor pc{body, 0};
        for (;;) {
          pc.skip_ws();
          if (pc.pos >= semi) break;
          pc.expect('(');
          long long i = pc.integer();
          pc.expect(',');
          long long e = pc.integer();
          pc.expect(')');
          if (e != 1 && e != -1) fail(ErrorKind::Parse, "step sign must be 1 or -1");
          path.push_back({static_cast<int>(e), static_cast<int>(i)});
          pc.skip_ws();
          if (pc.pos < semi && pc.peek() == ',') ++pc.pos;
        }
        if (path.empty()) fail(ErrorKind::Parse, "h-generator path is empty");
        Perm global = Perm::from_cycles(body.substr(semi + 1), global_domain(*ctx.hnn));
        tok.atom = TokHnnPath{std::move(path), gamma_from_global(*ctx.hnn, global)};
        hnn_token_letters(*ctx.hnn, tok);  // validates path and label
      }
    }
  } else {
    fail(ErrorKind::Parse, std::string("unknown generator '") + c + "' at position " + std::to_string(cur.pos));
  }
  cur.skip_ws();
  if (cur.pos < cur.text.size() && cur.peek() == '^') {
    ++cur.pos;
    tok.power = cur.integer();
  }
  return tok;
}

}  // namespace

std::vector<Token> parse_word_text(const std::string& text, const TokenContext& ctx) {
  std::vector<Token> out;
  Cursor cur{text, 0};
  bool first = true;
  while (!cur.done()) {
    if (!first) {
      // '*' separators are optional between whitespace-separated atoms
      cur.accept('*');
      if (cur.done()) fail(ErrorKind::Parse, "dangling '*'");
    }
    out.push_back(parse_atom(cur, ctx));
    first = false;
  }
  if (first) fail(ErrorKind::Parse, "empty word text");
  return out;
}

namespace {

std::string atom_text(const Token& tok, const TokenContext& ctx) {
  std::ostringstream out;
  if (std::holds_alternative<TokTau>(tok.atom)) {
    out << 't';
  } else if (std::holds_alternative<TokB>(tok.atom)) {
    out << 'b';
  } else if (const auto* g = std::get_if<TokAmalgamG>(&tok.atom)) {
    out << 'g' << g->j << '[' << g->sigma.cycles() << ']';
  } else if (const auto* h = std::get_if<TokAmalgamH>(&tok.atom)) {
    out << 'h' << h->j << '[';
    for (size_t k = 0; k < h->path.size(); ++k) out << (k ? "," : "") << h->path[k];
    out << ';' << h->sigma.cycles() << ']';
  } else if (const auto* t = std::get_if<TokHnnTop>(&tok.atom)) {
    out << "h[" << gamma_to_global(*ctx.hnn, t->sigma).cycles() << ']';
  } else if (const auto* p = std::get_if<TokHnnPath>(&tok.atom)) {
    out << "h[";
    for (size_t k = 0; k < p->path.size(); ++k)
      out << (k ? "," : "") << '(' << p->path[k].index << ',' << p->path[k].eps << ')';
    out << ';' << gamma_to_global(*ctx.hnn, p->sigma).cycles() << ']';
  }
  if (tok.power != 1) out << '^' << tok.power;
  return out.str();
}

}  // namespace

std::string print_word_text(const std::vector<Token>& tokens, const TokenContext& ctx) {
  if (tokens.empty()) return "1";
  std::ostringstream out;
  for (size_t k = 0; k < tokens.size(); ++k) {
    if (k) out << " * ";
    out << atom_text(tokens[k], ctx);
  }
  return out.str();
}

Portrait amalgam_token_elem(const AmalgamFamily& fam, const Token& tok) {
  Portrait base = fam.identity();
  if (const auto* g = std::get_if<TokAmalgamG>(&tok.atom))
    base = fam.gen_g(g->j, g->sigma);
  else if (const auto* h = std::get_if<TokAmalgamH>(&tok.atom))
    base = fam.gen_h(h->j, h->path, h->sigma);
  else
    fail(ErrorKind::Domain, "token does not belong to the amalgam family");
  Portrait out = fam.identity();
  Portrait step = tok.power >= 0 ? base : fam.inv(base);
  for (long long k = 0; k < std::llabs(tok.power); ++k) out = fam.mul(out, step);
  return out;
}

std::vector<HnnLetter<HnnOracle>> hnn_token_letters(const HnnFamily& fam, const Token& tok) {
  std::vector<HnnLetter<HnnOracle>> out;
  if (std::holds_alternative<TokTau>(tok.atom)) {
    int sign = tok.power >= 0 ? 1 : -1;
    for (long long k = 0; k < std::llabs(tok.power); ++k) out.push_back(sign);
    return out;
  }
  HnnPortrait base;
  if (const auto* t = std::get_if<TokHnnTop>(&tok.atom))
    base = fam.gen_top(t->sigma);
  else if (const auto* p = std::get_if<TokHnnPath>(&tok.atom))
    base = fam.gen_path(p->path, p->sigma);
  else
    fail(ErrorKind::Domain, "token does not belong to the HNN family");
  HnnPortrait acc = fam.identity();
  HnnPortrait step = tok.power >= 0 ? base : fam.inv(base);
  for (long long k = 0; k < std::llabs(tok.power); ++k) acc = fam.mul(acc, step);
  out.push_back(acc);
  return out;
}

std::vector<HnnLetter<Bs23Oracle>> bs23_token_letters(const Token& tok) {
  std::vector<HnnLetter<Bs23Oracle>> out;
  if (std::holds_alternative<TokTau>(tok.atom)) {
    int sign = tok.power >= 0 ? 1 : -1;
    for (long long k = 0; k < std::llabs(tok.power); ++k) out.push_back(sign);
    return out;
  }
  if (std::holds_alternative<TokB>(tok.atom)) {
    out.push_back(static_cast<std::int64_t>(tok.power));
    return out;
  }
  fail(ErrorKind::Domain, "token does not belong to the BS(2,3) family");
}

namespace {

void expand_amalgam_q(const AmalgamFamily& fam, const Portrait& q, int start_side,
                      std::vector<int>& path, std::vector<Token>& out) {
  for (const auto& [slot, child] : q.children) {
    path.push_back(slot);
    expand_amalgam_q(fam, child, start_side, path, out);
    path.pop_back();
  }
  if (!q.top.is_identity()) {
    if (path.empty())
      out.push_back({TokAmalgamG{q.side, q.top}, 1});
    else
      out.push_back({TokAmalgamH{start_side, path, q.top}, 1});
  }
}

}  // namespace

std::vector<Token> portrait_to_tokens(const AmalgamFamily& fam, const Portrait& p) {
  std::vector<Token> out;
  int j = p.side;
  std::vector<int> path;
  for (const auto& [slot, child] : p.children) {
    if (slot == fam.basepoint(j)) {
      // the other-side factor of H, expanded in its own coordinates
      expand_amalgam_q(fam, child, 1 - j, path, out);
    } else {
      path.push_back(slot);
      expand_amalgam_q(fam, child, j, path, out);
      path.pop_back();
    }
  }
  if (!p.top.is_identity()) out.push_back({TokAmalgamG{j, p.top}, 1});
  return out;
}

namespace {

void expand_hnn(const HnnFamily& fam, const HnnPortrait& node, std::vector<HnnStep>& path,
                std::vector<Token>& out) {
  for (const auto& [step, child] : node.children) {
    path.push_back(step);
    expand_hnn(fam, child, path, out);
    path.pop_back();
  }
  if (!node.label.is_identity()) {
    if (path.empty())
      out.push_back({TokHnnTop{node.label}, 1});
    else
      out.push_back({TokHnnPath{path, node.label}, 1});
  }
}

}  // namespace

std::vector<Token> hnn_portrait_to_tokens(const HnnFamily& fam, const HnnPortrait& p) {
  if (p.ctx != 0) fail(ErrorKind::Domain, "expansion expects a root portrait");
  std::vector<Token> out;
  std::vector<HnnStep> path;
  expand_hnn(fam, p, path, out);
  return out;
}

std::vector<Token> word_tokens(const AmalgamFamily& fam, const AmalgamWord<AmalgamOracle>& w) {
  std::vector<Token> tokens;
  for (const AmalgamSyllable& s : w.syllables)
    tokens.push_back({TokAmalgamG{s.side, fam.transversal(s.side).at(s.rep)}, 1});
  for (Token& t : portrait_to_tokens(fam, w.tail)) tokens.push_back(std::move(t));
  return tokens;
}

std::vector<Token> word_tokens(const HnnFamily& fam, const HnnWord<HnnOracle>& w) {
  std::vector<Token> tokens;
  for (const HnnSyllable& s : w.syllables) {
    if (s.rep != 0) {
      GammaElem rep = fam.gamma_from_sigma(-s.eps, fam.sigma(-s.eps).transversal(0).at(s.rep));
      tokens.push_back({TokHnnTop{rep}, 1});
    }
    tokens.push_back({TokTau{}, s.eps});
  }
  for (Token& t : hnn_portrait_to_tokens(fam, w.tail)) tokens.push_back(std::move(t));
  return tokens;
}

std::vector<Token> word_tokens(const HnnWord<Bs23Oracle>& w) {
  std::vector<Token> tokens;
  for (const HnnSyllable& s : w.syllables) {
    if (s.rep != 0) tokens.push_back({TokB{}, s.rep});
    tokens.push_back({TokTau{}, s.eps});
  }
  if (w.tail != 0) tokens.push_back({TokB{}, w.tail});
  return tokens;
}

std::string word_text(const AmalgamFamily& fam, const AmalgamWord<AmalgamOracle>& w) {
  return print_word_text(word_tokens(fam, w), TokenContext{FamilyKind::Amalgam, &fam, nullptr});
}

std::string word_text(const HnnFamily& fam, const HnnWord<HnnOracle>& w) {
  return print_word_text(word_tokens(fam, w), TokenContext{FamilyKind::Hnn, nullptr, &fam});
}

std::string word_text(const HnnWord<Bs23Oracle>& w) {
  return print_word_text(word_tokens(w), TokenContext{FamilyKind::Bs23, nullptr, nullptr});
}

std::string vertex_text(const AmalgamVertex& v, const AmalgamFamily& fam) {
  std::string marker = v.side == 0 ? "<G0>" : "<G1>";
  if (v.prefix.empty()) return marker;
  AmalgamWord<AmalgamOracle> w{v.prefix, fam.identity()};
  return word_text(fam, w) + " " + marker;
}

std::string vertex_text(const HnnVertex& v, const HnnFamily& fam) {
  if (v.prefix.empty()) return "<G>";
  HnnWord<HnnOracle> w{v.prefix, fam.identity()};
  return word_text(fam, w) + " <G>";
}

std::string vertex_text(const HnnVertex& v) {
  if (v.prefix.empty()) return "<b>";
  Bs23Oracle o;
  HnnWord<Bs23Oracle> w{v.prefix, o.identity()};
  return word_text(w) + " <b>";
}

}  // namespace bsl
