#pragma once

#include <string>
#include <variant>
#include <vector>

#include "bsl/amalgam.hpp"
#include "bsl/bs23.hpp"
#include "bsl/hnn.hpp"
#include "bsl/oracles.hpp"
#include "bsl/words.hpp"

namespace bsl {

// Word grammar atoms:
//   amalgam    g<j>[perm]          h<j>[i1,...,in;perm]
//   hnn        h[perm]             h[(i1,e1),...,(in,en);perm]      t
//   bs23       b                   t
// joined by '*' (whitespace insensitive), with integer powers '^k'.
// HNN perms use global indices on the disjoint union: points 0..m-1 are
// I_{-1} and points m.. are I_1.

struct TokAmalgamG {
  int j = 0;
  Perm sigma;
  friend bool operator==(const TokAmalgamG&, const TokAmalgamG&) = default;
};

struct TokAmalgamH {
  int j = 0;
  std::vector<int> path;
  Perm sigma;
  friend bool operator==(const TokAmalgamH&, const TokAmalgamH&) = default;
};

struct TokHnnTop {
  GammaElem sigma;
  friend bool operator==(const TokHnnTop&, const TokHnnTop&) = default;
};

struct TokHnnPath {
  std::vector<HnnStep> path;
  GammaElem sigma;
  friend bool operator==(const TokHnnPath&, const TokHnnPath&) = default;
};

struct TokTau {
  friend bool operator==(const TokTau&, const TokTau&) = default;
};

struct TokB {
  friend bool operator==(const TokB&, const TokB&) = default;
};

struct Token {
  std::variant<TokAmalgamG, TokAmalgamH, TokHnnTop, TokHnnPath, TokTau, TokB> atom;
  long long power = 1;
  friend bool operator==(const Token&, const Token&) = default;
};

enum class FamilyKind { Amalgam, Hnn, Bs23 };

// Family context used for domain validation while parsing and for printing.
struct TokenContext {
  FamilyKind kind = FamilyKind::Bs23;
  const AmalgamFamily* amalgam = nullptr;
  const HnnFamily* hnn = nullptr;
};

std::vector<Token> parse_word_text(const std::string& text, const TokenContext& ctx);
std::string print_word_text(const std::vector<Token>& tokens, const TokenContext& ctx);

// GammaElem <-> single permutation on the disjoint union (I_{-1} first).
Perm gamma_to_global(const HnnFamily& fam, const GammaElem& g);
GammaElem gamma_from_global(const HnnFamily& fam, const Perm& p);

// Token evaluation.
Portrait amalgam_token_elem(const AmalgamFamily& fam, const Token& tok);
std::vector<HnnLetter<HnnOracle>> hnn_token_letters(const HnnFamily& fam, const Token& tok);
std::vector<HnnLetter<Bs23Oracle>> bs23_token_letters(const Token& tok);

// Re-expansion of portraits into generator tokens; the token product
// multiplies back to the portrait.
std::vector<Token> portrait_to_tokens(const AmalgamFamily& fam, const Portrait& p);
std::vector<Token> hnn_portrait_to_tokens(const HnnFamily& fam, const HnnPortrait& p);

// Normal forms as token lists (reps expand to their generator tokens) and as
// grammar text; the identity renders as "1".
std::vector<Token> word_tokens(const AmalgamFamily& fam, const AmalgamWord<AmalgamOracle>& w);
std::vector<Token> word_tokens(const HnnFamily& fam, const HnnWord<HnnOracle>& w);
std::vector<Token> word_tokens(const HnnWord<Bs23Oracle>& w);
std::string word_text(const AmalgamFamily& fam, const AmalgamWord<AmalgamOracle>& w);
std::string word_text(const HnnFamily& fam, const HnnWord<HnnOracle>& w);
std::string word_text(const HnnWord<Bs23Oracle>& w);
std::string vertex_text(const AmalgamVertex& v, const AmalgamFamily& fam);
std::string vertex_text(const HnnVertex& v, const HnnFamily& fam);
std::string vertex_text(const HnnVertex& v);  // bs23

}  // namespace bsl
