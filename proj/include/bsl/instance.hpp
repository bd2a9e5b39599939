#pragma once

#include <string>
#include <variant>

#include "json.hpp"

#include "bsl/amalgam.hpp"
#include "bsl/bs23.hpp"
#include "bsl/hnn.hpp"
#include "bsl/tokens.hpp"

namespace bsl {

struct Caps {
  int ball_radius = 8;
  int path_depth = 3;
  int syllable_length = 3;
};

struct AmalgamInstance {
  AmalgamFamily family;
  Caps caps;
};

struct HnnInstance {
  HnnFamily family;
  Caps caps;
};

struct Bs23Instance {
  Bs23Oracle oracle;
  Caps caps;
};

using Instance = std::variant<AmalgamInstance, HnnInstance, Bs23Instance>;

PermGroup perm_group_from_json(const nlohmann::json& j, const std::string& name);
nlohmann::json perm_group_to_json(const PermGroup& g);

// Config format:
//   {"family":"amalgam","gamma0":{...},"gamma1":{...},"caps":{...}}
//   {"family":"hnn","sigmaM":{...},"sigmaP":{...},"caps":{...}}
//   {"family":"bs23","caps":{...}}
// where a group block is {"domain":n,"basepoint":0,"generators":["(0 1)",...]}
// and caps is {"ballRadius":8,"pathDepth":3,"syllableLength":3}.
Instance instance_from_json(const nlohmann::json& j);

// Built-in defaults per family (Sym(3) groups) for runs without a config.
Instance default_instance(FamilyKind kind);

// Applies "name=value,..." overrides (the BSL_CAP_OVERRIDE format).
Caps caps_with_overrides(Caps caps, const std::string& override_text);

FamilyKind instance_kind(const Instance& inst);
const Caps& instance_caps(const Instance& inst);

nlohmann::json portrait_to_json(const Portrait& p);
nlohmann::json hnn_portrait_to_json(const HnnPortrait& p);

}  // namespace bsl
