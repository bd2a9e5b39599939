#include "bsl/instance.hpp"

#include <sstream>

#include "bsl/error.hpp"

namespace bsl {

PermGroup perm_group_from_json(const nlohmann::json& j, const std::string& name) {
  if (!j.is_object() || !j.contains("domain") || !j.contains("generators"))
    fail(ErrorKind::Parse, "group block needs 'domain' and 'generators'");
  int domain = j.at("domain").get<int>();
  int basepoint = j.value("basepoint", 0);
  std::vector<Perm> gens;
  for (const auto& g : j.at("generators")) gens.push_back(Perm::from_cycles(g.get<std::string>(), domain));
  return PermGroup(domain, basepoint, std::move(gens), j.value("name", name));
}

nlohmann::json perm_group_to_json(const PermGroup& g) {
  nlohmann::json out;
  out["domain"] = g.degree();
  out["basepoint"] = g.basepoint();
  nlohmann::json gens = nlohmann::json::array();
  for (const Perm& p : g.generators()) gens.push_back(p.cycles());
  out["generators"] = gens;
  if (!g.name().empty()) out["name"] = g.name();
  return out;
}

namespace {

Caps caps_from_json(const nlohmann::json& j) {
  Caps caps;
  if (j.contains("caps")) {
    const auto& c = j.at("caps");
    caps.ball_radius = c.value("ballRadius", caps.ball_radius);
    caps.path_depth = c.value("pathDepth", caps.path_depth);
    caps.syllable_length = c.value("syllableLength", caps.syllable_length);
  }
  if (caps.ball_radius <= 0 || caps.path_depth <= 0 || caps.syllable_length <= 0)
    fail(ErrorKind::Parse, "caps must be positive");
  return caps;
}

}  // namespace

Instance instance_from_json(const nlohmann::json& j) {
  std::string family = j.value("family", "");
  Caps caps = caps_from_json(j);
  if (family == "amalgam") {
    if (!j.contains("gamma0") || !j.contains("gamma1"))
      fail(ErrorKind::Parse, "amalgam config needs gamma0 and gamma1");
    return AmalgamInstance{AmalgamFamily(perm_group_from_json(j.at("gamma0"), "gamma0"),
                                         perm_group_from_json(j.at("gamma1"), "gamma1")),
                           caps};
  }
  if (family == "hnn") {
    if (!j.contains("sigmaM") || !j.contains("sigmaP"))
      fail(ErrorKind::Parse, "hnn config needs sigmaM and sigmaP");
    return HnnInstance{HnnFamily(perm_group_from_json(j.at("sigmaM"), "sigmaM"),
                                 perm_group_from_json(j.at("sigmaP"), "sigmaP")),
                       caps};
  }
  if (family == "bs23") return Bs23Instance{Bs23Oracle{}, caps};
  fail(ErrorKind::Parse, "unknown family '" + family + "'");
}

Instance default_instance(FamilyKind kind) {
  PermGroup sym3(3, 0, {Perm::from_cycles("(0 1 2)", 3), Perm::from_cycles("(0 1)", 3)}, "sym3");
  switch (kind) {
    case FamilyKind::Amalgam:
      return AmalgamInstance{AmalgamFamily(sym3, sym3), Caps{}};
    case FamilyKind::Hnn:
      return HnnInstance{HnnFamily(sym3, sym3), Caps{}};
    case FamilyKind::Bs23:
      return Bs23Instance{Bs23Oracle{}, Caps{}};
  }
  fail(ErrorKind::Internal, "unreachable family kind");
}

Caps caps_with_overrides(Caps caps, const std::string& override_text) {
  std::istringstream in(override_text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    size_t eq = item.find('=');
    if (eq == std::string::npos) fail(ErrorKind::Parse, "cap override needs name=value");
    std::string name = item.substr(0, eq);
    int value = std::stoi(item.substr(eq + 1));
    if (value <= 0) fail(ErrorKind::Parse, "cap values must be positive");
    if (name == "ballRadius")
      caps.ball_radius = value;
    else if (name == "pathDepth")
      caps.path_depth = value;
    else if (name == "syllableLength")
      caps.syllable_length = value;
    else
      fail(ErrorKind::Parse, "unknown cap '" + name + "'");
  }
  return caps;
}

FamilyKind instance_kind(const Instance& inst) {
  if (std::holds_alternative<AmalgamInstance>(inst)) return FamilyKind::Amalgam;
  if (std::holds_alternative<HnnInstance>(inst)) return FamilyKind::Hnn;
  return FamilyKind::Bs23;
}

const Caps& instance_caps(const Instance& inst) {
  return std::visit([](const auto& i) -> const Caps& { return i.caps; }, inst);
}

nlohmann::json portrait_to_json(const Portrait& p) {
  nlohmann::json out;
  out["side"] = p.side;
  out["top"] = p.top.cycles();
  nlohmann::json kids = nlohmann::json::object();
  for (const auto& [slot, c] : p.children) kids[std::to_string(slot)] = portrait_to_json(c);
  out["children"] = kids;
  return out;
}

nlohmann::json hnn_portrait_to_json(const HnnPortrait& p) {
  nlohmann::json out;
  out["label"] = nlohmann::json{{"sigmaM", p.label.sm.cycles()}, {"sigmaP", p.label.sp.cycles()}};
  nlohmann::json kids = nlohmann::json::object();
  for (const auto& [step, c] : p.children)
    kids[std::to_string(step.index) + "," + std::to_string(step.eps)] = hnn_portrait_to_json(c);
  out["children"] = kids;
  return out;
}

}  // namespace bsl
