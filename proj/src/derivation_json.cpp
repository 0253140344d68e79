#include "pcfh/derivation_json.hpp"

#include <json.hpp>

#include "pcfh/parser.hpp"

namespace pcfh {

namespace {

using nlohmann::json;

json multitypeToJson(const Multitype& t) {
  Multitype c = canonicalize(t);
  json members = json::array();
  for (const TypeH& m : c.members) members.push_back(printType(m));
  return json{{"nature", natureStr(c.nature)}, {"members", members}};
}

json optToJson(const OptMultitype& t) {
  if (!t) return json("bot");
  return multitypeToJson(*t);
}

json judgmentToJson(const Judgment& j) {
  json family = json::object();
  for (const auto& [x, f] : j.family.entries()) {
    json members = json::array();
    MultitypeFamily c = MultitypeFamily::of(f.members);
    for (const Multitype& m : c.members) members.push_back(multitypeToJson(m));
    family[x] = members;
  }
  json typing = json::object();
  for (const auto& [x, t] : j.typing.entries()) typing[x] = multitypeToJson(t);
  json counter{{"B", j.counter.get(RuleName::B)},
               {"I0", j.counter.get(RuleName::I0)},
               {"IS", j.counter.get(RuleName::IS)},
               {"F", j.counter.get(RuleName::F)}};
  return json{{"family", family},
              {"typing", typing},
              {"counter", counter},
              {"term", printTerm(j.subject)},
              {"type", multitypeToJson(j.result)}};
}

json nodeToJson(const DerivPtr& d) {
  json node{{"rule", ruleStr(d->rule)}, {"judgment", judgmentToJson(d->conclusion)}};
  if (const auto* w = std::get_if<AbsWitness>(&d->witness)) {
    json binders = json::array();
    for (const OptMultitype& a : w->binderAssumptions)
      binders.push_back(optToJson(a));
    node["witness"] = json{{"binders", binders}};
  } else if (const auto* w = std::get_if<AppWitness>(&d->witness)) {
    node["witness"] =
        json{{"arg", optToJson(w->arg)}, {"target", multitypeToJson(w->target)}};
  } else if (const auto* w = std::get_if<SuccWitness>(&d->witness)) {
    json split = json::array();
    for (const Multitype& m : w->split) split.push_back(multitypeToJson(m));
    node["witness"] = json{{"split", split}};
  } else if (const auto* w = std::get_if<IfSuccWitness>(&d->witness)) {
    node["witness"] =
        json{{"pred", optToJson(w->pred)}, {"target", multitypeToJson(w->target)}};
  } else if (const auto* w = std::get_if<FixWitness>(&d->witness)) {
    json fam = json::array();
    for (const Multitype& m : w->family) fam.push_back(multitypeToJson(m));
    node["witness"] = json{{"family", fam}};
  }
  json premises = json::array();
  for (const DerivPtr& p : d->premises) premises.push_back(nodeToJson(p));
  node["premises"] = premises;
  return node;
}

Multitype multitypeFromJson(const json& v) {
  if (!v.is_object() || !v.contains("nature") || !v.contains("members"))
    throw JsonError("multitype must be {nature, members}");
  std::string nat = v["nature"].get<std::string>();
  Nature n;
  if (nat == "nat") n = Nature::Nat;
  else if (nat == "abs") n = Nature::Abs;
  else throw JsonError("unknown nature '" + nat + "'");
  std::vector<TypeH> members;
  for (const json& m : v["members"]) {
    if (!m.is_string()) throw JsonError("multitype members must be type strings");
    try {
      members.push_back(parseType(m.get<std::string>()));
    } catch (const TypeError& e) {
      throw JsonError(std::string("bad type string: ") + e.what());
    }
  }
  try {
    return Multitype::of(n, std::move(members));
  } catch (const TypeError& e) {
    throw JsonError(e.what());
  }
}

OptMultitype optFromJson(const json& v) {
  if (v.is_string() && v.get<std::string>() == "bot") return std::nullopt;
  return multitypeFromJson(v);
}

Judgment judgmentFromJson(const json& v) {
  if (!v.is_object()) throw JsonError("judgment must be an object");
  for (const char* key : {"family", "typing", "counter", "term", "type"})
    if (!v.contains(key))
      throw JsonError(std::string("judgment missing '") + key + "'");
  Judgment j;
  for (const auto& [x, fam] : v["family"].items()) {
    std::vector<Multitype> members;
    for (const json& m : fam) members.push_back(multitypeFromJson(m));
    j.family.assign(x, MultitypeFamily::of(std::move(members)));
  }
  for (const auto& [x, t] : v["typing"].items())
    j.typing.assign(x, optFromJson(t));
  const json& c = v["counter"];
  for (RuleName r : allRuleNames) {
    const char* k = ruleNameStr(r);
    if (c.contains(k)) j.counter.add(r, c[k].get<std::uint64_t>());
  }
  try {
    j.subject = parseTerm(v["term"].get<std::string>());
  } catch (const ParseError& e) {
    throw JsonError(std::string("bad term: ") + e.what());
  }
  j.result = multitypeFromJson(v["type"]);
  return j;
}

DerivPtr nodeFromJson(const json& v) {
  if (!v.is_object()) throw JsonError("derivation node must be an object");
  if (!v.contains("rule") || !v.contains("judgment") || !v.contains("premises"))
    throw JsonError("node must have rule, judgment and premises");
  auto rule = ruleFromStr(v["rule"].get<std::string>());
  if (!rule) throw JsonError("unknown rule '" + v["rule"].get<std::string>() + "'");

  auto d = std::make_shared<Derivation>();
  d->rule = *rule;
  d->conclusion = judgmentFromJson(v["judgment"]);
  for (const json& p : v["premises"]) d->premises.push_back(nodeFromJson(p));

  const json w = v.contains("witness") ? v["witness"] : json::object();
  auto field = [&](const char* k) -> const json& {
    if (!w.contains(k))
      throw JsonError(std::string("witness missing '") + k + "' for rule " +
                      ruleStr(*rule));
    return w[k];
  };
  switch (*rule) {
    case Rule::TAbs: {
      AbsWitness aw;
      for (const json& b : field("binders"))
        aw.binderAssumptions.push_back(optFromJson(b));
      d->witness = std::move(aw);
      break;
    }
    case Rule::TApp:
      d->witness = AppWitness{optFromJson(field("arg")),
                              multitypeFromJson(field("target"))};
      break;
    case Rule::TSucc: {
      SuccWitness sw;
      for (const json& m : field("split")) sw.split.push_back(multitypeFromJson(m));
      d->witness = std::move(sw);
      break;
    }
    case Rule::TIfSucc:
      d->witness = IfSuccWitness{optFromJson(field("pred")),
                                 multitypeFromJson(field("target"))};
      break;
    case Rule::TFix: {
      FixWitness fw;
      for (const json& m : field("family")) fw.family.push_back(multitypeFromJson(m));
      d->witness = std::move(fw);
      break;
    }
    default:
      d->witness = std::monostate{};
      break;
  }
  return d;
}

}  // namespace

std::string derivationToJson(const DerivPtr& d, int indent) {
  return nodeToJson(d).dump(indent);
}

DerivPtr derivationFromJson(const std::string& text) {
  json v;
  try {
    v = json::parse(text);
  } catch (const json::parse_error& e) {
    throw JsonError(std::string("invalid JSON: ") + e.what());
  }
  return nodeFromJson(v);
}

}  // namespace pcfh
