#include "stealthsim/descriptor.hpp"

#include <initializer_list>
#include <json.hpp>

namespace stealthsim {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ParseError(where + ": unknown key '" + key + "'");
  }
}

AsId asn_at(const json& v, const std::string& where) {
  if (!v.is_number_unsigned()) throw ParseError(where + ": expected an AS number");
  auto x = v.get<std::uint64_t>();
  if (x == 0 || x > 0xFFFFFFFFull) throw ParseError(where + ": AS number out of range");
  return AsId(static_cast<std::uint32_t>(x));
}

std::vector<AsId> asn_list(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array of AS numbers");
  std::vector<AsId> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(asn_at(v[i], where + "/" + std::to_string(i)));
  return out;
}

std::string string_at(const json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": expected a string");
  return v.get<std::string>();
}

template <typename Fn>
auto wrap(const std::string& where, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    std::string msg = e.what();
    if (msg.rfind('/', 0) == 0) throw;
    throw ParseError(where + ": " + msg);
  }
}

std::size_t count_at(const json& v, const std::string& where) {
  if (!v.is_number_unsigned()) throw ParseError(where + ": expected a non-negative integer");
  return v.get<std::size_t>();
}

RovPolicy parse_rov(const json& rov, DefenseConfig& defense) {
  reject_unknown(rov, "/defenses/rov", {"enforcers", "roas", "victim_roa_max_length"});
  RovPolicy policy;
  if (rov.contains("enforcers")) {
    const auto& e = rov["enforcers"];
    if (e.is_string()) {
      if (e.get<std::string>() != "all")
        throw ParseError("/defenses/rov/enforcers: expected \"all\" or an array of AS numbers");
    } else {
      auto list = asn_list(e, "/defenses/rov/enforcers");
      policy.enforcers = std::set<AsId>(list.begin(), list.end());
    }
  }
  if (rov.contains("roas")) {
    const auto& roas = rov["roas"];
    if (!roas.is_array()) throw ParseError("/defenses/rov/roas: expected an array");
    for (std::size_t i = 0; i < roas.size(); ++i) {
      std::string where = "/defenses/rov/roas/" + std::to_string(i);
      reject_unknown(roas[i], where, {"prefix", "max_length", "origin"});
      for (auto key : {"prefix", "max_length", "origin"})
        if (!roas[i].contains(key)) throw ParseError(where + ": missing '" + key + "'");
      Prefix p = wrap(where + "/prefix", [&] { return Prefix::parse(string_at(roas[i]["prefix"], where + "/prefix")); });
      auto max_len = count_at(roas[i]["max_length"], where + "/max_length");
      if (max_len > 32) throw ParseError(where + "/max_length: must be <= 32");
      Roa roa{p, static_cast<std::uint8_t>(max_len), asn_at(roas[i]["origin"], where + "/origin")};
      try {
        roa.validate();
      } catch (const ConfigError& e) {
        throw ParseError(where + ": " + e.what());
      }
      policy.roas.push_back(roa);
    }
  }
  if (rov.contains("victim_roa_max_length")) {
    auto m = count_at(rov["victim_roa_max_length"], "/defenses/rov/victim_roa_max_length");
    if (m > 32) throw ParseError("/defenses/rov/victim_roa_max_length: must be <= 32");
    defense.victim_roa_max_length = static_cast<std::uint8_t>(m);
  }
  return policy;
}

}  // namespace

ExperimentSpec parse_scenario_descriptor(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  reject_unknown(doc, "/", {"victim_asn", "victim_prefix", "adversary_asn", "targets", "strategy",
                            "kind", "communities", "community_registry", "spoof_victim_origin",
                            "injection", "sample_size", "defenses"});

  ExperimentSpec spec;
  if (doc.contains("victim_asn")) spec.victim = asn_at(doc["victim_asn"], "/victim_asn");
  if (doc.contains("victim_prefix"))
    spec.victim_prefix = wrap("/victim_prefix", [&] {
      return Prefix::parse(string_at(doc["victim_prefix"], "/victim_prefix"));
    });
  if (doc.contains("adversary_asn")) spec.adversary = asn_at(doc["adversary_asn"], "/adversary_asn");

  if (doc.contains("targets") == doc.contains("strategy"))
    throw ParseError("/: exactly one of 'targets' or 'strategy' is required");
  if (doc.contains("targets")) {
    spec.strategy = FixedTargets{asn_list(doc["targets"], "/targets")};
  } else {
    const auto& s = doc["strategy"];
    reject_unknown(s, "/strategy", {"fixed_list", "top_cone_k"});
    if (s.size() != 1) throw ParseError("/strategy: expected exactly one of 'fixed_list' or 'top_cone_k'");
    if (s.contains("fixed_list")) {
      spec.strategy = FixedTargets{asn_list(s["fixed_list"], "/strategy/fixed_list")};
    } else {
      auto k = count_at(s["top_cone_k"], "/strategy/top_cone_k");
      if (k == 0) throw ParseError("/strategy/top_cone_k: must be at least 1");
      spec.strategy = TopConeTargets{k};
    }
  }

  if (doc.contains("kind"))
    spec.kind = wrap("/kind", [&] { return parse_attack_kind(string_at(doc["kind"], "/kind")); });
  if (doc.contains("communities")) {
    const auto& c = doc["communities"];
    if (!c.is_array()) throw ParseError("/communities: expected an array of \"high:low\" strings");
    CommunitySet set;
    for (std::size_t i = 0; i < c.size(); ++i) {
      std::string where = "/communities/" + std::to_string(i);
      set.insert(wrap(where, [&] { return Community::parse(string_at(c[i], where)); }));
    }
    spec.attack.communities = std::move(set);
  }
  if (doc.contains("community_registry")) {
    const auto& r = doc["community_registry"];
    if (!r.is_array()) throw ParseError("/community_registry: expected an array");
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::string where = "/community_registry/" + std::to_string(i);
      reject_unknown(r[i], where, {"scope", "community", "action"});
      for (auto key : {"scope", "community", "action"})
        if (!r[i].contains(key)) throw ParseError(where + ": missing '" + key + "'");
      AsId scope = asn_at(r[i]["scope"], where + "/scope");
      Community c = wrap(where + "/community", [&] { return Community::parse(string_at(r[i]["community"], where + "/community")); });
      CommunityAction a = wrap(where + "/action", [&] { return parse_community_action(string_at(r[i]["action"], where + "/action")); });
      spec.registry.add_scoped(scope, c, a);
    }
  }
  if (doc.contains("spoof_victim_origin")) {
    if (!doc["spoof_victim_origin"].is_boolean()) throw ParseError("/spoof_victim_origin: expected a boolean");
    spec.attack.spoof_victim_origin = doc["spoof_victim_origin"].get<bool>();
  }
  if (doc.contains("injection")) {
    if (!doc["injection"].is_boolean()) throw ParseError("/injection: expected a boolean");
    spec.infected_injection = doc["injection"].get<bool>();
  }
  if (doc.contains("sample_size")) spec.sample_size = count_at(doc["sample_size"], "/sample_size");

  if (doc.contains("defenses")) {
    const auto& d = doc["defenses"];
    reject_unknown(d, "/defenses", {"rewrite_at", "rov"});
    if (d.contains("rewrite_at")) {
      auto list = asn_list(d["rewrite_at"], "/defenses/rewrite_at");
      spec.defense.rewrite_no_export_at = std::set<AsId>(list.begin(), list.end());
    }
    if (d.contains("rov")) spec.defense.rov = parse_rov(d["rov"], spec.defense);
  }
  return spec;
}

}  // namespace stealthsim
