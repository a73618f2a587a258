#include "stealthsim/scenario.hpp"

#include <algorithm>

namespace stealthsim {

std::string_view to_string(AttackKind k) {
  switch (k) {
    case AttackKind::SubPrefixStealthy: return "subprefix_stealthy";
    case AttackKind::SubPrefixLoud: return "subprefix_loud";
    case AttackKind::EquallySpecific: return "equally_specific";
  }
  return "?";
}

AttackKind parse_attack_kind(std::string_view text) {
  if (text == "subprefix_stealthy") return AttackKind::SubPrefixStealthy;
  if (text == "subprefix_loud") return AttackKind::SubPrefixLoud;
  if (text == "equally_specific") return AttackKind::EquallySpecific;
  throw ParseError("unknown attack kind '" + std::string(text) + "'");
}

void AttackScenario::validate(const CommunityRegistry& registry) const {
  const Prefix& v = victim.prefix;
  const Prefix& m = malicious.prefix;
  if (malicious.origin != adversary_as)
    throw ConfigError("malicious origination must come from the adversary AS");
  if (kind == AttackKind::EquallySpecific) {
    if (m != v) throw ConfigError("equally-specific attack must reuse " + v.to_string());
  } else if (!(v.contains(m) && m.length() > v.length())) {
    throw ConfigError(m.to_string() + " is not a sub-prefix of " + v.to_string());
  }
  if (kind == AttackKind::SubPrefixStealthy) {
    if (!malicious.announce_to || malicious.announce_to->empty())
      throw ConfigError("stealthy attack needs an explicit target list");
    for (AsId t : *malicious.announce_to) {
      auto a = registry.effective_action(t, malicious.communities);
      if (!a)
        throw ConfigError("stealthy attack carries no community that restricts export at AS " +
                          t.to_string());
    }
  }
}

AttackScenario build_attack(const AsGraph& graph, AsId victim_as, const Prefix& victim_prefix,
                            AsId adversary_as, std::vector<AsId> targets, AttackKind kind,
                            const AttackOptions& options, const CommunityRegistry& registry) {
  if (!graph.contains(victim_as)) throw ConfigError("victim AS " + victim_as.to_string() + " is not in the topology");
  if (victim_as == adversary_as) throw ConfigError("victim and adversary are the same AS");
  if (kind != AttackKind::EquallySpecific && victim_prefix.length() == 32)
    throw ConfigError("cannot build a sub-prefix of a /32");
  for (AsId t : targets) {
    if (!graph.contains(t)) throw ConfigError("target AS " + t.to_string() + " is not in the topology");
    if (options.require_adjacent && (!graph.contains(adversary_as) || !graph.relation(adversary_as, t)))
      throw ConfigError("adversary AS " + adversary_as.to_string() + " is not adjacent to target AS " +
                        t.to_string());
  }

  AttackScenario s{
      OriginationSpec{victim_as, victim_prefix, {}, std::nullopt, {}},
      adversary_as,
      OriginationSpec{adversary_as,
                      kind == AttackKind::EquallySpecific ? victim_prefix
                                                          : victim_prefix.first_subprefix(),
                      {},
                      std::move(targets),
                      {}},
      kind,
      options.spoof_victim_origin};
  if (options.communities)
    s.malicious.communities = *options.communities;
  else if (kind == AttackKind::SubPrefixStealthy)
    s.malicious.communities = {kNoExport};
  if (options.spoof_victim_origin) s.malicious.path_suffix = {victim_as};
  s.validate(registry);
  return s;
}

AsGraph attach_adversary(AsGraph graph, AsId adversary_as, std::span<const AsId> targets) {
  graph.add_node(adversary_as);
  for (AsId t : targets) {
    if (!graph.contains(t)) throw ConfigError("target AS " + t.to_string() + " is not in the topology");
    if (!graph.relation(adversary_as, t)) graph.add_provider_customer(t, adversary_as);
  }
  return graph;
}

void DefenseConfig::validate(const AsGraph& graph) const {
  for (AsId a : rewrite_no_export_at)
    if (!graph.contains(a)) throw ConfigError("rewrite AS " + a.to_string() + " is not in the topology");
  if (rov) {
    if (rov->enforcers)
      for (AsId a : *rov->enforcers)
        if (!graph.contains(a))
          throw ConfigError("ROV enforcer AS " + a.to_string() + " is not in the topology");
    for (const auto& roa : rov->roas) roa.validate();
  }
  if (victim_roa_max_length && !rov)
    throw ConfigError("victim ROA requested without ROV enforcement");
}

PolicyConfig make_policy(const DefenseConfig& defense, const CommunityRegistry& registry,
                         const AttackScenario& scenario) {
  PolicyConfig p;
  p.registry = registry;
  p.rov = defense.rov;
  p.rewrite_no_export_at = defense.rewrite_no_export_at;
  if (p.rov && defense.victim_roa_max_length) {
    Roa roa{scenario.victim.prefix, *defense.victim_roa_max_length, scenario.victim.origin};
    roa.validate();
    p.rov->roas.push_back(roa);
  }
  return p;
}

void apply_rewrite_defense(PolicyConfig& policy, AsId at) { policy.rewrite_no_export_at.insert(at); }

std::set<AsId> infected_set(const Rib& rib, const AttackScenario& scenario) {
  std::set<AsId> out;
  for (AsId h : rib.holders(scenario.malicious.prefix)) {
    const auto& path = rib.find(h, scenario.malicious.prefix)->route.as_path;
    if (std::find(path.begin(), path.end(), scenario.adversary_as) != path.end()) out.insert(h);
  }
  return out;
}

void inject_attack(Rib& rib, const AttackScenario& scenario, std::span<const AsId> targets,
                   const PolicyConfig& policy) {
  if (scenario.kind == AttackKind::EquallySpecific)
    throw ConfigError("route injection is only defined for sub-prefix attacks");
  const auto& m = scenario.malicious;
  std::vector<AsId> origin_path{m.origin};
  origin_path.insert(origin_path.end(), m.path_suffix.begin(), m.path_suffix.end());

  auto locked = [&](AsId at, RibEntry& e) {
    auto a = policy.registry.effective_action(at, e.route.communities);
    e.export_locked = a == CommunityAction::NoExport || a == CommunityAction::NoExportSubconfed;
    e.advertise_locked = a == CommunityAction::NoAdvertise;
  };

  RibEntry origin{RouteAnnouncement{m.prefix, origin_path, m.communities}, LearnedFrom::Origin};
  locked(m.origin, origin);
  rib.install(m.origin, origin);

  const bool invalid = policy.rov && rov_validate(policy.rov->roas, origin.route) == RovVerdict::Invalid;
  for (AsId t : targets) {
    if (t == m.origin) continue;
    if (std::find(origin_path.begin(), origin_path.end(), t) != origin_path.end()) continue;
    if (invalid && policy.rov->enforces(t)) continue;
    std::vector<AsId> path{t};
    path.insert(path.end(), origin_path.begin(), origin_path.end());
    RibEntry e{RouteAnnouncement{m.prefix, std::move(path), m.communities}, LearnedFrom::Customer};
    if (policy.rewrite_no_export_at.contains(t)) {
      if (auto rewritten = rewrite_no_export(t, e.route.communities))
        e.route.communities = std::move(*rewritten);
      e.egress_filtered = e.route.communities.contains(rewrite_community(t));
    }
    locked(t, e);
    rib.install(t, std::move(e));
  }
}

}  // namespace stealthsim
