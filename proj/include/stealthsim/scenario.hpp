#pragma once

#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <vector>

#include "stealthsim/routing.hpp"

namespace stealthsim {

enum class AttackKind { SubPrefixStealthy, SubPrefixLoud, EquallySpecific };

std::string_view to_string(AttackKind k);
AttackKind parse_attack_kind(std::string_view text);

struct AttackScenario {
  OriginationSpec victim;
  AsId adversary_as;
  OriginationSpec malicious;
  AttackKind kind;
  bool spoof_victim_origin = false;

  /// Checks prefix containment for the kind and, for SubPrefixStealthy,
  /// that a no-export action is effective at every announce_to target.
  void validate(const CommunityRegistry& registry) const;

  std::vector<OriginationSpec> originations() const { return {victim, malicious}; }
};

struct AttackOptions {
  bool spoof_victim_origin = false;
  /// Replaces the kind's default community set (NO_EXPORT for stealthy,
  /// nothing otherwise).
  std::optional<CommunitySet> communities;
  /// Off for direct route injection, where targets need no session.
  bool require_adjacent = true;
};

/// Builds the adversary's origination against `victim_prefix`. Targets must
/// already be neighbors of the adversary (see attach_adversary).
AttackScenario build_attack(const AsGraph& graph, AsId victim_as, const Prefix& victim_prefix,
                            AsId adversary_as, std::vector<AsId> targets, AttackKind kind,
                            const AttackOptions& options = {},
                            const CommunityRegistry& registry = {});

/// Adds the adversary (if absent) and a provider(target)->customer(adversary)
/// edge for every target it is not already adjacent to.
AsGraph attach_adversary(AsGraph graph, AsId adversary_as, std::span<const AsId> targets);

struct DefenseConfig {
  std::set<AsId> rewrite_no_export_at;
  std::optional<RovPolicy> rov;
  /// With ROV on, also register a ROA for the victim's own prefix with this
  /// max length and the victim as origin.
  std::optional<std::uint8_t> victim_roa_max_length;

  void validate(const AsGraph& graph) const;
};

/// Ingress policy for one scenario: registry, ROV (with the victim ROA if
/// requested) and rewrite set.
PolicyConfig make_policy(const DefenseConfig& defense, const CommunityRegistry& registry,
                         const AttackScenario& scenario);

/// Turns on the no-export rewrite at `at`.
void apply_rewrite_defense(PolicyConfig& policy, AsId at);

/// ASes holding the malicious route: holders of the malicious prefix whose
/// path runs through the adversary.
std::set<AsId> infected_set(const Rib& rib, const AttackScenario& scenario);

/// Installs the malicious route directly at `targets` (plus the adversary's
/// own origin entry) without propagating it further. Ingress policy still
/// applies: ROV enforcers drop it, rewriting ASes rewrite it.
void inject_attack(Rib& rib, const AttackScenario& scenario, std::span<const AsId> targets,
                   const PolicyConfig& policy);

}  // namespace stealthsim
