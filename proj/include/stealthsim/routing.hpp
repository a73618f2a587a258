#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <unordered_map>
#include <vector>

#include "stealthsim/community.hpp"
#include "stealthsim/prefix.hpp"
#include "stealthsim/rpki.hpp"
#include "stealthsim/topology.hpp"

namespace stealthsim {

/// A route as heard by an AS. as_path[0] is the holder, back() the origin.
struct RouteAnnouncement {
  Prefix prefix;
  std::vector<AsId> as_path;
  CommunitySet communities;

  AsId origin() const { return as_path.back(); }
  AsId holder() const { return as_path.front(); }
  /// AS the holder forwards to; the holder itself for originated routes.
  AsId next_hop() const { return as_path.size() > 1 ? as_path[1] : as_path[0]; }

  friend bool operator==(const RouteAnnouncement&, const RouteAnnouncement&) = default;
};

/// Ordered by preference: Origin is best, Provider worst.
enum class LearnedFrom : std::uint8_t { Origin, Customer, Peer, Provider };

std::string_view to_string(LearnedFrom lf);
LearnedFrom learned_from_role(Role neighbor_role);

struct RibEntry {
  RouteAnnouncement route;
  LearnedFrom learned_from = LearnedFrom::Origin;
  bool export_locked = false;     // NoExport / NoExportSubconfed effective here
  bool advertise_locked = false;  // NoAdvertise effective here
  bool egress_filtered = false;   // rewritten no-export, blocked on neighbor egress only

  friend bool operator==(const RibEntry&, const RibEntry&) = default;
};

/// Valley-free export rule plus community locks.
bool export_allowed(const RibEntry& entry, Role to_role);

struct Candidate {
  RouteAnnouncement route;
  LearnedFrom learned_from;
};

/// Customer > Peer > Provider, then shorter path, then lower next-hop ASN.
/// Throws std::invalid_argument on an empty list.
RibEntry select_best(std::span<const Candidate> candidates);

/// Per-(AS, prefix) best routes.
class Rib {
 public:
  const RibEntry* find(AsId as, const Prefix& prefix) const;
  void install(AsId as, RibEntry entry);

  std::vector<Prefix> prefixes() const;
  /// ASes with an entry for `prefix`, ascending.
  std::vector<AsId> holders(const Prefix& prefix) const;
  /// Every prefix `as` holds a route for.
  std::vector<Prefix> prefixes_at(AsId as) const;
  std::size_t size() const;

  friend bool operator==(const Rib&, const Rib&) = default;

 private:
  std::map<Prefix, std::unordered_map<AsId, RibEntry>> tables_;
};

struct OriginationSpec {
  AsId origin;
  Prefix prefix;
  CommunitySet communities;
  std::optional<std::vector<AsId>> announce_to;  // nothing = all neighbors
  std::vector<AsId> path_suffix;                 // ASNs appended after origin (origin spoofing)
};

/// Ingress policy applied during propagation.
struct PolicyConfig {
  CommunityRegistry registry;
  std::optional<RovPolicy> rov;
  std::set<AsId> rewrite_no_export_at;
};

/// Community token the rewrite defense substitutes at `at`.
Community rewrite_community(AsId at);

/// If `at` rewrites and `communities` carries NO_EXPORT or
/// NO_EXPORT_SUBCONFED, returns the rewritten set.
std::optional<CommunitySet> rewrite_no_export(AsId at, const CommunitySet& communities);

RovVerdict rov_validate(std::span<const Roa> roas, const RouteAnnouncement& ann);

/// Gao-Rexford propagation of every origination to its per-prefix fixed
/// point. Throws ConfigError on unknown origins, non-adjacent announce_to
/// targets, or the same AS originating one prefix twice.
Rib propagate(const AsGraph& graph, std::span<const OriginationSpec> originations,
              const PolicyConfig& policy = {});

}  // namespace stealthsim
