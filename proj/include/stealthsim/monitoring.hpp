#pragma once

#include <map>
#include <set>
#include <span>
#include <string_view>

#include "stealthsim/routing.hpp"

namespace stealthsim {

/// How a peer AS feeds the monitor.
///  - EbgpMultihop: the usual collector session; no-export routes are withheld.
///  - Ibgp: the monitor is inside the AS boundary; only NO_ADVERTISE hides.
///  - FullRib: BMP-style RIB dump; every installed route is visible.
enum class MonitorSession { EbgpMultihop, Ibgp, FullRib };

std::string_view to_string(MonitorSession s);

struct MonitorConfig {
  std::map<AsId, MonitorSession> peers;

  /// Throws ConfigError naming the first peer missing from `graph`.
  void validate(const AsGraph& graph) const;
};

/// `<asn>[,<session>]` per line, session in {ebgp, ibgp, fullrib}
/// (default ebgp); `#` starts a comment.
MonitorConfig parse_monitor_peers(std::string_view text);

struct VisibilityReport {
  Prefix prefix;
  std::set<AsId> exporting_peers;
  bool stealthy = true;
};

/// Would this session carry the entry to the monitor?
bool reported_on(const RibEntry& entry, MonitorSession session);

VisibilityReport visible_peers(const Rib& rib, const MonitorConfig& mon, const Prefix& prefix);

struct AttackScenario;

struct StealthVerdict {
  bool stealthy;
  double fraction;
};

/// Visibility of the malicious prefix together with the hijacked share of
/// `sources` (victim and adversary excluded). The scenario must already be
/// propagated into `rib`; the infected set is whoever holds the adversary's
/// route.
StealthVerdict stealthy_and_effective(const Rib& rib, const MonitorConfig& mon,
                                      const AttackScenario& scenario,
                                      std::span<const AsId> sources);

}  // namespace stealthsim
