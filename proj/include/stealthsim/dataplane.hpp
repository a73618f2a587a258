#pragma once

#include <set>
#include <span>
#include <vector>

#include "stealthsim/routing.hpp"

namespace stealthsim {

/// Longest-prefix match over the routes `at` holds; nullptr if none covers.
const RibEntry* lpm_route(const Rib& rib, AsId at, Ipv4 dest);

enum class Verdict { Victim, Adversary, Unreachable };

std::string_view to_string(Verdict v);

struct DeliveryOutcome {
  Verdict verdict;
  std::vector<AsId> path_taken;  // source first

  friend bool operator==(const DeliveryOutcome&, const DeliveryOutcome&) = default;
};

/// Hop-by-hop forwarding with longest-prefix match re-evaluated at every AS.
/// Ending at `victim`'s origin route is Victim, at any other origin
/// Adversary; a missing route or a forwarding loop is Unreachable.
DeliveryOutcome forward(const Rib& rib, AsId source, Ipv4 dest, AsId victim);

enum class Exposure { Compromised, Clean, NoRoute };

/// Path-membership test: is `source` or any AS on its control-plane path
/// for `victim_prefix` in `infected`?
Exposure is_compromised(const Rib& rib, AsId source, const Prefix& victim_prefix,
                        const std::set<AsId>& infected);

/// Counts over a source population; sources without a route are dropped
/// from the denominator.
struct HijackTally {
  std::size_t compromised = 0;
  std::size_t denominator = 0;
  std::size_t no_route = 0;

  double fraction() const {
    return denominator == 0 ? 0.0 : static_cast<double>(compromised) / static_cast<double>(denominator);
  }
};

/// Sources equal to `victim` or listed in `excluded` are skipped.
HijackTally tally_hijack(const Rib& rib, AsId victim, const Prefix& victim_prefix,
                         const std::set<AsId>& infected, std::span<const AsId> sources,
                         const std::set<AsId>& excluded = {});

}  // namespace stealthsim
