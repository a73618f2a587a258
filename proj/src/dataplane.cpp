#include "stealthsim/dataplane.hpp"

#include <algorithm>

namespace stealthsim {

const RibEntry* lpm_route(const Rib& rib, AsId at, Ipv4 dest) {
  const RibEntry* best = nullptr;
  for (const auto& p : rib.prefixes()) {
    if (!p.contains(dest)) continue;
    if (best && best->route.prefix.length() >= p.length()) continue;
    if (const auto* e = rib.find(at, p)) best = e;
  }
  return best;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Victim: return "victim";
    case Verdict::Adversary: return "adversary";
    case Verdict::Unreachable: return "unreachable";
  }
  return "?";
}

DeliveryOutcome forward(const Rib& rib, AsId source, Ipv4 dest, AsId victim) {
  DeliveryOutcome out{Verdict::Unreachable, {source}};
  AsId at = source;
  for (;;) {
    const RibEntry* e = lpm_route(rib, at, dest);
    if (!e) return out;
    if (e->learned_from == LearnedFrom::Origin) {
      out.verdict = at == victim ? Verdict::Victim : Verdict::Adversary;
      return out;
    }
    AsId next = e->route.next_hop();
    if (std::find(out.path_taken.begin(), out.path_taken.end(), next) != out.path_taken.end())
      return out;
    out.path_taken.push_back(next);
    at = next;
  }
}

Exposure is_compromised(const Rib& rib, AsId source, const Prefix& victim_prefix,
                        const std::set<AsId>& infected) {
  const RibEntry* e = rib.find(source, victim_prefix);
  if (!e) return Exposure::NoRoute;
  for (AsId hop : e->route.as_path)
    if (infected.contains(hop)) return Exposure::Compromised;
  return Exposure::Clean;
}

HijackTally tally_hijack(const Rib& rib, AsId victim, const Prefix& victim_prefix,
                         const std::set<AsId>& infected, std::span<const AsId> sources,
                         const std::set<AsId>& excluded) {
  HijackTally t;
  for (AsId s : sources) {
    if (s == victim || excluded.contains(s)) continue;
    switch (is_compromised(rib, s, victim_prefix, infected)) {
      case Exposure::Compromised:
        ++t.compromised;
        ++t.denominator;
        break;
      case Exposure::Clean: ++t.denominator; break;
      case Exposure::NoRoute: ++t.no_route; break;
    }
  }
  return t;
}

}  // namespace stealthsim
