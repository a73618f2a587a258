#include "stealthsim/monitoring.hpp"

#include "stealthsim/dataplane.hpp"
#include "stealthsim/scenario.hpp"

namespace stealthsim {

std::string_view to_string(MonitorSession s) {
  switch (s) {
    case MonitorSession::EbgpMultihop: return "ebgp";
    case MonitorSession::Ibgp: return "ibgp";
    case MonitorSession::FullRib: return "fullrib";
  }
  return "?";
}

void MonitorConfig::validate(const AsGraph& graph) const {
  for (const auto& [as, _] : peers)
    if (!graph.contains(as))
      throw ConfigError("monitor peer AS " + as.to_string() + " is not in the topology");
}

MonitorConfig parse_monitor_peers(std::string_view text) {
  MonitorConfig mon;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto trim = [](std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
      return s;
    };
    line = trim(line);
    if (line.empty()) continue;
    try {
      auto comma = line.find(',');
      AsId as = parse_asn(trim(line.substr(0, comma)));
      MonitorSession session = MonitorSession::EbgpMultihop;
      if (comma != std::string_view::npos) {
        auto kind = trim(line.substr(comma + 1));
        if (kind == "ebgp")
          session = MonitorSession::EbgpMultihop;
        else if (kind == "ibgp")
          session = MonitorSession::Ibgp;
        else if (kind == "fullrib")
          session = MonitorSession::FullRib;
        else
          throw ParseError("unknown session type '" + std::string(kind) + "'");
      }
      if (!mon.peers.emplace(as, session).second)
        throw ParseError("AS " + as.to_string() + " listed twice");
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return mon;
}

bool reported_on(const RibEntry& entry, MonitorSession session) {
  switch (session) {
    case MonitorSession::EbgpMultihop: return !entry.export_locked && !entry.advertise_locked;
    case MonitorSession::Ibgp: return !entry.advertise_locked;
    case MonitorSession::FullRib: return true;
  }
  return false;
}

VisibilityReport visible_peers(const Rib& rib, const MonitorConfig& mon, const Prefix& prefix) {
  VisibilityReport report{prefix, {}, true};
  for (const auto& [as, session] : mon.peers) {
    const RibEntry* e = rib.find(as, prefix);
    if (e && reported_on(*e, session)) report.exporting_peers.insert(as);
  }
  report.stealthy = report.exporting_peers.empty();
  return report;
}

StealthVerdict stealthy_and_effective(const Rib& rib, const MonitorConfig& mon,
                                      const AttackScenario& scenario,
                                      std::span<const AsId> sources) {
  const Prefix& bad = scenario.malicious.prefix;
  auto infected = infected_set(rib, scenario);
  auto tally = tally_hijack(rib, scenario.victim.origin, scenario.victim.prefix, infected, sources,
                            {scenario.adversary_as});
  return {visible_peers(rib, mon, bad).stealthy, tally.fraction()};
}

}  // namespace stealthsim
