#include "stealthsim/community.hpp"

#include <charconv>

namespace stealthsim {

Community Community::parse(std::string_view text) {
  auto colon = text.find(':');
  auto half = [&](std::string_view s) -> std::uint16_t {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || v > 0xFFFF)
      throw ParseError("bad community: '" + std::string(text) + "'");
    return static_cast<std::uint16_t>(v);
  };
  if (colon == std::string_view::npos) throw ParseError("bad community: '" + std::string(text) + "'");
  return Community(half(text.substr(0, colon)), half(text.substr(colon + 1)));
}

std::string Community::to_string() const {
  return std::to_string(high()) + ":" + std::to_string(low());
}

std::string_view to_string(CommunityAction action) {
  switch (action) {
    case CommunityAction::NoExportSubconfed: return "no_export_subconfed";
    case CommunityAction::NoExport: return "no_export";
    case CommunityAction::NoAdvertise: return "no_advertise";
  }
  return "?";
}

CommunityAction parse_community_action(std::string_view text) {
  if (text == "no_export") return CommunityAction::NoExport;
  if (text == "no_advertise") return CommunityAction::NoAdvertise;
  if (text == "no_export_subconfed") return CommunityAction::NoExportSubconfed;
  throw ParseError("unknown community action '" + std::string(text) + "'");
}

CommunityRegistry::CommunityRegistry()
    : well_known_{{kNoExport, CommunityAction::NoExport},
                  {kNoAdvertise, CommunityAction::NoAdvertise},
                  {kNoExportSubconfed, CommunityAction::NoExportSubconfed}} {}

void CommunityRegistry::add_scoped(AsId scope, Community community, CommunityAction action) {
  scoped_[{scope, community}] = action;
}

std::optional<CommunityAction> CommunityRegistry::effective_action(
    AsId at, const CommunitySet& communities) const {
  std::optional<CommunityAction> strictest;
  auto consider = [&](CommunityAction a) {
    if (!strictest || a > *strictest) strictest = a;
  };
  for (Community c : communities) {
    if (auto it = well_known_.find(c); it != well_known_.end()) consider(it->second);
    if (!scoped_.empty())
      if (auto it = scoped_.find({at, c}); it != scoped_.end()) consider(it->second);
  }
  return strictest;
}

std::vector<CommunityRegistry::Entry> CommunityRegistry::entries() const {
  std::vector<Entry> out;
  for (const auto& [c, a] : well_known_) out.push_back({std::nullopt, c, a});
  for (const auto& [key, a] : scoped_) out.push_back({key.first, key.second, a});
  return out;
}

}  // namespace stealthsim
