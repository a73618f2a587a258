#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "stealthsim/types.hpp"

namespace stealthsim {

/// RFC 1997 community, rendered `high:low`.
class Community {
 public:
  explicit constexpr Community(std::uint32_t value) : value_(value) {}
  constexpr Community(std::uint16_t high, std::uint16_t low)
      : value_((std::uint32_t{high} << 16) | low) {}

  static Community parse(std::string_view text);

  constexpr std::uint32_t value() const noexcept { return value_; }
  constexpr std::uint16_t high() const noexcept { return static_cast<std::uint16_t>(value_ >> 16); }
  constexpr std::uint16_t low() const noexcept { return static_cast<std::uint16_t>(value_ & 0xFFFF); }

  std::string to_string() const;

  friend constexpr auto operator<=>(Community, Community) = default;

 private:
  std::uint32_t value_;
};

inline constexpr Community kNoExport{0xFFFFFF01u};
inline constexpr Community kNoAdvertise{0xFFFFFF02u};
inline constexpr Community kNoExportSubconfed{0xFFFFFF03u};

using CommunitySet = std::set<Community>;

/// Ordered by strictness: a larger value overrides a smaller one.
enum class CommunityAction : std::uint8_t { NoExportSubconfed, NoExport, NoAdvertise };

std::string_view to_string(CommunityAction action);
CommunityAction parse_community_action(std::string_view text);

/// Maps action communities to their effect. Well-known entries apply at
/// every AS; AS-scoped entries apply only at their scope AS and pass
/// through everybody else untouched.
class CommunityRegistry {
 public:
  struct Entry {
    std::optional<AsId> scope;  // nothing = well-known
    Community community;
    CommunityAction action;
  };

  /// Starts with NO_EXPORT, NO_ADVERTISE and NO_EXPORT_SUBCONFED.
  CommunityRegistry();

  void add_scoped(AsId scope, Community community, CommunityAction action);

  std::optional<CommunityAction> effective_action(AsId at, const CommunitySet& communities) const;

  std::vector<Entry> entries() const;

 private:
  std::map<Community, CommunityAction> well_known_;
  std::map<std::pair<AsId, Community>, CommunityAction> scoped_;
};

}  // namespace stealthsim
