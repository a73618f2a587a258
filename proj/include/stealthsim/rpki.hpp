#pragma once

#include <optional>
#include <set>
#include <span>
#include <vector>

#include "stealthsim/prefix.hpp"
#include "stealthsim/types.hpp"

namespace stealthsim {

struct Roa {
  Prefix prefix;
  std::uint8_t max_length;
  AsId origin;

  /// Throws ConfigError unless prefix.length() <= max_length <= 32.
  void validate() const;
};

enum class RovVerdict { Valid, Invalid, NotFound };

std::string_view to_string(RovVerdict v);

/// Route-origin validation of (prefix, origin AS) against a ROA set.
RovVerdict rov_validate(std::span<const Roa> roas, const Prefix& prefix, AsId origin);

/// Which ASes drop ROV-invalid announcements on ingress.
struct RovPolicy {
  std::vector<Roa> roas;
  std::optional<std::set<AsId>> enforcers;  // nothing = every AS enforces

  bool enforces(AsId as) const { return !enforcers || enforcers->contains(as); }
};

}  // namespace stealthsim
