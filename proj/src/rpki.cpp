#include "stealthsim/rpki.hpp"

namespace stealthsim {

void Roa::validate() const {
  if (max_length < prefix.length() || max_length > 32)
    throw ConfigError("ROA for " + prefix.to_string() + " has max_length " +
                      std::to_string(max_length) + " outside [" +
                      std::to_string(prefix.length()) + ", 32]");
}

std::string_view to_string(RovVerdict v) {
  switch (v) {
    case RovVerdict::Valid: return "valid";
    case RovVerdict::Invalid: return "invalid";
    case RovVerdict::NotFound: return "not_found";
  }
  return "?";
}

RovVerdict rov_validate(std::span<const Roa> roas, const Prefix& prefix, AsId origin) {
  bool covered = false;
  for (const auto& roa : roas) {
    if (!roa.prefix.contains(prefix)) continue;
    covered = true;
    if (roa.origin == origin && prefix.length() <= roa.max_length) return RovVerdict::Valid;
  }
  return covered ? RovVerdict::Invalid : RovVerdict::NotFound;
}

}  // namespace stealthsim
