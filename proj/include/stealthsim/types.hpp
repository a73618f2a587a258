#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace stealthsim {

/// Autonomous-system number. Zero is reserved and rejected.
class AsId {
 public:
  explicit constexpr AsId(std::uint32_t value) : value_(value) {
    if (value == 0) throw std::invalid_argument("AS number 0 is reserved");
  }

  constexpr std::uint32_t value() const noexcept { return value_; }

  friend constexpr auto operator<=>(AsId, AsId) = default;

  std::string to_string() const { return std::to_string(value_); }

 private:
  std::uint32_t value_;
};

/// Parses a decimal ASN in 1..2^32-1.
AsId parse_asn(std::string_view text);

/// Malformed input file (topology, monitor peers, scenario descriptor).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed input that is inconsistent with the topology or with itself.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A simulator invariant failed; indicates a bug rather than bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace stealthsim

template <>
struct std::hash<stealthsim::AsId> {
  std::size_t operator()(stealthsim::AsId a) const noexcept {
    return std::hash<std::uint32_t>{}(a.value());
  }
};
