#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace stealthsim {

/// IPv4 address, host byte order.
using Ipv4 = std::uint32_t;

Ipv4 parse_ipv4(std::string_view text);
std::string format_ipv4(Ipv4 addr);

/// IPv4 prefix with all host bits zero.
class Prefix {
 public:
  /// Throws std::invalid_argument if length > 32 or host bits are set.
  Prefix(Ipv4 base, std::uint8_t length);

  /// Parses `a.b.c.d/len`; throws ParseError.
  static Prefix parse(std::string_view text);

  Ipv4 base() const noexcept { return base_; }
  std::uint8_t length() const noexcept { return length_; }

  Ipv4 mask() const noexcept { return length_ == 0 ? 0 : ~Ipv4{0} << (32 - length_); }

  bool contains(Ipv4 addr) const noexcept { return (addr & mask()) == base_; }
  bool contains(const Prefix& other) const noexcept {
    return other.length_ >= length_ && contains(other.base_);
  }

  /// The lower half one bit longer (10.0.0.0/23 -> 10.0.0.0/24).
  Prefix first_subprefix() const;

  std::string to_string() const;

  friend auto operator<=>(const Prefix&, const Prefix&) = default;

 private:
  Ipv4 base_;
  std::uint8_t length_;
};

}  // namespace stealthsim
