#include "stealthsim/prefix.hpp"

#include <charconv>
#include <stdexcept>

#include "stealthsim/types.hpp"

namespace stealthsim {

namespace {

std::uint32_t parse_uint(std::string_view text, std::uint32_t max, std::string_view what) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || v > max)
    throw ParseError("bad " + std::string(what) + ": '" + std::string(text) + "'");
  return v;
}

}  // namespace

Ipv4 parse_ipv4(std::string_view text) {
  Ipv4 addr = 0;
  for (int i = 0; i < 4; ++i) {
    auto dot = text.find('.');
    if ((i < 3) != (dot != std::string_view::npos))
      throw ParseError("bad IPv4 address: '" + std::string(text) + "'");
    addr = (addr << 8) | parse_uint(text.substr(0, dot), 255, "IPv4 octet");
    text = i < 3 ? text.substr(dot + 1) : std::string_view{};
  }
  return addr;
}

std::string format_ipv4(Ipv4 addr) {
  return std::to_string(addr >> 24) + '.' + std::to_string((addr >> 16) & 0xFF) + '.' +
         std::to_string((addr >> 8) & 0xFF) + '.' + std::to_string(addr & 0xFF);
}

Prefix::Prefix(Ipv4 base, std::uint8_t length) : base_(base), length_(length) {
  if (length > 32) throw std::invalid_argument("prefix length > 32");
  if ((base & ~mask()) != 0)
    throw std::invalid_argument("host bits set in " + format_ipv4(base) + "/" +
                                std::to_string(length));
}

Prefix Prefix::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) throw ParseError("prefix lacks '/': '" + std::string(text) + "'");
  Ipv4 base = parse_ipv4(text.substr(0, slash));
  auto len = static_cast<std::uint8_t>(parse_uint(text.substr(slash + 1), 32, "prefix length"));
  try {
    return Prefix(base, len);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

Prefix Prefix::first_subprefix() const {
  if (length_ == 32) throw std::invalid_argument("a /32 has no sub-prefix");
  return Prefix(base_, static_cast<std::uint8_t>(length_ + 1));
}

std::string Prefix::to_string() const { return format_ipv4(base_) + "/" + std::to_string(length_); }

}  // namespace stealthsim
