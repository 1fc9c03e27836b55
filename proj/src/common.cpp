#include "venn/common.hpp"

#include <bit>
#include <charconv>
#include <cmath>

namespace venn {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Rgba Rgba::parse(std::string_view text) {
  if (text.empty() || text.front() != '#' || (text.size() != 7 && text.size() != 9))
    throw InputError("malformed color '" + std::string(text) + "', expected #RRGGBB");
  std::uint8_t channels[4] = {0, 0, 0, 255};
  for (std::size_t i = 1, k = 0; i < text.size(); i += 2, ++k) {
    const int hi = hex_digit(text[i]);
    const int lo = hex_digit(text[i + 1]);
    if (hi < 0 || lo < 0)
      throw InputError("malformed color '" + std::string(text) + "', expected #RRGGBB");
    channels[k] = static_cast<std::uint8_t>(hi * 16 + lo);
  }
  return {channels[0], channels[1], channels[2], channels[3]};
}

std::string Rgba::hex() const {
  static constexpr char digits[] = "0123456789ABCDEF";
  std::string out = "#";
  for (std::uint8_t c : {r, g, b}) {
    out += digits[c >> 4];
    out += digits[c & 0xF];
  }
  return out;
}

std::string format_fixed(double value, int decimals) {
  if (value == 0.0) value = 0.0;  // drop negative zero
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, decimals);
  if (ec != std::errc{}) return "nan";
  std::string out(buf, end);
  // "-0.000000" after rounding
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

int popcount(Mask m) { return std::popcount(m); }

}  // namespace venn
