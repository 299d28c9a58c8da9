#include "problogic/rational.hpp"

namespace problogic {

std::string to_string(const Rational& r) {
  std::string s = boost::multiprecision::numerator(r).str();
  if (boost::multiprecision::denominator(r) != 1) {
    s += '/';
    s += boost::multiprecision::denominator(r).str();
  }
  return s;
}

std::optional<Rational> parse_rational(std::string_view text) {
  std::size_t i = 0;
  auto read_int = [&](BigInt& out) -> bool {
    std::size_t start = i;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    std::size_t digits = i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
    if (i == digits) return false;
    out = BigInt(std::string(text.substr(start, i - start)));
    return true;
  };
  BigInt num, den = 1;
  if (!read_int(num)) return std::nullopt;
  if (i < text.size() && text[i] == '/') {
    ++i;
    if (!read_int(den)) return std::nullopt;
    if (den == 0) return std::nullopt;
  }
  if (i != text.size()) return std::nullopt;
  return Rational(num, den);
}

}  // namespace problogic
