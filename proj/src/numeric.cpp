#include "sphereiso/numeric.hpp"

#include <cctype>
#include <cstdint>

#include "sphereiso/errors.hpp"

namespace sphereiso {

void append_encoded_int(std::string& out, const Int& v) {
  if (v == 0) {
    out.push_back('\0');
    return;
  }
  const bool negative = v < 0;
  Int mag = negative ? Int(-v) : v;
  std::string bytes;
  while (mag != 0) {
    bytes.push_back(static_cast<char>(static_cast<uint8_t>(mag & 0xff)));
    mag >>= 8;
  }
  if (bytes.size() > 127) {
    // 127 * 8 bits of magnitude; nothing in this library gets near it.
    throw Error("integer too large to encode");
  }
  uint8_t header = static_cast<uint8_t>(bytes.size());
  if (negative) header |= 0x80;
  out.push_back(static_cast<char>(header));
  for (auto it = bytes.rbegin(); it != bytes.rend(); ++it) out.push_back(*it);
}

std::string encoded_int(const Int& v) {
  std::string out;
  append_encoded_int(out, v);
  return out;
}

bool length_lex_less(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

Int int_from_string(std::string_view text) {
  if (text.empty()) throw SchemaError("empty integer literal");
  size_t i = 0;
  if (text[0] == '+' || text[0] == '-') i = 1;
  if (i == text.size()) throw SchemaError("bare sign is not an integer");
  for (size_t k = i; k < text.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(text[k])))
      throw SchemaError("bad integer literal '" + std::string(text) + "'");
  }
  return Int(std::string(text));
}

Rational rational_from_string(std::string_view text) {
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    Int num = int_from_string(text.substr(0, slash));
    Int den = int_from_string(text.substr(slash + 1));
    if (den == 0) throw SchemaError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  auto dot = text.find('.');
  if (dot != std::string_view::npos) {
    std::string_view head = text.substr(0, dot);
    std::string_view tail = text.substr(dot + 1);
    if (tail.empty()) throw SchemaError("bad rational literal '" + std::string(text) + "'");
    bool negative = !head.empty() && head[0] == '-';
    Int whole = head.empty() || head == "-" || head == "+"
                    ? Int(0)
                    : int_from_string(head);
    Int frac = int_from_string(tail);
    if (frac < 0) throw SchemaError("bad rational literal '" + std::string(text) + "'");
    Int scale = 1;
    for (size_t k = 0; k < tail.size(); ++k) scale *= 10;
    Int num = whole * scale + (whole < 0 || negative ? -frac : frac);
    return Rational(num, scale);
  }
  return Rational(int_from_string(text));
}

std::string rational_to_string(const Rational& r) {
  const Int num = boost::multiprecision::numerator(r);
  const Int den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace sphereiso
