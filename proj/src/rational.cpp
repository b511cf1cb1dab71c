#include "cusp/rational.hpp"

#include <cctype>

namespace cusp {

std::string rat_to_string(const Rat& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

Rat rat_from_string(const std::string& s) {
  if (s.empty()) fail(Errc::ParseError, "empty rational");
  auto check_int = [&](const std::string& t) {
    if (t.empty()) fail(Errc::ParseError, "malformed rational '" + s + "'");
    std::size_t k = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (k == t.size()) fail(Errc::ParseError, "malformed rational '" + s + "'");
    for (; k < t.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(t[k])))
        fail(Errc::ParseError, "malformed rational '" + s + "'");
  };
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    check_int(s);
    return Rat(Int(s));
  }
  std::string num = s.substr(0, slash);
  std::string den = s.substr(slash + 1);
  check_int(num);
  check_int(den);
  Int d(den);
  if (d == 0) fail(Errc::ParseError, "zero denominator in '" + s + "'");
  return Rat(Int(num), d);
}

std::optional<int> dyadic_depth(const Rat& x) {
  Int d = denominator(x);
  int n = 0;
  while (d > 1) {
    if (d % 2 != 0) return std::nullopt;
    d /= 2;
    ++n;
    if (n > 1024) return std::nullopt;
  }
  return n;
}

Int rat_floor(const Rat& x) {
  Int q = numerator(x) / denominator(x);
  if (x < 0 && q * denominator(x) != numerator(x)) --q;
  return q;
}

std::int64_t rat_floor_i64(const Rat& x) { return rat_floor(x).convert_to<std::int64_t>(); }

}  // namespace cusp
