#include "khw/slope.hpp"

#include <cstdlib>
#include <numeric>

#include "khw/error.hpp"
#include "text_util.hpp"

namespace khw {

Slope make_slope(long p, long q) {
  if (p == 0 && q == 0) throw InputError("0/0 is not a slope");
  const long g = std::gcd(p, q);
  p /= g;
  q /= g;
  if (q < 0 || (q == 0 && p < 0)) {
    p = -p;
    q = -q;
  }
  return {p, q};
}

Slope operator-(const Slope& s) { return s.q == 0 ? s : Slope{-s.p, s.q}; }

bool operator<(const Slope& a, const Slope& b) {
  if (a.q == 0) return false;
  if (b.q == 0) return true;
  return static_cast<__int128>(a.p) * b.q < static_cast<__int128>(b.p) * a.q;
}

Slope parse_slope(std::string_view text) {
  text = detail::trim(text);
  const auto slash = text.find('/');
  long p = 0, q = 1;
  if (slash == std::string_view::npos) {
    p = detail::parse_int(text, "slope");
  } else {
    p = detail::parse_int(text.substr(0, slash), "slope numerator");
    q = detail::parse_int(text.substr(slash + 1), "slope denominator");
  }
  try {
    return make_slope(p, q);
  } catch (const InputError& e) {
    throw ParseError(e.what());
  }
}

std::string to_string(const Slope& s) { return std::to_string(s.p) + "/" + std::to_string(s.q); }

}  // namespace khw
