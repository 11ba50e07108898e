#pragma once

#include <string>
#include <string_view>

namespace khw {

// A reduced fraction p/q with q >= 0; 1/0 is allowed.
struct Slope {
  long p = 1;
  long q = 0;

  bool operator==(const Slope&) const = default;
  bool is_integer() const { return q == 1; }
  bool is_infinite() const { return q == 0; }
  bool negative() const { return p < 0; }
};

// Reduces p/q and moves the sign onto p. Throws InputError for 0/0.
Slope make_slope(long p, long q);
Slope operator-(const Slope& s);
// Exact comparison of finite slopes; 1/0 compares above everything.
bool operator<(const Slope& a, const Slope& b);

// "p/q", "n" or "1/0".
Slope parse_slope(std::string_view text);
std::string to_string(const Slope& s);

// Homological data of a knot manifold in a basis (alpha, beta) with
// alpha . beta = +1: the rational longitude lambda = x alpha + y beta and
// the constant c with |H_1(M(s))| = c * Delta(s, lambda).
struct SlopeSystem {
  long lambda_x = 0;
  long lambda_y = 1;
  long c = 1;

  bool operator==(const SlopeSystem&) const = default;
};

// The system of a knot in the 3-sphere in the (meridian, longitude) basis.
inline SlopeSystem knot_system() { return {}; }

}  // namespace khw
