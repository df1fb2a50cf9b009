#pragma once

#include <cmath>
#include <compare>
#include <string>

#include "errors.hpp"

namespace spingyro {

// Exact half-integer quantum number stored as a doubled integer.
// J-rounding and frequency bookkeeping must stay exact, so never a float.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr HalfInt(int n) : twice_(2 * n) {}  // implicit lift so that j + 1 works

  static constexpr HalfInt from_twice(int twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }

  // Nearest half-integer; rejects values further than tol from any k/2.
  static HalfInt from_double(double v, double tol = 1e-6) {
    const long t = std::lround(2.0 * v);
    if (std::abs(2.0 * v - static_cast<double>(t)) > 2.0 * tol)
      throw config_error("not a half-integer: " + std::to_string(v));
    return from_twice(static_cast<int>(t));
  }

  // Accepts "3/2", "2", "-1/2" or a decimal such as "0.5".
  static HalfInt parse(const std::string& text);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

  std::string str() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice_ + b.twice_); }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice_ - b.twice_); }
  friend constexpr HalfInt operator-(HalfInt a) { return from_twice(-a.twice_); }
  friend constexpr auto operator<=>(HalfInt a, HalfInt b) = default;

 private:
  int twice_ = 0;
};

inline HalfInt HalfInt::parse(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw config_error("empty half-integer");
  try {
    const auto slash = t.find('/');
    if (slash != std::string::npos) {
      const int num = std::stoi(t.substr(0, slash));
      const int den = std::stoi(t.substr(slash + 1));
      if (den == 1) return HalfInt(num);
      if (den == 2) return from_twice(num);
      throw config_error("half-integer denominator must be 1 or 2: " + text);
    }
    if (t.find('.') != std::string::npos) return from_double(std::stod(t));
    return HalfInt(std::stoi(t));
  } catch (const config_error&) {
    throw;
  } catch (const std::exception&) {
    throw config_error("cannot parse half-integer: " + text);
  }
}

// j(j+1), the Casimir eigenvalue.
inline double casimir(HalfInt j) { return j.value() * (j.value() + 1.0); }

// 2j+1, the dimension of the spin-j multiplet.
inline int multiplicity(HalfInt j) { return j.twice() + 1; }

}  // namespace spingyro
