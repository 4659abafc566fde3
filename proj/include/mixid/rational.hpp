#pragma once

#include <compare>
#include <string>

#include "mixid/bigint.hpp"

namespace mixid {

// Exact rational number. Always reduced, denominator > 0.
class Rat {
public:
  Rat() : num_(0), den_(1) {}
  Rat(long long v) : num_(v), den_(1) {}
  Rat(long long n, long long d);
  Rat(BigInt n, BigInt d);

  static Rat parse(const std::string& s);  // "p" or "p/q"

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == BigInt(1) && den_ == BigInt(1); }
  bool is_integer() const { return den_ == BigInt(1); }
  int sign() const { return num_.sign(); }

  Rat operator-() const;
  Rat abs() const;
  Rat inverse() const;

  friend Rat operator+(const Rat& a, const Rat& b);
  friend Rat operator-(const Rat& a, const Rat& b);
  friend Rat operator*(const Rat& a, const Rat& b);
  friend Rat operator/(const Rat& a, const Rat& b);

  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  Rat pow(long long e) const;

  BigInt floor() const;

  friend bool operator==(const Rat& a, const Rat& b);
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b);

  std::string str() const;  // "p" when integral, else "p/q"

  double to_double() const;

private:
  BigInt num_, den_;
  void normalize();
};

inline Rat min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

}  // namespace mixid
