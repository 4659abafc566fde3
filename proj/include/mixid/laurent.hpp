#pragma once

#include <map>
#include <string>
#include <utility>

#include "mixid/rational.hpp"

namespace mixid {

// Laurent polynomial in one symbol with integer coefficients,
// canonical: no zero coefficients stored.
class LaurentPoly {
public:
  LaurentPoly() = default;
  static LaurentPoly monomial(long long coeff, long long exp);

  bool is_zero() const { return c_.empty(); }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly operator-() const;

  LaurentPoly shifted(long long k) const;  // multiply by X^k

  LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }

  Rat eval(const Rat& x) const;  // x must be nonzero when negative exponents occur

  long long min_exp() const;  // requires nonzero
  long long max_exp() const;

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.c_ == b.c_; }

  std::string str() const;  // e.g. "X^-1 - 1", zero prints "0"

  const std::map<long long, long long>& coeffs() const { return c_; }

private:
  std::map<long long, long long> c_;
  void strip(long long key);
};

// Laurent polynomial in two commuting symbols, integer coefficients.
class LaurentPoly2 {
public:
  LaurentPoly2() = default;
  static LaurentPoly2 monomial(long long coeff, long long ex, long long ey);

  bool is_zero() const { return c_.empty(); }

  friend LaurentPoly2 operator+(const LaurentPoly2& a, const LaurentPoly2& b);
  friend LaurentPoly2 operator-(const LaurentPoly2& a, const LaurentPoly2& b);
  friend LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b);

  LaurentPoly2& operator+=(const LaurentPoly2& o) { return *this = *this + o; }
  LaurentPoly2& operator-=(const LaurentPoly2& o) { return *this = *this - o; }

  friend bool operator==(const LaurentPoly2& a, const LaurentPoly2& b) { return a.c_ == b.c_; }

  std::string str() const;

private:
  std::map<std::pair<long long, long long>, long long> c_;
};

}  // namespace mixid
