#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace mixid {

// Arbitrary-precision signed integer. Little-endian 32-bit limbs,
// canonical form: no trailing zero limbs, sign 0 iff value 0.
class BigInt {
public:
  BigInt() = default;
  BigInt(long long v);
  static BigInt from_string(const std::string& s);

  std::string to_string() const;

  bool is_zero() const { return sign_ == 0; }
  int sign() const { return sign_; }

  BigInt operator-() const;
  BigInt abs() const;

  friend BigInt operator+(const BigInt& a, const BigInt& b);
  friend BigInt operator-(const BigInt& a, const BigInt& b);
  friend BigInt operator*(const BigInt& a, const BigInt& b);
  friend BigInt operator/(const BigInt& a, const BigInt& b);
  friend BigInt operator%(const BigInt& a, const BigInt& b);

  BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
  BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
  BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

  // Truncated division: q rounds toward zero, r has the sign of a.
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);

  static BigInt gcd(BigInt a, BigInt b);

  BigInt pow(std::uint64_t e) const;

  friend bool operator==(const BigInt& a, const BigInt& b);
  friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b);

  bool fits_int64() const;
  std::int64_t to_int64() const;

  std::size_t bit_length() const;

private:
  int sign_ = 0;
  std::vector<std::uint32_t> limbs_;

  void trim();
  static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  // requires |a| >= |b|
  static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  static void divmod_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                         std::vector<std::uint32_t>& q, std::vector<std::uint32_t>& r);
};

}  // namespace mixid
