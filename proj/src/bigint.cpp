#include "mixid/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace mixid {

BigInt::BigInt(long long v) {
  if (v == 0) return;
  sign_ = v > 0 ? 1 : -1;
  unsigned long long m = v > 0 ? static_cast<unsigned long long>(v)
                               : ~static_cast<unsigned long long>(v) + 1ull;
  while (m) {
    limbs_.push_back(static_cast<std::uint32_t>(m & 0xffffffffull));
    m >>= 32;
  }
}

void BigInt::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  if (limbs_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  const auto& big = a.size() >= b.size() ? a : b;
  const auto& small = a.size() >= b.size() ? b : a;
  std::vector<std::uint32_t> r(big.size() + 1, 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < big.size(); ++i) {
    std::uint64_t s = carry + big[i] + (i < small.size() ? small[i] : 0);
    r[i] = static_cast<std::uint32_t>(s);
    carry = s >> 32;
  }
  r[big.size()] = static_cast<std::uint32_t>(carry);
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> r(a.size(), 0);
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t d = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
    if (d < 0) {
      d += (1ll << 32);
      borrow = 1;
    } else {
      borrow = 0;
    }
    r[i] = static_cast<std::uint32_t>(d);
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

std::vector<std::uint32_t> BigInt::mul_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint32_t> r(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::uint64_t cur = r[i + j] + carry +
                          static_cast<std::uint64_t>(a[i]) * static_cast<std::uint64_t>(b[j]);
      r[i + j] = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
    }
    std::size_t k = i + b.size();
    while (carry) {
      std::uint64_t cur = r[k] + carry;
      r[k] = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
      ++k;
    }
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

namespace {

// shift-left by one bit in place, appending a new low bit
void shl1_push(std::vector<std::uint32_t>& v, std::uint32_t bit) {
  std::uint32_t carry = bit;
  for (auto& limb : v) {
    std::uint32_t next = limb >> 31;
    limb = (limb << 1) | carry;
    carry = next;
  }
  if (carry) v.push_back(carry);
}

}  // namespace

void BigInt::divmod_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                        std::vector<std::uint32_t>& q, std::vector<std::uint32_t>& r) {
  if (b.empty()) throw std::domain_error("BigInt: division by zero");
  q.assign(a.size(), 0);
  r.clear();
  if (cmp_mag(a, b) < 0) {
    q.clear();
    r = a;
    return;
  }
  if (b.size() == 1) {
    std::uint64_t d = b[0];
    std::uint64_t rem = 0;
    for (std::size_t i = a.size(); i-- > 0;) {
      std::uint64_t cur = (rem << 32) | a[i];
      q[i] = static_cast<std::uint32_t>(cur / d);
      rem = cur % d;
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
    if (rem) r.push_back(static_cast<std::uint32_t>(rem));
    return;
  }
  // binary long division, from the top bit down
  for (std::size_t i = a.size(); i-- > 0;) {
    for (int bit = 31; bit >= 0; --bit) {
      shl1_push(r, (a[i] >> bit) & 1u);
      if (cmp_mag(r, b) >= 0) {
        r = sub_mag(r, b);
        q[i] |= (1u << bit);
      }
    }
  }
  while (!q.empty() && q.back() == 0) q.pop_back();
}

BigInt BigInt::operator-() const {
  BigInt r = *this;
  r.sign_ = -r.sign_;
  return r;
}

BigInt BigInt::abs() const {
  BigInt r = *this;
  if (r.sign_ < 0) r.sign_ = 1;
  return r;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
  if (a.sign_ == 0) return b;
  if (b.sign_ == 0) return a;
  BigInt r;
  if (a.sign_ == b.sign_) {
    r.sign_ = a.sign_;
    r.limbs_ = BigInt::add_mag(a.limbs_, b.limbs_);
  } else {
    int c = BigInt::cmp_mag(a.limbs_, b.limbs_);
    if (c == 0) return BigInt();
    if (c > 0) {
      r.sign_ = a.sign_;
      r.limbs_ = BigInt::sub_mag(a.limbs_, b.limbs_);
    } else {
      r.sign_ = b.sign_;
      r.limbs_ = BigInt::sub_mag(b.limbs_, a.limbs_);
    }
  }
  r.trim();
  return r;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
  if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
  BigInt r;
  r.sign_ = a.sign_ * b.sign_;
  r.limbs_ = BigInt::mul_mag(a.limbs_, b.limbs_);
  r.trim();
  return r;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
  std::vector<std::uint32_t> qm, rm;
  divmod_mag(a.limbs_, b.limbs_, qm, rm);
  q.limbs_ = std::move(qm);
  r.limbs_ = std::move(rm);
  q.sign_ = q.limbs_.empty() ? 0 : a.sign_ * b.sign_;
  r.sign_ = r.limbs_.empty() ? 0 : a.sign_;
}

BigInt operator/(const BigInt& a, const BigInt& b) {
  BigInt q, r;
  BigInt::divmod(a, b, q, r);
  return q;
}

BigInt operator%(const BigInt& a, const BigInt& b) {
  BigInt q, r;
  BigInt::divmod(a, b, q, r);
  return r;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
  a = a.abs();
  b = b.abs();
  while (!b.is_zero()) {
    BigInt r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

BigInt BigInt::pow(std::uint64_t e) const {
  BigInt base = *this;
  BigInt r(1);
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

bool operator==(const BigInt& a, const BigInt& b) {
  return a.sign_ == b.sign_ && a.limbs_ == b.limbs_;
}

std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
  if (a.sign_ != b.sign_) return a.sign_ <=> b.sign_;
  int c = BigInt::cmp_mag(a.limbs_, b.limbs_) * (a.sign_ < 0 ? -1 : 1);
  return c <=> 0;
}

bool BigInt::fits_int64() const {
  if (limbs_.size() > 2) return false;
  if (limbs_.size() < 2) return true;
  std::uint64_t m = (static_cast<std::uint64_t>(limbs_[1]) << 32) | limbs_[0];
  if (sign_ > 0) return m <= 0x7fffffffffffffffull;
  return m <= 0x8000000000000000ull;
}

std::int64_t BigInt::to_int64() const {
  if (!fits_int64()) throw std::overflow_error("BigInt: does not fit int64");
  std::uint64_t m = 0;
  if (limbs_.size() > 1) m = static_cast<std::uint64_t>(limbs_[1]) << 32;
  if (!limbs_.empty()) m |= limbs_[0];
  return sign_ >= 0 ? static_cast<std::int64_t>(m) : -static_cast<std::int64_t>(m - 1) - 1;
}

std::size_t BigInt::bit_length() const {
  if (limbs_.empty()) return 0;
  std::uint32_t top = limbs_.back();
  std::size_t bits = (limbs_.size() - 1) * 32;
  while (top) {
    ++bits;
    top >>= 1;
  }
  return bits;
}

BigInt BigInt::from_string(const std::string& s) {
  std::size_t i = 0;
  int sign = 1;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    if (s[i] == '-') sign = -1;
    ++i;
  }
  if (i >= s.size()) throw std::invalid_argument("BigInt: empty numeral");
  BigInt r;
  BigInt ten(10);
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit in numeral");
    r = r * ten + BigInt(s[i] - '0');
  }
  if (sign < 0) r = -r;
  return r;
}

std::string BigInt::to_string() const {
  if (is_zero()) return "0";
  std::vector<std::uint32_t> m = limbs_;
  std::string digits;
  // repeated division by 10^9 for fewer passes
  const std::uint64_t chunk = 1000000000ull;
  while (!m.empty()) {
    std::uint64_t rem = 0;
    for (std::size_t i = m.size(); i-- > 0;) {
      std::uint64_t cur = (rem << 32) | m[i];
      m[i] = static_cast<std::uint32_t>(cur / chunk);
      rem = cur % chunk;
    }
    while (!m.empty() && m.back() == 0) m.pop_back();
    for (int d = 0; d < 9; ++d) {
      digits.push_back(static_cast<char>('0' + rem % 10));
      rem /= 10;
      if (m.empty() && rem == 0) break;
    }
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  if (sign_ < 0) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

}  // namespace mixid
