#include "mixid/rational.hpp"

#include <cstdlib>
#include <stdexcept>

namespace mixid {

Rat::Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }
Rat::Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

void Rat::normalize() {
  if (den_.is_zero()) throw std::domain_error("Rat: zero denominator");
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_.is_zero()) {
    den_ = BigInt(1);
    return;
  }
  BigInt g = BigInt::gcd(num_, den_);
  if (!(g == BigInt(1))) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
}

Rat Rat::parse(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(BigInt::from_string(s), BigInt(1));
  return Rat(BigInt::from_string(s.substr(0, slash)), BigInt::from_string(s.substr(slash + 1)));
}

Rat Rat::operator-() const {
  Rat r = *this;
  r.num_ = -r.num_;
  return r;
}

Rat Rat::abs() const {
  Rat r = *this;
  r.num_ = r.num_.abs();
  return r;
}

Rat Rat::inverse() const {
  if (is_zero()) throw std::domain_error("Rat: inverse of zero");
  return Rat(den_, num_);
}

Rat operator+(const Rat& a, const Rat& b) {
  return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rat operator-(const Rat& a, const Rat& b) {
  return Rat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rat operator*(const Rat& a, const Rat& b) { return Rat(a.num_ * b.num_, a.den_ * b.den_); }

Rat operator/(const Rat& a, const Rat& b) {
  if (b.is_zero()) throw std::domain_error("Rat: division by zero");
  return Rat(a.num_ * b.den_, a.den_ * b.num_);
}

Rat Rat::pow(long long e) const {
  if (e == 0) return Rat(1);
  if (e > 0) return Rat(num_.pow(static_cast<std::uint64_t>(e)), den_.pow(static_cast<std::uint64_t>(e)));
  return inverse().pow(-e);
}

BigInt Rat::floor() const {
  BigInt q, r;
  BigInt::divmod(num_, den_, q, r);
  if (num_.sign() < 0 && !r.is_zero()) q = q - BigInt(1);
  return q;
}

bool operator==(const Rat& a, const Rat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
  return (a.num_ * b.den_) <=> (b.num_ * a.den_);
}

std::string Rat::str() const {
  if (is_integer()) return num_.to_string();
  return num_.to_string() + "/" + den_.to_string();
}

double Rat::to_double() const {
  // good enough for numeric cross-checks; exact paths never use this
  return std::strtod(num_.to_string().c_str(), nullptr) /
         std::strtod(den_.to_string().c_str(), nullptr);
}

}  // namespace mixid
