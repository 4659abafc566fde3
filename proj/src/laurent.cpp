#include "mixid/laurent.hpp"

#include <stdexcept>

namespace mixid {

void LaurentPoly::strip(long long key) {
  auto it = c_.find(key);
  if (it != c_.end() && it->second == 0) c_.erase(it);
}

LaurentPoly LaurentPoly::monomial(long long coeff, long long exp) {
  LaurentPoly p;
  if (coeff != 0) p.c_[exp] = coeff;
  return p;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r = a;
  for (const auto& [e, c] : b.c_) {
    r.c_[e] += c;
    r.strip(e);
  }
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r;
  for (const auto& [e, c] : c_) r.c_[e] = -c;
  return r;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  for (const auto& [ea, ca] : a.c_)
    for (const auto& [eb, cb] : b.c_) {
      r.c_[ea + eb] += ca * cb;
      r.strip(ea + eb);
    }
  return r;
}

LaurentPoly LaurentPoly::shifted(long long k) const {
  LaurentPoly r;
  for (const auto& [e, c] : c_) r.c_[e + k] = c;
  return r;
}

Rat LaurentPoly::eval(const Rat& x) const {
  Rat acc(0);
  for (const auto& [e, c] : c_) acc += Rat(c) * x.pow(e);
  return acc;
}

long long LaurentPoly::min_exp() const {
  if (c_.empty()) throw std::logic_error("LaurentPoly: min_exp of zero");
  return c_.begin()->first;
}

long long LaurentPoly::max_exp() const {
  if (c_.empty()) throw std::logic_error("LaurentPoly: max_exp of zero");
  return c_.rbegin()->first;
}

std::string LaurentPoly::str() const {
  if (c_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    long long e = it->first, c = it->second;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    long long m = c < 0 ? -c : c;
    if (m != 1 || e == 0) out += std::to_string(m);
    if (e != 0) {
      if (m != 1) out += "*";
      out += "X";
      if (e != 1) out += "^" + std::to_string(e);
    }
    first = false;
  }
  return out;
}

LaurentPoly2 LaurentPoly2::monomial(long long coeff, long long ex, long long ey) {
  LaurentPoly2 p;
  if (coeff != 0) p.c_[{ex, ey}] = coeff;
  return p;
}

LaurentPoly2 operator+(const LaurentPoly2& a, const LaurentPoly2& b) {
  LaurentPoly2 r = a;
  for (const auto& [e, c] : b.c_) {
    auto& v = r.c_[e];
    v += c;
    if (v == 0) r.c_.erase(e);
  }
  return r;
}

LaurentPoly2 operator-(const LaurentPoly2& a, const LaurentPoly2& b) {
  LaurentPoly2 neg;
  for (const auto& [e, c] : b.c_) neg.c_[e] = -c;
  return a + neg;
}

LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b) {
  LaurentPoly2 r;
  for (const auto& [ea, ca] : a.c_)
    for (const auto& [eb, cb] : b.c_) {
      std::pair<long long, long long> e{ea.first + eb.first, ea.second + eb.second};
      auto& v = r.c_[e];
      v += ca * cb;
      if (v == 0) r.c_.erase(e);
    }
  return r;
}

std::string LaurentPoly2::str() const {
  if (c_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : c_) {
    if (!first) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    long long m = c < 0 ? -c : c;
    std::string mono;
    if (e.first != 0) {
      mono += "X";
      if (e.first != 1) mono += "^" + std::to_string(e.first);
    }
    if (e.second != 0) {
      if (!mono.empty()) mono += "*";
      mono += "Y";
      if (e.second != 1) mono += "^" + std::to_string(e.second);
    }
    if (m != 1 || mono.empty()) {
      out += std::to_string(m);
      if (!mono.empty()) out += "*";
    }
    out += mono;
    first = false;
  }
  return out;
}

}  // namespace mixid
