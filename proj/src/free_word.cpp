#include "mixid/free_word.hpp"

#include <stdexcept>

namespace mixid {

std::string var_name(int var) {
  switch (var) {
    case 1: return "x";
    case 2: return "y";
    case 3: return "z";
    default: return "x" + std::to_string(var);
  }
}

void FreeWord::push_reduce(FreeLetter l) {
  if (!ls_.empty() && ls_.back().var == l.var && ls_.back().sign == -l.sign) {
    ls_.pop_back();
  } else {
    ls_.push_back(l);
  }
}

FreeWord FreeWord::letter(int var, int sign) {
  if (var < 1 || (sign != 1 && sign != -1)) throw std::invalid_argument("FreeWord: bad letter");
  FreeWord w;
  w.ls_.push_back({var, sign});
  return w;
}

int FreeWord::max_var() const {
  int m = 0;
  for (const auto& l : ls_) m = std::max(m, l.var);
  return m;
}

FreeWord operator*(const FreeWord& a, const FreeWord& b) {
  FreeWord r = a;
  for (const auto& l : b.ls_) r.push_reduce(l);
  return r;
}

FreeWord FreeWord::inverse() const {
  FreeWord r;
  for (auto it = ls_.rbegin(); it != ls_.rend(); ++it) r.ls_.push_back({it->var, -it->sign});
  return r;
}

FreeWord FreeWord::pow(int e) const {
  FreeWord base = e < 0 ? inverse() : *this;
  int n = e < 0 ? -e : e;
  FreeWord r;
  for (int i = 0; i < n; ++i) r = r * base;
  return r;
}

FreeWord FreeWord::commutator(const FreeWord& a, const FreeWord& b) {
  return a * b * a.inverse() * b.inverse();
}

std::map<int, long long> FreeWord::abelianization() const {
  std::map<int, long long> m;
  for (const auto& l : ls_) {
    m[l.var] += l.sign;
    if (m[l.var] == 0) m.erase(l.var);
  }
  return m;
}

std::string FreeWord::str() const {
  if (ls_.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < ls_.size(); ++i) {
    if (i) out += "*";
    out += var_name(ls_[i].var);
    if (ls_[i].sign < 0) out += "^-1";
  }
  return out;
}

}  // namespace mixid
