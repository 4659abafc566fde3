#pragma once

// Independent reference implementations used to freeze expected values.
// Deliberately written with a different shape than the library code: plain
// token lists and repeated full scans instead of normal forms.

#include <map>
#include <string>
#include <vector>

#include "mixid/point.hpp"
#include "mixid/word.hpp"

namespace naive {

// A letter of the free product: either a named constant (possibly inverted)
// or a variable letter.
struct Tok {
  bool is_var = false;
  int var = 0, sign = 1;
  std::string name;  // for constants
  friend bool operator==(const Tok&, const Tok&) = default;
};

inline std::vector<Tok> word_tokens(const mixid::Word& w) {
  std::vector<Tok> out;
  auto emit_const = [&out](const mixid::ConstProd& c) {
    for (const auto& atom : c.atoms()) out.push_back({false, 0, atom.sign, atom.name});
  };
  emit_const(w.const_at(0));
  for (int j = 1; j <= w.length(); ++j) {
    out.push_back({true, w.var_at(j), w.sign_at(j), ""});
    emit_const(w.const_at(j));
  }
  return out;
}

// free-product normalization by repeated full scans
inline std::vector<Tok> reduce_tokens(std::vector<Tok> ts) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
      const Tok& a = ts[i];
      const Tok& b = ts[i + 1];
      bool cancel = false;
      if (a.is_var && b.is_var && a.var == b.var && a.sign == -b.sign) cancel = true;
      if (!a.is_var && !b.is_var && a.name == b.name && a.sign == -b.sign) cancel = true;
      if (cancel) {
        ts.erase(ts.begin() + static_cast<long>(i), ts.begin() + static_cast<long>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return ts;
}

inline std::vector<Tok> content_tokens(const mixid::Word& w) {
  std::vector<Tok> vars;
  for (auto& t : word_tokens(w)) {
    if (t.is_var) vars.push_back(t);
  }
  return reduce_tokens(std::move(vars));
}

inline std::vector<Tok> concat_reduced(std::vector<Tok> a, const std::vector<Tok>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return reduce_tokens(std::move(a));
}

// all F_q combinations of the given vectors, by brute-force enumeration
inline std::vector<mixid::FqVec> span_brute(const std::vector<mixid::FqVec>& gens, int q) {
  std::vector<mixid::FqVec> out;
  std::vector<int> coeff(gens.size(), 0);
  for (;;) {
    mixid::FqVec v;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      v = mixid::fq_add(v, mixid::fq_scale(gens[i], coeff[i], q), q);
    }
    bool dup = false;
    for (const auto& u : out) dup |= (u == v);
    if (!dup) out.push_back(v);
    std::size_t pos = 0;
    while (pos < coeff.size() && ++coeff[pos] == q) coeff[pos++] = 0;
    if (pos == coeff.size()) break;
  }
  return out;
}

}  // namespace naive
