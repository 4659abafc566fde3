#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mixid/free_word.hpp"

namespace mixid {

struct ConstAtom {
  std::string name;
  int sign;  // +1 or -1
  friend bool operator==(const ConstAtom&, const ConstAtom&) = default;
};

// Formal product of named group constants, freely reduced on the names
// (adjacent c * c^-1 cancels; nothing else is assumed about the group).
// The empty product is the identity.
class ConstProd {
public:
  ConstProd() = default;
  static ConstProd named(const std::string& name);

  bool is_identity() const { return a_.empty(); }
  const std::vector<ConstAtom>& atoms() const { return a_; }

  friend ConstProd operator*(const ConstProd& a, const ConstProd& b);
  ConstProd inverse() const;

  friend bool operator==(const ConstProd& a, const ConstProd& b) { return a.a_ == b.a_; }

  std::string str() const;  // "1" for identity

private:
  std::vector<ConstAtom> a_;
  void push_reduce(ConstAtom atom);
};

// Word with constants in alternating normal form
//   c_0 x^{e(1)} c_1 ... x^{e(l)} c_l,
// reduced: an intermediate constant flanked by x^e ... x^{-e} of the same
// variable is never the identity. A word of length 0 is a bare constant.
struct WordBuildResult;

class Word {
public:
  Word() : consts_(1) {}  // identity word

  // Raw alternating input; cancels x^e 1 x^{-e} subwords and merges the
  // neighbouring constants, repeated to a fixed point.
  static WordBuildResult reduce(std::vector<ConstProd> consts, std::vector<int> vars,
                                std::vector<int> signs);
  static Word from_letters(std::vector<ConstProd> consts, std::vector<int> vars,
                           std::vector<int> signs);

  static Word variable(int var, int sign = 1);
  static Word constant(ConstProd c);

  int length() const { return static_cast<int>(vars_.size()); }
  int var_count() const;  // largest variable index used (0 for constant words)

  const ConstProd& const_at(int j) const { return consts_.at(j); }  // 0..l
  int var_at(int j) const { return vars_.at(j - 1); }               // 1..l
  int sign_at(int j) const { return signs_.at(j - 1); }             // 1..l

  friend Word operator*(const Word& a, const Word& b);
  Word inverse() const;
  Word pow(int e) const;
  Word conjugate(const Word& by) const;  // by^-1 * this * by

  // substitute each variable by a word (used e.g. for w(x^2))
  Word substitute_vars(const std::function<Word(int)>& image) const;

  FreeWord content() const;

  friend bool operator==(const Word& a, const Word& b);

  std::string str() const;

private:
  std::vector<ConstProd> consts_;  // size l+1
  std::vector<int> vars_, signs_;  // size l
};

struct WordBuildResult {
  Word word;
  bool emptied;  // a nonempty raw input reduced all the way to length 0
};

struct IndexClassification {
  std::vector<int> j0, jplus, jminus;                 // 1-based positions in 1..l-1
  std::vector<std::pair<int, ConstProd>> critical;    // (j, c_j) for j in jminus
};

IndexClassification classify(const Word& w);
bool is_strong(const Word& w);
bool is_singular(const Word& w);

// Replace selected critical constants by the identity, one at a time,
// re-reducing after each step, until no critical constant is selected.
// drop returns the support size of a constant it wants dropped.
struct CollapseResult {
  Word word;
  std::uint64_t budget;  // sum of support sizes of the dropped constants
  int steps;
};
using DropFn = std::function<std::optional<std::uint64_t>(const ConstProd&)>;
CollapseResult collapse_critical(const Word& w, const DropFn& drop);

// Single-step variant dropping the critical constant at position j.
// Throws std::invalid_argument when j is not a critical index of w.
Word collapse_at(const Word& w, int j);

}  // namespace mixid
