#pragma once

#include <map>
#include <string>
#include <vector>

namespace mixid {

struct FreeLetter {
  int var;   // 1-based
  int sign;  // +1 or -1
  friend bool operator==(const FreeLetter&, const FreeLetter&) = default;
};

// Freely reduced word in the free group on x1, x2, ... (x, y, z aliases for 1..3).
class FreeWord {
public:
  FreeWord() = default;
  static FreeWord letter(int var, int sign);

  bool is_empty() const { return ls_.empty(); }
  std::size_t length() const { return ls_.size(); }
  int max_var() const;

  const std::vector<FreeLetter>& letters() const { return ls_; }

  friend FreeWord operator*(const FreeWord& a, const FreeWord& b);
  FreeWord inverse() const;
  FreeWord pow(int e) const;
  static FreeWord commutator(const FreeWord& a, const FreeWord& b);

  // exponent sum per variable
  std::map<int, long long> abelianization() const;

  friend bool operator==(const FreeWord& a, const FreeWord& b) { return a.ls_ == b.ls_; }

  std::string str() const;  // "1" for the empty word

private:
  std::vector<FreeLetter> ls_;
  void push_reduce(FreeLetter l);
};

std::string var_name(int var);

}  // namespace mixid
