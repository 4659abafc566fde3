#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "mixid/rational.hpp"

namespace mixid {

// Natural number in the Ackermann set encoding: a number is the finite set of
// the bit positions set in its binary expansion, recursively. Stored with
// members sorted descending, which makes structural order agree with numeric
// order. Two numbers are BIT-adjacent iff one is a member of the other.
struct HfSet {
  std::vector<HfSet> mem;  // canonical: strictly descending, unique

  static HfSet from_uint(std::uint64_t n);
  static HfSet make(std::vector<HfSet> members);  // sorts and dedups

  static int cmp(const HfSet& a, const HfSet& b);
  bool contains(const HfSet& x) const;

  std::optional<std::uint64_t> value() const;  // numeric value when < 2^64
  std::string str() const;

  friend bool operator==(const HfSet& a, const HfSet& b) { return cmp(a, b) == 0; }
  friend bool operator<(const HfSet& a, const HfSet& b) { return cmp(a, b) < 0; }
};

bool bit_adjacent(const HfSet& u, const HfSet& v);

struct ClassSlot {
  std::int64_t cls;
  std::int32_t slot;
  friend bool operator==(const ClassSlot&, const ClassSlot&) = default;
  friend auto operator<=>(const ClassSlot&, const ClassSlot&) = default;
};

// Finite-support vector over F_q: sorted (index, value) pairs, values nonzero.
struct FqVec {
  std::vector<std::pair<std::int32_t, std::int32_t>> c;
  friend bool operator==(const FqVec&, const FqVec&) = default;
  friend bool operator<(const FqVec& a, const FqVec& b) { return a.c < b.c; }
};

FqVec fq_add(const FqVec& a, const FqVec& b, int q);
FqVec fq_scale(const FqVec& a, int c, int q);

struct RatPair {
  Rat x, y;
  friend bool operator==(const RatPair& a, const RatPair& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const RatPair& a, const RatPair& b) {
    if (!(a.x == b.x)) return a.x < b.x;
    return a.y < b.y;
  }
};

using Point = std::variant<std::int64_t, Rat, ClassSlot, FqVec, RatPair, HfSet>;
using PointVec = std::vector<Point>;
using PointSet = std::set<Point>;

std::string point_str(const Point& p);
std::string points_str(const PointVec& ps);

}  // namespace mixid
