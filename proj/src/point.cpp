#include "mixid/point.hpp"

#include <algorithm>

namespace mixid {

HfSet HfSet::from_uint(std::uint64_t n) {
  std::vector<HfSet> mem;
  for (int b = 63; b >= 0; --b) {
    if (n & (1ull << b)) mem.push_back(from_uint(static_cast<std::uint64_t>(b)));
  }
  HfSet s;
  s.mem = std::move(mem);  // already descending: bit positions decrease
  return s;
}

HfSet HfSet::make(std::vector<HfSet> members) {
  std::sort(members.begin(), members.end(), [](const HfSet& a, const HfSet& b) {
    return cmp(a, b) > 0;  // descending
  });
  members.erase(std::unique(members.begin(), members.end()), members.end());
  HfSet s;
  s.mem = std::move(members);
  return s;
}

// Numeric order: compare descending member lists lexicographically; a proper
// prefix is smaller (the extra members of the other side are all below the
// common part, and a sum of smaller distinct powers of two never reaches the
// next power).
int HfSet::cmp(const HfSet& a, const HfSet& b) {
  std::size_t n = std::min(a.mem.size(), b.mem.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = cmp(a.mem[i], b.mem[i]);
    if (c != 0) return c;
  }
  if (a.mem.size() != b.mem.size()) return a.mem.size() < b.mem.size() ? -1 : 1;
  return 0;
}

bool HfSet::contains(const HfSet& x) const {
  auto it = std::lower_bound(mem.begin(), mem.end(), x, [](const HfSet& a, const HfSet& b) {
    return cmp(a, b) > 0;  // descending order
  });
  return it != mem.end() && cmp(*it, x) == 0;
}

std::optional<std::uint64_t> HfSet::value() const {
  std::uint64_t v = 0;
  for (const auto& m : mem) {
    auto mv = m.value();
    if (!mv || *mv >= 64) return std::nullopt;
    v |= (1ull << *mv);
  }
  return v;
}

std::string HfSet::str() const {
  if (auto v = value()) return std::to_string(*v);
  std::string out = "{";
  for (std::size_t i = 0; i < mem.size(); ++i) {
    if (i) out += ",";
    out += mem[i].str();
  }
  return out + "}";
}

bool bit_adjacent(const HfSet& u, const HfSet& v) { return u.contains(v) || v.contains(u); }

FqVec fq_add(const FqVec& a, const FqVec& b, int q) {
  FqVec r;
  std::size_t i = 0, j = 0;
  while (i < a.c.size() || j < b.c.size()) {
    if (j >= b.c.size() || (i < a.c.size() && a.c[i].first < b.c[j].first)) {
      r.c.push_back(a.c[i++]);
    } else if (i >= a.c.size() || b.c[j].first < a.c[i].first) {
      r.c.push_back(b.c[j++]);
    } else {
      int v = (a.c[i].second + b.c[j].second) % q;
      if (v) r.c.push_back({a.c[i].first, v});
      ++i;
      ++j;
    }
  }
  return r;
}

FqVec fq_scale(const FqVec& a, int c, int q) {
  c = ((c % q) + q) % q;
  FqVec r;
  if (c == 0) return r;
  for (const auto& [idx, v] : a.c) {
    int nv = static_cast<int>((static_cast<long long>(v) * c) % q);
    if (nv) r.c.push_back({idx, nv});
  }
  return r;
}

std::string point_str(const Point& p) {
  struct Visitor {
    std::string operator()(std::int64_t n) const { return "n:" + std::to_string(n); }
    std::string operator()(const Rat& q) const { return "q:" + q.str(); }
    std::string operator()(const ClassSlot& c) const {
      return "e:" + std::to_string(c.cls) + "." + std::to_string(c.slot);
    }
    std::string operator()(const FqVec& v) const {
      if (v.c.empty()) return "v:0";
      std::string out = "v:";
      for (std::size_t i = 0; i < v.c.size(); ++i) {
        if (i) out += "+";
        if (v.c[i].second != 1) out += std::to_string(v.c[i].second) + "*";
        out += "e" + std::to_string(v.c[i].first);
      }
      return out;
    }
    std::string operator()(const RatPair& p) const { return "p:" + p.x.str() + "," + p.y.str(); }
    std::string operator()(const HfSet& h) const { return "g:" + h.str(); }
  };
  return std::visit(Visitor{}, p);
}

std::string points_str(const PointVec& ps) {
  std::string out = "[";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) out += ",";
    out += point_str(ps[i]);
  }
  return out + "]";
}

}  // namespace mixid
