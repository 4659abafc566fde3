#include "mixid/oracle.hpp"

#include <algorithm>

#include "mixid/rng.hpp"

namespace mixid {

namespace {

// van der Corput sequence: vdc(1)=1/2, vdc(2)=1/4, vdc(3)=3/4, vdc(4)=1/8, ...
Rat vdc(std::uint64_t n) {
  Rat v(0);
  Rat w(1, 2);
  while (n) {
    if (n & 1) v += w;
    w = w * Rat(1, 2);
    n >>= 1;
  }
  return v;
}

bool equality_pattern_match(const PointVec& a, const PointVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if ((a[i] == a[j]) != (b[i] == b[j])) return false;
  return true;
}

int rat_cmp(const Rat& a, const Rat& b) {
  auto c = a <=> b;
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

std::uint64_t mix2(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a ^ (b * 0x9e3779b97f4a7c15ull + 0x7f4a7c15ull);
  splitmix64(s);
  return splitmix64(s);
}

PointVec sorted_unique(PointVec v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

bool StructureOracle::acl_contains(const PointVec& y, const Point& x) {
  PointVec closure = acl(y);
  return std::find(closure.begin(), closure.end(), x) != closure.end();
}

Point StructureOracle::realize(const PointVec& base, const PointVec& pattern_base,
                               const Point& pattern_ref, const PointSet& avoid,
                               std::uint64_t salt) {
  if (base.size() != pattern_base.size()) {
    throw ContractViolation("realize: base and pattern base differ in length");
  }
  // candidates are constructed type-correct; the redundant re-validation is
  // worth its cost only while tuples are small
  if (base.size() <= static_cast<std::size_t>(contract_check_limit) &&
      !same_type(pattern_base, base)) {
    throw ContractViolation("realize: pattern base and base have different types");
  }
  for (std::size_t i = 0; i < pattern_base.size(); ++i) {
    if (pattern_base[i] == pattern_ref) {
      if (avoid.count(base[i])) {
        throw ExhaustedSearch("realize: forced point lies in the avoid set");
      }
      return base[i];
    }
  }
  std::string key = points_str(base) + "|" + points_str(pattern_base) + "|" +
                    point_str(pattern_ref) + "|" + std::to_string(salt) + "|";
  for (const auto& p : avoid) key += point_str(p) + ";";
  int ordinal = realize_counts_[std::to_string(fnv1a(key))]++;
  return realize_impl(base, pattern_base, pattern_ref, avoid, salt, ordinal);
}

bool StructureOracle::validate_extension(const PointVec& base, const PointVec& pattern_base,
                                         const Point& pattern_ref, const Point& candidate) {
  if (base.size() > static_cast<std::size_t>(contract_check_limit)) return true;
  PointVec ext_p = pattern_base, ext_b = base;
  ext_p.push_back(pattern_ref);
  ext_b.push_back(candidate);
  return same_type(ext_p, ext_b);
}

bool staggered_independent(StructureOracle& oracle, const PointVec& tuple) {
  PointVec prefix;
  for (const auto& p : tuple) {
    if (oracle.acl_contains(prefix, p)) return false;
    prefix.push_back(p);
  }
  return true;
}

// ---------------------------------------------------------------------------
// pure set

class SetOracle final : public StructureOracle {
public:
  explicit SetOracle(std::uint64_t seed) : StructureOracle(seed) {}

  const std::string& name() const override {
    static const std::string n = "set";
    return n;
  }
  bool no_algebraicity() const override { return true; }
  bool algebraically_convex() const override { return true; }

  bool same_type(const PointVec& a, const PointVec& b) override {
    if (a.size() != b.size()) throw ContractViolation("same_type: length mismatch");
    note_all(a);
    note_all(b);
    return equality_pattern_match(a, b);
  }

  PointVec acl(const PointVec& y) override {
    note_all(y);
    return sorted_unique(y);
  }

  Point fresh_point(const PointSet& avoid) override {
    for (;;) {
      Point p = watermark_++;
      if (!avoid.count(p)) return p;
    }
  }

  std::unique_ptr<StructureOracle> clone() const override {
    return std::make_unique<SetOracle>(*this);
  }

protected:
  Point realize_impl(const PointVec& base, const PointVec&, const Point&, const PointSet& avoid,
                     std::uint64_t salt, int ordinal) override {
    long long anchor = static_cast<long long>(mix2(seed_, salt) % (salt ? 64 : 8));
    int seen = 0;
    for (int idx = 0; idx < realize_budget; ++idx) {
      Point cand = anchor + idx;
      if (avoid.count(cand)) continue;
      if (std::find(base.begin(), base.end(), cand) != base.end()) continue;
      if (seen++ == ordinal) {
        note(cand);
        return cand;
      }
    }
    throw ExhaustedSearch("set: candidate budget exceeded");
  }

private:
  std::int64_t watermark_ = 0;

  void note(const Point& p) {
    if (const auto* n = std::get_if<std::int64_t>(&p)) watermark_ = std::max(watermark_, *n + 1);
  }
  void note_all(const PointVec& v) {
    for (const auto& p : v) note(p);
  }
};

// ---------------------------------------------------------------------------
// dense linear order on the rationals

class DloOracle final : public StructureOracle {
public:
  explicit DloOracle(std::uint64_t seed) : StructureOracle(seed) {}

  const std::string& name() const override {
    static const std::string n = "dlo";
    return n;
  }
  bool no_algebraicity() const override { return true; }
  bool algebraically_convex() const override { return true; }

  bool same_type(const PointVec& a, const PointVec& b) override {
    if (a.size() != b.size()) throw ContractViolation("same_type: length mismatch");
    note_all(a);
    note_all(b);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = i + 1; j < a.size(); ++j)
        if (rat_cmp(std::get<Rat>(a[i]), std::get<Rat>(a[j])) !=
            rat_cmp(std::get<Rat>(b[i]), std::get<Rat>(b[j])))
          return false;
    return true;
  }

  PointVec acl(const PointVec& y) override {
    note_all(y);
    return sorted_unique(y);
  }

  Point fresh_point(const PointSet& avoid) override {
    for (;;) {
      Point p = Rat(watermark_++);
      if (!avoid.count(p)) return p;
    }
  }

  std::unique_ptr<StructureOracle> clone() const override {
    return std::make_unique<DloOracle>(*this);
  }

protected:
  Point realize_impl(const PointVec& base, const PointVec& pattern_base, const Point& pattern_ref,
                     const PointSet& avoid, std::uint64_t salt, int ordinal) override {
    const Rat ref = std::get<Rat>(pattern_ref);
    bool has_lo = false, has_hi = false;
    Rat lo, hi;
    // find the pattern-side neighbours of ref and map them through the index
    // correspondence
    std::size_t ilo = 0, ihi = 0;
    for (std::size_t i = 0; i < pattern_base.size(); ++i) {
      const Rat& pv = std::get<Rat>(pattern_base[i]);
      if (pv < ref && (!has_lo || std::get<Rat>(pattern_base[ilo]) < pv)) {
        has_lo = true;
        ilo = i;
      }
      if (ref < pv && (!has_hi || pv < std::get<Rat>(pattern_base[ihi]))) {
        has_hi = true;
        ihi = i;
      }
    }
    if (has_lo) lo = std::get<Rat>(base[ilo]);
    if (has_hi) hi = std::get<Rat>(base[ihi]);

    std::uint64_t phase = mix2(seed_, salt) % (salt ? 64 : 4);
    int seen = 0;
    for (int idx = 0; idx < realize_budget; ++idx) {
      std::uint64_t n = static_cast<std::uint64_t>(idx) + phase;
      Rat cand;
      if (has_lo && has_hi) {
        cand = lo + (hi - lo) * vdc(n + 1);
      } else if (has_lo) {
        cand = Rat(lo.floor() + BigInt(1 + static_cast<long long>(n)), BigInt(1));
      } else if (has_hi) {
        cand = Rat(hi.floor() - BigInt(static_cast<long long>(n)), BigInt(1));
      } else {
        long long k = static_cast<long long>(n);
        long long v = (k % 2 == 0) ? k / 2 : -(k / 2 + 1);
        cand = Rat(v);
      }
      Point p = cand;
      if (avoid.count(p)) continue;
      if (!validate_extension(base, pattern_base, pattern_ref, p)) continue;
      if (seen++ == ordinal) {
        note_rat(cand);
        return p;
      }
    }
    throw ExhaustedSearch("dlo: candidate budget exceeded");
  }

private:
  long long watermark_ = 0;

  void note_rat(const Rat& r) {
    long long f = 0;
    if (r.floor().fits_int64()) f = r.floor().to_int64();
    watermark_ = std::max(watermark_, f + 1);
  }
  void note_all(const PointVec& v) {
    for (const auto& p : v)
      if (const auto* r = std::get_if<Rat>(&p)) note_rat(*r);
  }
};

// ---------------------------------------------------------------------------
// Rado graph: naturals in the Ackermann set encoding with BIT adjacency

class RadoOracle final : public StructureOracle {
public:
  explicit RadoOracle(std::uint64_t seed) : StructureOracle(seed) {}

  const std::string& name() const override {
    static const std::string n = "rado";
    return n;
  }
  bool no_algebraicity() const override { return true; }
  bool algebraically_convex() const override { return true; }

  bool same_type(const PointVec& a, const PointVec& b) override {
    if (a.size() != b.size()) throw ContractViolation("same_type: length mismatch");
    if (!equality_pattern_match(a, b)) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = i + 1; j < a.size(); ++j)
        if (bit_adjacent(std::get<HfSet>(a[i]), std::get<HfSet>(a[j])) !=
            bit_adjacent(std::get<HfSet>(b[i]), std::get<HfSet>(b[j])))
          return false;
    return true;
  }

  PointVec acl(const PointVec& y) override { return sorted_unique(y); }

  Point fresh_point(const PointSet& avoid) override {
    for (;;) {
      HfSet h = HfSet::make({HfSet::from_uint(fresh_ctr_++)});
      Point p = h;
      if (!avoid.count(p)) return p;
    }
  }

  // vertex adjacent to everything in a, nothing in b
  HfSet extend(const std::vector<HfSet>& a, const std::vector<HfSet>& b, const PointSet& avoid) {
    for (int idx = 0; idx < realize_budget; ++idx) {
      std::vector<HfSet> members = a;
      members.push_back(HfSet::from_uint(fresh_ctr_));
      ++fresh_ctr_;
      HfSet z = HfSet::make(std::move(members));
      if (avoid.count(Point(z))) continue;
      bool ok = true;
      for (const auto& u : a) ok &= bit_adjacent(z, u);
      for (const auto& v : b) ok &= !bit_adjacent(z, v);
      bool fresh = true;
      for (const auto& u : a) fresh &= !(z == u);
      for (const auto& v : b) fresh &= !(z == v);
      if (ok && fresh) return z;
    }
    throw ExhaustedSearch("rado: candidate budget exceeded");
  }

  std::unique_ptr<StructureOracle> clone() const override {
    return std::make_unique<RadoOracle>(*this);
  }

protected:
  Point realize_impl(const PointVec& base, const PointVec& pattern_base, const Point& pattern_ref,
                     const PointSet& avoid, std::uint64_t, int ordinal) override {
    const HfSet& ref = std::get<HfSet>(pattern_ref);
    std::vector<HfSet> adj, nonadj;
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (bit_adjacent(std::get<HfSet>(pattern_base[i]), ref)) {
        adj.push_back(std::get<HfSet>(base[i]));
      } else {
        nonadj.push_back(std::get<HfSet>(base[i]));
      }
    }
    int seen = 0;
    for (int idx = 0; idx < realize_budget; ++idx) {
      HfSet tag = HfSet::from_uint(fresh_ctr_);
      ++fresh_ctr_;
      bool tag_in_base = false;
      for (const auto& v : base) tag_in_base |= (std::get<HfSet>(v) == tag);
      if (tag_in_base) continue;  // the freshness tag must not be an existing vertex
      std::vector<HfSet> members = adj;
      members.push_back(std::move(tag));
      HfSet z = HfSet::make(std::move(members));
      Point p = z;
      if (avoid.count(p)) continue;
      bool clash = false;
      for (const auto& v : base) clash |= (v == p);
      if (clash) continue;
      if (!validate_extension(base, pattern_base, pattern_ref, p)) continue;
      if (seen++ == ordinal) return p;
    }
    throw ExhaustedSearch("rado: candidate budget exceeded");
  }

private:
  std::uint64_t fresh_ctr_ = 64;
};

// ---------------------------------------------------------------------------
// equivalence relation with k-element classes

class EkOracle final : public StructureOracle {
public:
  EkOracle(std::uint64_t seed, int k) : StructureOracle(seed), k_(k) {
    if (k < 1) throw std::invalid_argument("eqrel: class size must be positive");
  }

  const std::string& name() const override { return name_str_.empty() ? init_name() : name_str_; }
  bool no_algebraicity() const override { return k_ == 1; }
  bool algebraically_convex() const override { return k_ == 1; }

  int class_size() const { return k_; }

  bool same_type(const PointVec& a, const PointVec& b) override {
    if (a.size() != b.size()) throw ContractViolation("same_type: length mismatch");
    note_all(a);
    note_all(b);
    if (!equality_pattern_match(a, b)) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = i + 1; j < a.size(); ++j)
        if ((std::get<ClassSlot>(a[i]).cls == std::get<ClassSlot>(a[j]).cls) !=
            (std::get<ClassSlot>(b[i]).cls == std::get<ClassSlot>(b[j]).cls))
          return false;
    return true;
  }

  PointVec acl(const PointVec& y) override {
    note_all(y);
    std::set<std::int64_t> classes;
    for (const auto& p : y) classes.insert(std::get<ClassSlot>(p).cls);
    PointVec out;
    for (auto c : classes)
      for (int s = 0; s < k_; ++s) out.push_back(ClassSlot{c, s});
    return out;
  }

  bool acl_contains(const PointVec& y, const Point& x) override {
    note_all(y);
    auto cls = std::get<ClassSlot>(x).cls;
    for (const auto& p : y)
      if (std::get<ClassSlot>(p).cls == cls) return true;
    return false;
  }

  Point fresh_point(const PointSet& avoid) override {
    for (;;) {
      Point p = ClassSlot{fresh_cls_++, 0};
      if (!avoid.count(p)) return p;
    }
  }

  std::unique_ptr<StructureOracle> clone() const override {
    return std::make_unique<EkOracle>(*this);
  }

protected:
  Point realize_impl(const PointVec& base, const PointVec& pattern_base, const Point& pattern_ref,
                     const PointSet& avoid, std::uint64_t, int ordinal) override {
    const auto& ref = std::get<ClassSlot>(pattern_ref);
    std::optional<std::int64_t> target_cls;
    for (std::size_t i = 0; i < pattern_base.size(); ++i) {
      if (std::get<ClassSlot>(pattern_base[i]).cls == ref.cls) {
        target_cls = std::get<ClassSlot>(base[i]).cls;
        break;
      }
    }
    int seen = 0;
    for (int idx = 0; idx < realize_budget; ++idx) {
      ClassSlot cand{};
      if (target_cls) {
        if (idx >= k_) break;  // a class has only k slots
        cand = ClassSlot{*target_cls, idx};
      } else {
        cand = ClassSlot{fresh_cls_ + idx, 0};
      }
      Point p = cand;
      if (avoid.count(p)) continue;
      bool clash = false;
      for (const auto& v : base) clash |= (v == p);
      if (clash) continue;
      if (!validate_extension(base, pattern_base, pattern_ref, p)) continue;
      if (seen++ == ordinal) {
        note(cand);
        return p;
      }
    }
    throw ExhaustedSearch("eqrel: candidate budget exceeded");
  }

private:
  int k_;
  std::int64_t fresh_cls_ = 0;
  mutable std::string name_str_;

  const std::string& init_name() const {
    name_str_ = "eqrel:" + std::to_string(k_);
    return name_str_;
  }

  void note(const ClassSlot& c) { fresh_cls_ = std::max(fresh_cls_, c.cls + 1); }
  void note_all(const PointVec& v) {
    for (const auto& p : v)
      if (const auto* c = std::get_if<ClassSlot>(&p)) note(*c);
  }
};

// ---------------------------------------------------------------------------
// random poset: lazily grown registry of ids with an explicit order relation

class PosetOracle final : public StructureOracle {
public:
  explicit PosetOracle(std::uint64_t seed) : StructureOracle(seed) {}

  const std::string& name() const override {
    static const std::string n = "poset";
    return n;
  }
  bool no_algebraicity() const override { return true; }
  bool algebraically_convex() const override { return true; }

  bool same_type(const PointVec& a, const PointVec& b) override {
    if (a.size() != b.size()) throw ContractViolation("same_type: length mismatch");
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = i + 1; j < a.size(); ++j) {
        int ra = rel(id_of(a[i]), id_of(a[j]));
        int rb = rel(id_of(b[i]), id_of(b[j]));
        if (ra != rb) return false;
      }
    return true;
  }

  PointVec acl(const PointVec& y) override {
    for (const auto& p : y) id_of(p);
    return sorted_unique(y);
  }

  Point fresh_point(const PointSet& avoid) override {
    for (;;) {
      Point p = new_element({}, {});
      if (!avoid.count(p)) return p;
    }
  }

  // public extension entry: a fresh element above everything in below and
  // below everything in above (registry closure applied)
  std::int64_t new_element(const std::vector<std::int64_t>& below,
                           const std::vector<std::int64_t>& above) {
    std::int64_t z = static_cast<std::int64_t>(less_.size());
    less_.emplace_back();
    greater_.emplace_back();
    // forced closure: z > p iff p <= some d in below; z < p iff some u in above <= p
    std::set<std::int64_t> down, up;
    for (auto d : below) {
      down.insert(d);
      for (auto p : downset(d)) down.insert(p);
    }
    for (auto u : above) {
      up.insert(u);
      for (auto p : upset(u)) up.insert(p);
    }
    for (auto p : down)
      if (up.count(p)) throw std::invalid_argument("poset: inconsistent extension request");
    for (auto p : down) {
      less_[static_cast<std::size_t>(p)].insert(z);
      greater_[static_cast<std::size_t>(z)].insert(p);
    }
    for (auto p : up) {
      less_[static_cast<std::size_t>(z)].insert(p);
      greater_[static_cast<std::size_t>(p)].insert(z);
    }
    return z;
  }

  bool less(std::int64_t a, std::int64_t b) const {
    return less_[static_cast<std::size_t>(a)].count(b) != 0;
  }

  std::unique_ptr<StructureOracle> clone() const override {
    return std::make_unique<PosetOracle>(*this);
  }

protected:
  Point realize_impl(const PointVec& base, const PointVec& pattern_base, const Point& pattern_ref,
                     const PointSet& avoid, std::uint64_t, int) override {
    std::int64_t ref = id_of(pattern_ref);
    std::vector<std::int64_t> below, above;
    for (std::size_t i = 0; i < base.size(); ++i) {
      std::int64_t pb = id_of(pattern_base[i]);
      std::int64_t bb = id_of(base[i]);
      if (less(pb, ref)) below.push_back(bb);
      if (less(ref, pb)) above.push_back(bb);
    }
    for (int attempt = 0; attempt < realize_budget; ++attempt) {
      Point p = new_element(below, above);
      if (avoid.count(p)) continue;
      if (!validate_extension(base, pattern_base, pattern_ref, p)) continue;
      return p;
    }
    throw ExhaustedSearch("poset: candidate budget exceeded");
  }

private:
  // relation stored per id; ids are dense 0..n-1
  std::vector<std::set<std::int64_t>> less_, greater_;

  std::int64_t id_of(const Point& p) {
    auto id = std::get<std::int64_t>(p);
    if (id < 0 || id >= static_cast<std::int64_t>(less_.size())) {
      throw ContractViolation("poset: unknown element id " + std::to_string(id));
    }
    return id;
  }

  const std::set<std::int64_t>& downset(std::int64_t a) const {
    return greater_[static_cast<std::size_t>(a)];
  }
  const std::set<std::int64_t>& upset(std::int64_t a) const {
    return less_[static_cast<std::size_t>(a)];
  }

  // -1: a<b is false and b<a true; 1: a<b; 0: incomparable; 2: equal
  int rel(std::int64_t a, std::int64_t b) const {
    if (a == b) return 2;
    if (less(a, b)) return 1;
    if (less(b, a)) return -1;
    return 0;
  }
};

// ---------------------------------------------------------------------------
// random permutation: pairs of rationals in generic position with the two
// coordinate orders

class Perm2Oracle final : public StructureOracle {
public:
  explicit Perm2Oracle(std::uint64_t seed) : StructureOracle(seed) {}

  const std::string& name() const override {
    static const std::string n = "perm2";
    return n;
  }
  bool no_algebraicity() const override { return true; }
  bool algebraically_convex() const override { return true; }

  bool same_type(const PointVec& a, const PointVec& b) override {
    if (a.size() != b.size()) throw ContractViolation("same_type: length mismatch");
    note_all(a);
    note_all(b);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = i + 1; j < a.size(); ++j) {
        const auto& ai = std::get<RatPair>(a[i]);
        const auto& aj = std::get<RatPair>(a[j]);
        const auto& bi = std::get<RatPair>(b[i]);
        const auto& bj = std::get<RatPair>(b[j]);
        if (rat_cmp(ai.x, aj.x) != rat_cmp(bi.x, bj.x)) return false;
        if (rat_cmp(ai.y, aj.y) != rat_cmp(bi.y, bj.y)) return false;
      }
    return true;
  }

  PointVec acl(const PointVec& y) override {
    note_all(y);
    return sorted_unique(y);
  }

  Point fresh_point(const PointSet& avoid) override {
    for (;;) {
      Rat x = next_coord(used_x_);
      Rat y = next_coord(used_y_);
      Point p = RatPair{x, y};
      if (!avoid.count(p)) return p;
    }
  }

  std::unique_ptr<StructureOracle> clone() const override {
    return std::make_unique<Perm2Oracle>(*this);
  }

protected:
  Point realize_impl(const PointVec& base, const PointVec& pattern_base, const Point& pattern_ref,
                     const PointSet& avoid, std::uint64_t salt, int ordinal) override {
    const auto& ref = std::get<RatPair>(pattern_ref);
    auto x_iv = interval_for(base, pattern_base, ref.x, /*use_x=*/true);
    auto y_iv = interval_for(base, pattern_base, ref.y, /*use_x=*/false);
    std::uint64_t phase = mix2(seed_, salt) % (salt ? 32 : 1);
    int seen = 0;
    for (int idx = 0; idx < realize_budget; ++idx) {
      std::uint64_t n = static_cast<std::uint64_t>(idx) + phase;
      Rat cx = coord_candidate(x_iv, n, used_x_);
      Rat cy = coord_candidate(y_iv, n + 1, used_y_);
      Point p = RatPair{cx, cy};
      if (avoid.count(p)) continue;
      if (!validate_extension(base, pattern_base, pattern_ref, p)) continue;
      if (seen++ == ordinal) {
        used_x_.insert(cx);
        used_y_.insert(cy);
        return p;
      }
    }
    throw ExhaustedSearch("perm2: candidate budget exceeded");
  }

private:
  std::set<Rat> used_x_, used_y_;
  long long watermark_ = 0;

  struct Interval {
    bool has_lo = false, has_hi = false;
    Rat lo, hi;
  };

  Interval interval_for(const PointVec& base, const PointVec& pattern_base, const Rat& ref,
                        bool use_x) {
    Interval iv;
    for (std::size_t i = 0; i < base.size(); ++i) {
      const auto& pp = std::get<RatPair>(pattern_base[i]);
      const auto& bp = std::get<RatPair>(base[i]);
      const Rat& pv = use_x ? pp.x : pp.y;
      const Rat& bv = use_x ? bp.x : bp.y;
      if (pv < ref && (!iv.has_lo || iv.lo < bv)) {
        // note: order isomorphism makes pattern-side and base-side agree
        if (!iv.has_lo || iv.lo < bv) {
          iv.has_lo = true;
          iv.lo = bv;
        }
      }
      if (ref < pv && (!iv.has_hi || bv < iv.hi)) {
        iv.has_hi = true;
        iv.hi = bv;
      }
    }
    return iv;
  }

  Rat coord_candidate(const Interval& iv, std::uint64_t n, const std::set<Rat>& used) {
    // dyadic enumeration inside the interval, shifted past used coordinates
    for (std::uint64_t k = n;; ++k) {
      Rat cand;
      if (iv.has_lo && iv.has_hi) {
        cand = iv.lo + (iv.hi - iv.lo) * vdc(k + 1);
      } else if (iv.has_lo) {
        cand = iv.lo + Rat(1) + Rat(static_cast<long long>(k)) + vdc(k + 1);
      } else if (iv.has_hi) {
        cand = iv.hi - Rat(1) - Rat(static_cast<long long>(k)) - vdc(k + 1);
      } else {
        cand = Rat(static_cast<long long>(k)) + vdc(k + 1);
      }
      if (!used.count(cand)) return cand;
    }
  }

  Rat next_coord(std::set<Rat>& used) {
    for (;;) {
      Rat c = Rat(watermark_++) + Rat(1, 3);
      if (!used.count(c)) {
        used.insert(c);
        return c;
      }
    }
  }

  void note_all(const PointVec& v) {
    for (const auto& p : v) {
      if (const auto* rp = std::get_if<RatPair>(&p)) {
        used_x_.insert(rp->x);
        used_y_.insert(rp->y);
        if (rp->x.floor().fits_int64())
          watermark_ = std::max<long long>(watermark_, rp->x.floor().to_int64() + 1);
        if (rp->y.floor().fits_int64())
          watermark_ = std::max<long long>(watermark_, rp->y.floor().to_int64() + 1);
      }
    }
  }
};

// ---------------------------------------------------------------------------
// generic cyclic order on the rationals in [0,1)

class CyclicOracle final : public StructureOracle {
public:
  explicit CyclicOracle(std::uint64_t seed) : StructureOracle(seed) {}

  const std::string& name() const override {
    static const std::string n = "cyclic";
    return n;
  }
  bool no_algebraicity() const override { return true; }
  bool algebraically_convex() const override { return true; }

  // counter-clockwise betweenness: b lies on the arc from a to c
  static bool btw(const Rat& a, const Rat& b, const Rat& c) {
    return frac(b - a) < frac(c - a);
  }

  // cutting the circle at the first tuple entry reduces the cyclic order
  // type to a linear order pattern of the offsets
  bool same_type(const PointVec& a, const PointVec& b) override {
    if (a.size() != b.size()) throw ContractViolation("same_type: length mismatch");
    note_all(a);
    note_all(b);
    if (!equality_pattern_match(a, b)) return false;
    if (a.size() < 3) return true;
    std::vector<Rat> da, db;
    for (std::size_t i = 0; i < a.size(); ++i) {
      da.push_back(frac(std::get<Rat>(a[i]) - std::get<Rat>(a[0])));
      db.push_back(frac(std::get<Rat>(b[i]) - std::get<Rat>(b[0])));
    }
    for (std::size_t i = 1; i < a.size(); ++i)
      for (std::size_t j = i + 1; j < a.size(); ++j)
        if (rat_cmp(da[i], da[j]) != rat_cmp(db[i], db[j])) return false;
    return true;
  }

  PointVec acl(const PointVec& y) override {
    note_all(y);
    return sorted_unique(y);
  }

  Point fresh_point(const PointSet& avoid) override {
    for (;;) {
      Rat c = vdc(fresh_ctr_++ + 1);
      Point p = c;
      if (!seen_.count(c) && !avoid.count(p)) {
        seen_.insert(c);
        return p;
      }
    }
  }

  std::unique_ptr<StructureOracle> clone() const override {
    return std::make_unique<CyclicOracle>(*this);
  }

protected:
  Point realize_impl(const PointVec& base, const PointVec& pattern_base, const Point& pattern_ref,
                     const PointSet& avoid, std::uint64_t salt, int ordinal) override {
    const Rat ref = std::get<Rat>(pattern_ref);
    // locate the arc of the pattern reference among the pattern points and
    // map its endpoints through the index correspondence
    bool bounded = pattern_base.size() >= 1;
    Rat from(0), to(1);
    if (bounded) {
      // cyclic neighbours of ref among the pattern points: the predecessor
      // minimizes the counter-clockwise distance frac(ref - p), the successor
      // minimizes frac(p - ref). With one point the arc is the whole circle
      // minus it.
      std::size_t ipred = 0, isucc = 0;
      Rat best_pred(2), best_succ(2);
      for (std::size_t i = 0; i < pattern_base.size(); ++i) {
        Rat d = frac(ref - std::get<Rat>(pattern_base[i]));
        if (d < best_pred) {
          best_pred = d;
          ipred = i;
        }
        Rat s = frac(std::get<Rat>(pattern_base[i]) - ref);
        if (s < best_succ) {
          best_succ = s;
          isucc = i;
        }
      }
      from = std::get<Rat>(base[ipred]);
      to = std::get<Rat>(base[isucc]);
    }
    std::uint64_t phase = mix2(seed_, salt) % (salt ? 32 : 1);
    int seen = 0;
    for (int idx = 0; idx < realize_budget; ++idx) {
      std::uint64_t n = static_cast<std::uint64_t>(idx) + phase;
      Rat cand;
      if (!bounded) {
        cand = vdc(n + 1);
      } else if (pattern_base.size() == 1) {
        cand = frac(from + vdc(n + 1));
      } else {
        Rat span = frac(to - from);
        if (span.is_zero()) span = Rat(1);
        cand = frac(from + span * vdc(n + 1));
      }
      Point p = cand;
      if (avoid.count(p)) continue;
      bool clash = false;
      for (const auto& v : base) clash |= (v == p);
      if (clash) continue;
      if (!validate_extension(base, pattern_base, pattern_ref, p)) continue;
      if (seen++ == ordinal) {
        seen_.insert(cand);
        return p;
      }
    }
    throw ExhaustedSearch("cyclic: candidate budget exceeded");
  }

private:
  std::uint64_t fresh_ctr_ = 0;
  std::set<Rat> seen_;

  static Rat frac(const Rat& r) {
    Rat f = r - Rat(r.floor(), BigInt(1));
    return f;
  }

  void note_all(const PointVec& v) {
    for (const auto& p : v)
      if (const auto* r = std::get_if<Rat>(&p)) seen_.insert(*r);
  }
};

// ---------------------------------------------------------------------------
// countable-dimensional vector space over a prime field

class VecOracle final : public StructureOracle {
public:
  VecOracle(std::uint64_t seed, int q) : StructureOracle(seed), q_(q) {
    if (q < 2) throw std::invalid_argument("vec: field size must be at least 2");
    for (int d = 2; d * d <= q; ++d)
      if (q % d == 0) throw std::invalid_argument("vec: field size must be prime");
  }

  const std::string& name() const override { return name_str_.empty() ? init_name() : name_str_; }
  bool no_algebraicity() const override { return false; }
  bool algebraically_convex() const override { return false; }

  int field_size() const { return q_; }

  bool same_type(const PointVec& a, const PointVec& b) override {
    if (a.size() != b.size()) throw ContractViolation("same_type: length mismatch");
    note_all(a);
    note_all(b);
    std::vector<FqVec> basis_a, basis_b;
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto ra = reduce_profile(basis_a, std::get<FqVec>(a[i]));
      auto rb = reduce_profile(basis_b, std::get<FqVec>(b[i]));
      if (ra.second != rb.second) return false;
      if (ra.first.c.empty() != rb.first.c.empty()) return false;
      if (!ra.first.c.empty()) {
        basis_a.push_back(ra.first);
        basis_b.push_back(rb.first);
      }
    }
    return true;
  }

  PointVec acl(const PointVec& y) override {
    note_all(y);
    std::vector<FqVec> basis;
    for (const auto& p : y) {
      auto r = reduce_profile(basis, std::get<FqVec>(p));
      if (!r.first.c.empty()) basis.push_back(r.first);
    }
    double count = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) count *= q_;
    if (count > 300000.0) {
      throw std::length_error("vec: span too large to materialize; use acl_contains");
    }
    PointVec out;
    std::vector<int> coeff(basis.size(), 0);
    for (;;) {
      FqVec v;
      for (std::size_t i = 0; i < basis.size(); ++i) v = fq_add(v, fq_scale(basis[i], coeff[i], q_), q_);
      out.push_back(v);
      std::size_t pos = 0;
      while (pos < coeff.size() && ++coeff[pos] == q_) coeff[pos++] = 0;
      if (pos == coeff.size()) break;
    }
    return sorted_unique(std::move(out));
  }

  bool acl_contains(const PointVec& y, const Point& x) override {
    note_all(y);
    std::vector<FqVec> basis;
    for (const auto& p : y) {
      auto r = reduce_profile(basis, std::get<FqVec>(p));
      if (!r.first.c.empty()) basis.push_back(r.first);
    }
    return reduce_profile(basis, std::get<FqVec>(x)).first.c.empty();
  }

  Point fresh_point(const PointSet& avoid) override {
    for (;;) {
      FqVec v;
      v.c.push_back({watermark_++, 1});
      Point p = v;
      if (!avoid.count(p)) return p;
    }
  }

  std::unique_ptr<StructureOracle> clone() const override {
    return std::make_unique<VecOracle>(*this);
  }

protected:
  Point realize_impl(const PointVec& base, const PointVec& pattern_base, const Point& pattern_ref,
                     const PointSet& avoid, std::uint64_t, int ordinal) override {
    // dependent case: the image is forced to be the matching combination.
    // The base-side basis mirrors the pattern-side elimination step for step,
    // so corresponding basis entries are twins under the type correspondence.
    std::vector<FqVec> basis_p, basis_b;
    for (std::size_t i = 0; i < base.size(); ++i) {
      auto rp = reduce_with_coords(basis_p, std::get<FqVec>(pattern_base[i]));
      if (!rp.residual.c.empty()) {
        FqVec twin = std::get<FqVec>(base[i]);
        for (std::size_t j = 0; j < rp.coeffs.size(); ++j) {
          if (rp.coeffs[j]) twin = fq_add(twin, fq_scale(basis_b[j], q_ - rp.coeffs[j], q_), q_);
        }
        basis_p.push_back(rp.residual);
        basis_b.push_back(twin);
      }
    }
    auto ref_red = reduce_with_coords(basis_p, std::get<FqVec>(pattern_ref));
    if (ref_red.residual.c.empty()) {
      // forced: rebuild from base-side basis with the same elimination coefficients
      FqVec z;
      for (std::size_t i = 0; i < ref_red.coeffs.size(); ++i) {
        z = fq_add(z, fq_scale(basis_b[i], ref_red.coeffs[i], q_), q_);
      }
      Point p = z;
      if (avoid.count(p)) throw ExhaustedSearch("vec: forced point lies in the avoid set");
      return p;
    }
    int seen = 0;
    for (int idx = 0; idx < realize_budget; ++idx) {
      FqVec v;
      v.c.push_back({watermark_ + idx, 1});
      Point p = v;
      if (avoid.count(p)) continue;
      if (!validate_extension(base, pattern_base, pattern_ref, p)) continue;
      if (seen++ == ordinal) {
        watermark_ = watermark_ + idx + 1;
        return p;
      }
    }
    throw ExhaustedSearch("vec: candidate budget exceeded");
  }

private:
  int q_;
  std::int32_t watermark_ = 0;
  mutable std::string name_str_;

  const std::string& init_name() const {
    name_str_ = "vec:" + std::to_string(q_);
    return name_str_;
  }

  struct Reduction {
    FqVec residual;
    std::vector<int> coeffs;  // elimination coefficients against the basis
  };

  // residual after eliminating with the (row-echelon) basis; coefficient list
  // records how much of each basis vector was used
  Reduction reduce_with_coords(const std::vector<FqVec>& basis, FqVec v) const {
    Reduction r;
    r.coeffs.assign(basis.size(), 0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (basis[i].c.empty()) continue;
      auto pivot = basis[i].c.front();
      int val = 0;
      for (const auto& [idx, c] : v.c)
        if (idx == pivot.first) val = c;
      if (val == 0) continue;
      int factor = static_cast<int>((static_cast<long long>(val) * inv_mod(pivot.second)) % q_);
      r.coeffs[i] = factor;
      v = fq_add(v, fq_scale(basis[i], q_ - factor, q_), q_);
    }
    r.residual = std::move(v);
    return r;
  }

  std::pair<FqVec, std::vector<int>> reduce_profile(const std::vector<FqVec>& basis,
                                                    const FqVec& v) const {
    auto r = reduce_with_coords(basis, v);
    return {r.residual, r.coeffs};
  }

  int inv_mod(int a) const {
    int r = 1;
    int e = q_ - 2;
    long long base = a % q_;
    while (e) {
      if (e & 1) r = static_cast<int>((r * base) % q_);
      base = (base * base) % q_;
      e >>= 1;
    }
    return r;
  }

  void note_all(const PointVec& v) {
    for (const auto& p : v)
      if (const auto* f = std::get_if<FqVec>(&p))
        for (const auto& [idx, c] : f->c) watermark_ = std::max(watermark_, idx + 1);
  }
};

// ---------------------------------------------------------------------------

Point poset_new_element(StructureOracle& oracle, const PointVec& below, const PointVec& above) {
  auto* p = dynamic_cast<PosetOracle*>(&oracle);
  if (!p) throw ContractViolation("poset_new_element: not a poset oracle");
  std::vector<std::int64_t> b, a;
  for (const auto& pt : below) b.push_back(std::get<std::int64_t>(pt));
  for (const auto& pt : above) a.push_back(std::get<std::int64_t>(pt));
  return p->new_element(b, a);
}

Point rado_extend(StructureOracle& oracle, const PointVec& a, const PointVec& b,
                  const PointSet& avoid) {
  auto* r = dynamic_cast<RadoOracle*>(&oracle);
  if (!r) throw ContractViolation("rado_extend: not a rado oracle");
  std::vector<HfSet> va, vb;
  for (const auto& pt : a) va.push_back(std::get<HfSet>(pt));
  for (const auto& pt : b) vb.push_back(std::get<HfSet>(pt));
  return r->extend(va, vb, avoid);
}

std::unique_ptr<StructureOracle> make_oracle(const std::string& selector, std::uint64_t seed) {
  if (selector == "set") return std::make_unique<SetOracle>(seed);
  if (selector == "dlo") return std::make_unique<DloOracle>(seed);
  if (selector == "rado") return std::make_unique<RadoOracle>(seed);
  if (selector == "poset") return std::make_unique<PosetOracle>(seed);
  if (selector == "perm2") return std::make_unique<Perm2Oracle>(seed);
  if (selector == "cyclic") return std::make_unique<CyclicOracle>(seed);
  if (selector.rfind("eqrel:", 0) == 0) {
    return std::make_unique<EkOracle>(seed, std::stoi(selector.substr(6)));
  }
  if (selector.rfind("vec:", 0) == 0) {
    return std::make_unique<VecOracle>(seed, std::stoi(selector.substr(4)));
  }
  throw std::invalid_argument("unknown structure: " + selector);
}

std::vector<std::string> known_structures() {
  return {"set", "dlo", "rado", "eqrel:k", "poset", "perm2", "cyclic", "vec:q"};
}

}  // namespace mixid
