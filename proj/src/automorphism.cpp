#include "mixid/automorphism.hpp"

#include <algorithm>

#include "mixid/errors.hpp"

namespace mixid {

// ---------------------------------------------------------------------------
// PlqMap

PlqMap::PlqMap() : pieces_{{Rat(1), Rat(0)}} {}

PlqMap::PlqMap(std::vector<Rat> breaks, std::vector<std::pair<Rat, Rat>> pieces)
    : breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
  validate();
  canonicalize();
}

PlqMap PlqMap::identity() { return PlqMap(); }

PlqMap PlqMap::shift(const Rat& by) { return PlqMap({}, {{Rat(1), by}}); }

PlqMap PlqMap::affine(const Rat& slope, const Rat& intercept) {
  return PlqMap({}, {{slope, intercept}});
}

PlqMap PlqMap::bump(const Rat& a, const Rat& b) {
  if (!(a < b)) throw std::invalid_argument("PlqMap::bump: empty interval");
  Rat m = (Rat(2) * a + b) / Rat(3);
  Rat mv = (a + Rat(2) * b) / Rat(3);
  return through_points({{a, a}, {m, mv}, {b, b}});
}

PlqMap PlqMap::through_points(const std::vector<std::pair<Rat, Rat>>& pts) {
  if (pts.size() < 2) throw std::invalid_argument("PlqMap: need at least two graph points");
  if (!(pts.front().first == pts.front().second) || !(pts.back().first == pts.back().second)) {
    throw std::invalid_argument("PlqMap: graph must start and end on the diagonal");
  }
  std::vector<Rat> breaks;
  std::vector<std::pair<Rat, Rat>> pieces;
  pieces.push_back({Rat(1), Rat(0)});
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const auto& [x0, y0] = pts[i];
    const auto& [x1, y1] = pts[i + 1];
    if (!(x0 < x1) || !(y0 < y1)) throw std::invalid_argument("PlqMap: graph must increase");
    breaks.push_back(x0);
    Rat s = (y1 - y0) / (x1 - x0);
    pieces.push_back({s, y0 - s * x0});
  }
  breaks.push_back(pts.back().first);
  pieces.push_back({Rat(1), Rat(0)});
  return PlqMap(std::move(breaks), std::move(pieces));
}

void PlqMap::validate() const {
  if (pieces_.size() != breaks_.size() + 1) throw std::invalid_argument("PlqMap: shape mismatch");
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
    if (!(breaks_[i] < breaks_[i + 1])) throw std::invalid_argument("PlqMap: breaks not increasing");
  }
  for (const auto& [s, c] : pieces_) {
    (void)c;
    if (!(Rat(0) < s)) throw std::invalid_argument("PlqMap: slopes must be positive");
  }
  for (std::size_t i = 0; i < breaks_.size(); ++i) {
    Rat left = pieces_[i].first * breaks_[i] + pieces_[i].second;
    Rat right = pieces_[i + 1].first * breaks_[i] + pieces_[i + 1].second;
    if (!(left == right)) throw std::invalid_argument("PlqMap: discontinuity at a breakpoint");
  }
}

void PlqMap::canonicalize() {
  for (std::size_t i = 0; i < breaks_.size();) {
    if (pieces_[i] == pieces_[i + 1]) {
      breaks_.erase(breaks_.begin() + static_cast<long>(i));
      pieces_.erase(pieces_.begin() + static_cast<long>(i));
    } else {
      ++i;
    }
  }
}

Rat PlqMap::operator()(const Rat& t) const {
  std::size_t i = static_cast<std::size_t>(
      std::lower_bound(breaks_.begin(), breaks_.end(), t) - breaks_.begin());
  return pieces_[i].first * t + pieces_[i].second;
}

PlqMap PlqMap::inverse() const {
  std::vector<Rat> breaks;
  std::vector<std::pair<Rat, Rat>> pieces;
  for (std::size_t i = 0; i < breaks_.size(); ++i) {
    breaks.push_back((*this)(breaks_[i]));
  }
  for (const auto& [s, c] : pieces_) {
    pieces.push_back({s.inverse(), -(c / s)});
  }
  return PlqMap(std::move(breaks), std::move(pieces));
}

PlqMap compose(const PlqMap& a, const PlqMap& b) {
  std::vector<Rat> cuts = a.breaks_;
  PlqMap ainv = a.inverse();
  for (const auto& br : b.breaks_) cuts.push_back(ainv(br));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto piece_at = [&](const Rat& t) -> std::pair<Rat, Rat> {
    Rat at = a(t);
    std::size_t ia = static_cast<std::size_t>(
        std::lower_bound(a.breaks_.begin(), a.breaks_.end(), t) - a.breaks_.begin());
    // strict interior representatives keep the lookup unambiguous
    std::size_t ib = static_cast<std::size_t>(
        std::lower_bound(b.breaks_.begin(), b.breaks_.end(), at) - b.breaks_.begin());
    Rat s = a.pieces_[ia].first * b.pieces_[ib].first;
    Rat val = b(at);
    return {s, val - s * t};
  };

  std::vector<std::pair<Rat, Rat>> pieces;
  if (cuts.empty()) {
    pieces.push_back(piece_at(Rat(0)));
  } else {
    pieces.push_back(piece_at(cuts.front() - Rat(1)));
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      pieces.push_back(piece_at((cuts[i] + cuts[i + 1]) / Rat(2)));
    }
    pieces.push_back(piece_at(cuts.back() + Rat(1)));
  }
  return PlqMap(std::move(cuts), std::move(pieces));
}

bool PlqMap::is_identity() const {
  return breaks_.empty() && pieces_.size() == 1 && pieces_[0].first == Rat(1) &&
         pieces_[0].second == Rat(0);
}

std::vector<PlqMap::FixedInterval> PlqMap::fixed_set() const {
  std::vector<FixedInterval> out;
  auto add = [&out](FixedInterval f) {
    if (!out.empty()) {
      FixedInterval& prev = out.back();
      bool touch = !prev.to_pos_inf && !f.from_neg_inf && prev.hi == f.lo;
      if (touch) {
        prev.to_pos_inf = f.to_pos_inf;
        prev.hi = f.hi;
        return;
      }
    }
    out.push_back(std::move(f));
  };
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    bool lo_inf = (i == 0);
    bool hi_inf = (i == pieces_.size() - 1);
    Rat lo = lo_inf ? Rat(0) : breaks_[i - 1];
    Rat hi = hi_inf ? Rat(0) : breaks_[i];
    const auto& [s, c] = pieces_[i];
    if (s == Rat(1)) {
      if (c == Rat(0)) add({lo_inf, hi_inf, lo, hi});
      continue;
    }
    Rat root = c / (Rat(1) - s);
    bool in = (lo_inf || lo <= root) && (hi_inf || root <= hi);
    if (in) add({false, false, root, root});
  }
  return out;
}

bool PlqMap::fixes_nontrivial_interval() const {
  for (const auto& f : fixed_set()) {
    if (f.from_neg_inf || f.to_pos_inf || f.lo < f.hi) return true;
  }
  return false;
}

bool operator==(const PlqMap& a, const PlqMap& b) {
  return a.breaks_ == b.breaks_ && a.pieces_ == b.pieces_;
}

std::string PlqMap::str() const {
  std::string out = "plq{";
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (i) out += " |" + breaks_[i - 1].str() + "| ";
    out += pieces_[i].first.str() + "t+" + pieces_[i].second.str();
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// CircleMap

bool Arc::contains(const Rat& t) const {
  if (from < to) return from < t && t < to;
  return from < t || t < to;
}

bool arcs_intersect(const Arc& a, const Arc& b) {
  return a.contains(b.from) || a.contains(b.to) || b.contains(a.from) || b.contains(a.to) ||
         (a.from == b.from && a.to == b.to);
}

namespace {
Rat frac1(const Rat& r) { return r - Rat(r.floor(), BigInt(1)); }
}  // namespace

CircleMap::CircleMap() : breaks_{Rat(0)}, pieces_{{Rat(1), Rat(0)}}, dir_(1) {}

CircleMap::CircleMap(std::vector<Rat> breaks, std::vector<std::pair<Rat, Rat>> pieces, int dir)
    : breaks_(std::move(breaks)), pieces_(std::move(pieces)), dir_(dir) {
  validate();
  canonicalize();
}

CircleMap CircleMap::identity() { return CircleMap(); }

CircleMap CircleMap::rotation(const Rat& by) {
  return CircleMap({Rat(0)}, {{Rat(1), frac1(by)}}, 1);
}

CircleMap CircleMap::reflection() { return CircleMap({Rat(0)}, {{Rat(-1), Rat(0)}}, -1); }

CircleMap CircleMap::bump(const Arc& arc) {
  const Rat& a = arc.from;
  const Rat& b = arc.to;
  if (!(a < b)) throw std::invalid_argument("CircleMap::bump: arc must not wrap zero");
  Rat m = (Rat(2) * a + b) / Rat(3);
  Rat mv = (a + Rat(2) * b) / Rat(3);
  std::vector<Rat> breaks;
  std::vector<std::pair<Rat, Rat>> pieces;
  if (Rat(0) < a) {
    breaks.push_back(Rat(0));
    pieces.push_back({Rat(1), Rat(0)});
  }
  breaks.push_back(a);
  pieces.push_back({Rat(2), a - Rat(2) * a});
  breaks.push_back(m);
  Rat s2 = (b - mv) / (b - m);
  pieces.push_back({s2, b - s2 * b});
  breaks.push_back(b);
  pieces.push_back({Rat(1), Rat(0)});
  if (!(Rat(0) < a)) {
    // arc starts at 0: drop the leading identity piece
  }
  return CircleMap(std::move(breaks), std::move(pieces), 1);
}

void CircleMap::validate() const {
  if (breaks_.empty() || !(breaks_[0] == Rat(0))) {
    throw std::invalid_argument("CircleMap: first breakpoint must be 0");
  }
  if (pieces_.size() != breaks_.size()) throw std::invalid_argument("CircleMap: shape mismatch");
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
    if (!(breaks_[i] < breaks_[i + 1])) {
      throw std::invalid_argument("CircleMap: breaks not increasing");
    }
  }
  if (!(breaks_.back() < Rat(1))) throw std::invalid_argument("CircleMap: breaks must stay below 1");
  if (dir_ != 1 && dir_ != -1) throw std::invalid_argument("CircleMap: degree must be +-1");
  for (const auto& [s, c] : pieces_) {
    (void)c;
    if (dir_ == 1 && !(Rat(0) < s)) throw std::invalid_argument("CircleMap: slope sign mismatch");
    if (dir_ == -1 && !(s < Rat(0))) throw std::invalid_argument("CircleMap: slope sign mismatch");
  }
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
    Rat left = pieces_[i].first * breaks_[i + 1] + pieces_[i].second;
    Rat right = pieces_[i + 1].first * breaks_[i + 1] + pieces_[i + 1].second;
    if (!(left == right)) throw std::invalid_argument("CircleMap: discontinuity at a breakpoint");
  }
  Rat wrap_left = pieces_.back().first * Rat(1) + pieces_.back().second;
  Rat wrap_right = pieces_.front().second + Rat(dir_);
  if (!(wrap_left == wrap_right)) throw std::invalid_argument("CircleMap: broken wrap condition");
}

void CircleMap::canonicalize() {
  BigInt n = pieces_[0].second.floor();
  if (!(n == BigInt(0))) {
    Rat off(n, BigInt(1));
    for (auto& [s, c] : pieces_) {
      (void)s;
      c -= off;
    }
  }
  for (std::size_t i = 1; i < breaks_.size();) {
    if (pieces_[i - 1] == pieces_[i]) {
      breaks_.erase(breaks_.begin() + static_cast<long>(i));
      pieces_.erase(pieces_.begin() + static_cast<long>(i));
    } else {
      ++i;
    }
  }
}

Rat CircleMap::lift(const Rat& t) const {
  std::size_t i = static_cast<std::size_t>(
      std::upper_bound(breaks_.begin(), breaks_.end(), t) - breaks_.begin());
  if (i > 0) --i;
  return pieces_[i].first * t + pieces_[i].second;
}

Rat CircleMap::operator()(const Rat& t) const { return frac1(lift(frac1(t))); }

CircleMap compose(const CircleMap& a, const CircleMap& b) {
  // cut points: a's breaks plus preimages of b's break residues under a's lift
  std::vector<Rat> cuts = a.breaks_;
  for (std::size_t i = 0; i < a.pieces_.size(); ++i) {
    Rat lo = a.breaks_[i];
    Rat hi = i + 1 < a.breaks_.size() ? a.breaks_[i + 1] : Rat(1);
    const auto& [s, c] = a.pieces_[i];
    Rat vlo = s * lo + c, vhi = s * hi + c;
    Rat vmin = min(vlo, vhi), vmax = max(vlo, vhi);
    for (const auto& u : b.breaks_) {
      for (BigInt k = (vmin - u).floor() - BigInt(1); Rat(k, BigInt(1)) + u <= vmax;
           k = k + BigInt(1)) {
        Rat t = (u + Rat(k, BigInt(1)) - c) / s;
        if (lo < t && t < hi) cuts.push_back(t);
      }
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<std::pair<Rat, Rat>> pieces;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    Rat lo = cuts[i];
    Rat hi = i + 1 < cuts.size() ? cuts[i + 1] : Rat(1);
    Rat rep = (lo + hi) / Rat(2);
    Rat av = a.lift(rep);
    Rat ares = frac1(av);
    BigInt afloor = av.floor();
    std::size_t ia = static_cast<std::size_t>(
        std::upper_bound(a.breaks_.begin(), a.breaks_.end(), rep) - a.breaks_.begin());
    if (ia > 0) --ia;
    std::size_t ib = static_cast<std::size_t>(
        std::upper_bound(b.breaks_.begin(), b.breaks_.end(), ares) - b.breaks_.begin());
    if (ib > 0) --ib;
    Rat slope = a.pieces_[ia].first * b.pieces_[ib].first;
    Rat value = b.lift(ares) + Rat(afloor, BigInt(1)) * Rat(b.dir_);
    pieces.push_back({slope, value - slope * rep});
  }
  return CircleMap(std::move(cuts), std::move(pieces), a.dir_ * b.dir_);
}

CircleMap CircleMap::inverse() const {
  // split points: residues of the lift at the breakpoints (and at 1)
  std::vector<Rat> cuts{Rat(0)};
  for (const auto& u : breaks_) cuts.push_back(frac1(lift(u)));
  cuts.push_back(frac1(pieces_.back().first * Rat(1) + pieces_.back().second));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  while (!cuts.empty() && !(cuts.back() < Rat(1))) cuts.pop_back();

  // per region, solve for a preimage branch; branches are only determined
  // modulo integers, so stitch neighbouring regions back into one continuous
  // lift afterwards
  std::vector<std::pair<Rat, Rat>> pieces;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    Rat lo = cuts[i];
    Rat hi = i + 1 < cuts.size() ? cuts[i + 1] : Rat(1);
    Rat rep = (lo + hi) / Rat(2);
    bool found = false;
    for (std::size_t j = 0; j < pieces_.size() && !found; ++j) {
      Rat plo = breaks_[j];
      Rat phi = j + 1 < breaks_.size() ? breaks_[j + 1] : Rat(1);
      const auto& [s, c] = pieces_[j];
      Rat vlo = s * plo + c, vhi = s * phi + c;
      Rat vmin = min(vlo, vhi), vmax = max(vlo, vhi);
      for (BigInt k = (vmin - rep).floor() - BigInt(1); Rat(k, BigInt(1)) + rep <= vmax;
           k = k + BigInt(1)) {
        Rat t = (rep + Rat(k, BigInt(1)) - c) / s;
        if (plo <= t && t < phi) {
          Rat slope = s.inverse();
          pieces.push_back({slope, t - slope * rep});
          found = true;
          break;
        }
      }
    }
    if (!found) throw std::logic_error("CircleMap::inverse: no covering piece");
  }
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    const Rat& cut = cuts[i + 1];
    Rat left = pieces[i].first * cut + pieces[i].second;
    Rat right = pieces[i + 1].first * cut + pieces[i + 1].second;
    Rat gap = left - right;
    if (!gap.is_integer()) throw std::logic_error("CircleMap::inverse: non-integer branch gap");
    pieces[i + 1].second += gap;
  }
  return CircleMap(std::move(cuts), std::move(pieces), dir_);
}

bool CircleMap::is_identity() const {
  return breaks_.size() == 1 && pieces_[0].first == Rat(1) && pieces_[0].second == Rat(0);
}

bool CircleMap::fixes_nontrivial_arc() const {
  if (dir_ != 1) return false;
  for (const auto& [s, c] : pieces_) {
    if (s == Rat(1) && c.is_integer()) return true;
  }
  return false;
}

Arc CircleMap::arc_image(const Arc& a) const {
  Rat p = (*this)(a.from);
  Rat q = (*this)(a.to);
  if (dir_ == 1) return {p, q};
  return {q, p};
}

bool operator==(const CircleMap& a, const CircleMap& b) {
  return a.dir_ == b.dir_ && a.breaks_ == b.breaks_ && a.pieces_ == b.pieces_;
}

std::string CircleMap::str() const {
  std::string out = dir_ == 1 ? "circle{" : "circle-{";
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (i) out += " |" + breaks_[i].str() + "| ";
    out += pieces_[i].first.str() + "t+" + pieces_[i].second.str();
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// FinPerm

void FinPerm::set(std::int64_t a, std::int64_t b) {
  fwd_[a] = b;
  bwd_[b] = a;
}

void FinPerm::strip() {
  for (auto it = fwd_.begin(); it != fwd_.end();) {
    if (it->first == it->second) {
      bwd_.erase(it->second);
      it = fwd_.erase(it);
    } else {
      ++it;
    }
  }
}

FinPerm FinPerm::from_cycles(const std::vector<std::vector<std::int64_t>>& cycles) {
  FinPerm acc;
  for (const auto& cyc : cycles) {
    FinPerm next;
    if (cyc.size() < 2) continue;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      next.set(cyc[i], cyc[(i + 1) % cyc.size()]);
    }
    if (next.fwd_.size() != cyc.size()) {
      throw std::invalid_argument("FinPerm: repeated entry inside a cycle");
    }
    acc = compose(acc, next);
  }
  return acc;
}

std::int64_t FinPerm::operator()(std::int64_t x) const {
  auto it = fwd_.find(x);
  return it == fwd_.end() ? x : it->second;
}

std::int64_t FinPerm::preimage(std::int64_t x) const {
  auto it = bwd_.find(x);
  return it == bwd_.end() ? x : it->second;
}

FinPerm FinPerm::inverse() const {
  FinPerm r;
  r.fwd_ = bwd_;
  r.bwd_ = fwd_;
  return r;
}

FinPerm compose(const FinPerm& a, const FinPerm& b) {
  FinPerm r;
  std::set<std::int64_t> pts;
  for (const auto& [x, y] : a.fwd_) {
    (void)y;
    pts.insert(x);
  }
  for (const auto& [x, y] : b.fwd_) {
    (void)y;
    pts.insert(x);
  }
  for (auto x : pts) r.set(x, b(a(x)));
  r.strip();
  return r;
}

std::string FinPerm::str() const {
  if (fwd_.empty()) return "()";
  std::string out;
  std::set<std::int64_t> done;
  for (const auto& [start, img] : fwd_) {
    (void)img;
    if (done.count(start)) continue;
    out += "(";
    std::int64_t x = start;
    bool first = true;
    do {
      if (!first) out += " ";
      out += std::to_string(x);
      done.insert(x);
      x = (*this)(x);
      first = false;
    } while (x != start);
    out += ")";
  }
  return out;
}

// ---------------------------------------------------------------------------
// EkAut

EkAut::EkAut(int k) : k_(k) {
  if (k < 1) throw std::invalid_argument("EkAut: class size must be positive");
  default_table_.resize(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) default_table_[static_cast<std::size_t>(i)] = i;
}

std::vector<int> EkAut::invert_table(const std::vector<int>& t) {
  std::vector<int> r(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) r[static_cast<std::size_t>(t[i])] = static_cast<int>(i);
  return r;
}

EkAut EkAut::from_parts(int k, FinPerm class_perm, std::vector<int> default_table,
                        std::map<std::int64_t, std::vector<int>> exceptions) {
  EkAut a(k);
  a.class_perm_ = std::move(class_perm);
  auto check_table = [k](const std::vector<int>& t) {
    if (static_cast<int>(t.size()) != k) throw std::invalid_argument("EkAut: bad table size");
    std::vector<bool> seen(static_cast<std::size_t>(k), false);
    for (int v : t) {
      if (v < 0 || v >= k || seen[static_cast<std::size_t>(v)]) {
        throw std::invalid_argument("EkAut: table is not a permutation");
      }
      seen[static_cast<std::size_t>(v)] = true;
    }
  };
  check_table(default_table);
  a.default_table_ = std::move(default_table);
  for (auto& [cls, t] : exceptions) {
    (void)cls;
    check_table(t);
  }
  a.exceptions_ = std::move(exceptions);
  for (auto it = a.exceptions_.begin(); it != a.exceptions_.end();) {
    if (it->second == a.default_table_) it = a.exceptions_.erase(it);
    else ++it;
  }
  return a;
}

EkAut EkAut::class_shift(int k, std::int64_t by) {
  EkAut a(k);
  a.shift_ = by;
  return a;
}

std::vector<int> EkAut::table_for(std::int64_t cls) const {
  auto it = exceptions_.find(cls);
  return it == exceptions_.end() ? default_table_ : it->second;
}

ClassSlot EkAut::apply(const ClassSlot& p) const {
  std::int64_t target = shift_ != 0 ? p.cls + shift_ : class_perm_(p.cls);
  auto t = table_for(p.cls);
  return {target, t[static_cast<std::size_t>(p.slot)]};
}

ClassSlot EkAut::apply_inverse(const ClassSlot& p) const {
  std::int64_t source = shift_ != 0 ? p.cls - shift_ : class_perm_.preimage(p.cls);
  auto t = invert_table(table_for(source));
  return {source, t[static_cast<std::size_t>(p.slot)]};
}

EkAut EkAut::inverse() const {
  EkAut r(k_);
  r.shift_ = -shift_;
  r.class_perm_ = class_perm_.inverse();
  r.default_table_ = invert_table(default_table_);
  for (const auto& [cls, t] : exceptions_) {
    std::int64_t image_cls = shift_ != 0 ? cls + shift_ : class_perm_(cls);
    r.exceptions_[image_cls] = invert_table(t);
  }
  for (auto it = r.exceptions_.begin(); it != r.exceptions_.end();) {
    if (it->second == r.default_table_) it = r.exceptions_.erase(it);
    else ++it;
  }
  return r;
}

std::optional<EkAut> EkAut::compose_with(const EkAut& then) const {
  if (k_ != then.k_) throw std::invalid_argument("EkAut: class sizes differ");
  EkAut r(k_);
  if (shift_ == 0 && then.shift_ == 0) {
    r.class_perm_ = mixid::compose(class_perm_, then.class_perm_);
  } else if (shift_ != 0 && then.shift_ != 0) {
    r.shift_ = shift_ + then.shift_;  // zero sum falls back to the trivial finite perm
  } else {
    return std::nullopt;
  }
  auto compose_tables = [](const std::vector<int>& first, const std::vector<int>& second) {
    std::vector<int> t(first.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
      t[i] = second[static_cast<std::size_t>(first[i])];
    }
    return t;
  };
  r.default_table_ = compose_tables(default_table_, then.default_table_);
  std::set<std::int64_t> classes;
  for (const auto& [c, t] : exceptions_) {
    (void)t;
    classes.insert(c);
  }
  for (const auto& [c, t] : then.exceptions_) {
    (void)t;
    // classes whose image under this hits a 'then' exception
    std::int64_t pre = shift_ != 0 ? c - shift_ : class_perm_.preimage(c);
    classes.insert(pre);
  }
  for (auto c : classes) {
    std::int64_t mid = shift_ != 0 ? c + shift_ : class_perm_(c);
    auto t = compose_tables(table_for(c), then.table_for(mid));
    if (t != r.default_table_) r.exceptions_[c] = t;
  }
  return r;
}

bool EkAut::is_identity() const {
  std::vector<int> id(static_cast<std::size_t>(k_));
  for (int i = 0; i < k_; ++i) id[static_cast<std::size_t>(i)] = i;
  return shift_ == 0 && class_perm_.is_identity() && default_table_ == id && exceptions_.empty();
}

bool EkAut::total_support_finite() const {
  std::vector<int> id(static_cast<std::size_t>(k_));
  for (int i = 0; i < k_; ++i) id[static_cast<std::size_t>(i)] = i;
  return shift_ == 0 && default_table_ == id;
}

std::uint64_t EkAut::support_size() const {
  if (!total_support_finite()) {
    throw UnsupportedRepresentation("EkAut: infinite support");
  }
  std::uint64_t total = 0;
  std::set<std::int64_t> seen;
  auto count_class = [&](std::int64_t c) {
    if (seen.count(c)) return;
    seen.insert(c);
    if (class_perm_(c) != c) {
      total += static_cast<std::uint64_t>(k_);
      return;
    }
    auto t = table_for(c);
    for (int s = 0; s < k_; ++s) {
      if (t[static_cast<std::size_t>(s)] != s) ++total;
    }
  };
  for (const auto& [c, t] : exceptions_) {
    (void)t;
    count_class(c);
  }
  for (const auto& [c, img] : class_perm_.moved()) {
    (void)img;
    count_class(c);
  }
  return total;
}

std::string EkAut::str() const {
  std::string out = "ek{";
  out += shift_ != 0 ? ("shift " + std::to_string(shift_)) : class_perm_.str();
  out += "}";
  return out;
}

// ---------------------------------------------------------------------------
// GlAut

GlAut::GlAut(int q, int lambda, std::vector<std::pair<FqVec, FqVec>> rows)
    : q_(q), lambda_(((lambda % q) + q) % q), rows_(std::move(rows)), inv_lambda_(0) {
  if (q < 2) throw std::invalid_argument("GlAut: bad field size");
  if (lambda_ == 0) throw std::invalid_argument("GlAut: scalar part must be a unit");
  for (auto& [u, phi] : rows_) {
    (void)u;
    (void)phi;
  }
  build_inverse();
}

GlAut::GlAut(int q, int lambda, std::vector<std::pair<FqVec, FqVec>> rows, int inv_lambda,
             std::vector<std::pair<FqVec, FqVec>> inv_rows)
    : q_(q), lambda_(lambda), rows_(std::move(rows)), inv_rows_(std::move(inv_rows)),
      inv_lambda_(inv_lambda) {}

FqVec GlAut::apply_rows(const std::vector<std::pair<FqVec, FqVec>>& rows, int lambda,
                        const FqVec& v) const {
  FqVec out = fq_scale(v, lambda, q_);
  for (const auto& [u, phi] : rows) {
    long long dot = 0;
    for (const auto& [i, c] : phi.c) {
      for (const auto& [j, d] : v.c) {
        if (i == j) dot += static_cast<long long>(c) * d;
      }
    }
    int val = static_cast<int>(((dot % q_) + q_) % q_);
    if (val) out = fq_add(out, fq_scale(u, val, q_), q_);
  }
  return out;
}

FqVec GlAut::apply(const FqVec& v) const { return apply_rows(rows_, lambda_, v); }

FqVec GlAut::apply_inverse(const FqVec& v) const { return apply_rows(inv_rows_, inv_lambda_, v); }

void GlAut::build_inverse() {
  // indices touched by the finite-rank part
  std::set<std::int32_t> idx;
  for (const auto& [u, phi] : rows_) {
    for (const auto& [i, c] : u.c) {
      (void)c;
      idx.insert(i);
    }
    for (const auto& [i, c] : phi.c) {
      (void)c;
      idx.insert(i);
    }
  }
  std::vector<std::int32_t> ids(idx.begin(), idx.end());
  std::size_t n = ids.size();
  auto pos = [&](std::int32_t i) {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), i) - ids.begin());
  };
  // M[i][j] = coefficient of e_{ids[i]} in apply(e_{ids[j]}); augmented with I
  std::vector<std::vector<int>> m(n, std::vector<int>(2 * n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    FqVec ej;
    ej.c.push_back({ids[j], 1});
    FqVec im = apply(ej);
    for (const auto& [i, c] : im.c) {
      if (!idx.count(i)) throw std::logic_error("GlAut: image escaped the index block");
      m[pos(i)][j] = c;
    }
    m[j][n + j] = 1;
  }
  // Gauss-Jordan over F_q
  auto inv_mod = [this](int a) {
    int r = 1, e = q_ - 2;
    long long base = ((a % q_) + q_) % q_;
    while (e) {
      if (e & 1) r = static_cast<int>((r * base) % q_);
      base = (base * base) % q_;
      e >>= 1;
    }
    return r;
  };
  std::size_t row = 0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = row;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) throw std::invalid_argument("GlAut: map is not invertible");
    std::swap(m[pivot], m[row]);
    int f = inv_mod(m[row][col]);
    for (std::size_t j = 0; j < 2 * n; ++j) {
      m[row][j] = static_cast<int>((static_cast<long long>(m[row][j]) * f) % q_);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || m[i][col] == 0) continue;
      int factor = m[i][col];
      for (std::size_t j = 0; j < 2 * n; ++j) {
        long long v = m[i][j] - static_cast<long long>(factor) * m[row][j];
        m[i][j] = static_cast<int>(((v % q_) + q_) % q_);
      }
    }
    ++row;
  }
  inv_lambda_ = [&] {
    int r = 1, e = q_ - 2;
    long long base = lambda_;
    while (e) {
      if (e & 1) r = static_cast<int>((r * base) % q_);
      base = (base * base) % q_;
      e >>= 1;
    }
    return r;
  }();
  inv_rows_.clear();
  for (std::size_t j = 0; j < n; ++j) {
    // inverse image of e_{ids[j]} is column j of M^{-1}
    FqVec img;
    for (std::size_t i = 0; i < n; ++i) {
      int c = m[i][n + j];
      if (i == j) c = ((c - inv_lambda_) % q_ + q_) % q_;  // subtract the scalar part
      if (c) img.c.push_back({ids[i], c});
    }
    if (!img.c.empty()) {
      FqVec phi;
      phi.c.push_back({ids[j], 1});
      inv_rows_.push_back({img, phi});
    }
  }
}

GlAut GlAut::inverse() const { return GlAut(q_, inv_lambda_, inv_rows_, lambda_, rows_); }

GlAut GlAut::compose_with(const GlAut& then) const {
  if (q_ != then.q_) throw std::invalid_argument("GlAut: field sizes differ");
  std::vector<std::pair<FqVec, FqVec>> rows;
  for (const auto& [u, phi] : rows_) {
    rows.push_back({then.apply(u), phi});
  }
  for (const auto& [u, phi] : then.rows_) {
    rows.push_back({fq_scale(u, lambda_, q_), phi});
  }
  int lam = static_cast<int>((static_cast<long long>(lambda_) * then.lambda_) % q_);
  return GlAut(q_, lam, std::move(rows));
}

bool GlAut::is_identity() const {
  if (lambda_ != 1) return false;
  std::set<std::int32_t> idx;
  for (const auto& [u, phi] : rows_) {
    for (const auto& [i, c] : u.c) {
      (void)c;
      idx.insert(i);
    }
    for (const auto& [i, c] : phi.c) {
      (void)c;
      idx.insert(i);
    }
  }
  for (auto i : idx) {
    FqVec ei;
    ei.c.push_back({i, 1});
    if (!(apply(ei) == ei)) return false;
  }
  return true;
}

int GlAut::rank_minus_scalar(int mu) const {
  mu = ((mu % q_) + q_) % q_;
  if (mu != lambda_) return -1;  // infinite
  std::set<std::int32_t> idx;
  for (const auto& [u, phi] : rows_) {
    for (const auto& [i, c] : u.c) {
      (void)c;
      idx.insert(i);
    }
    for (const auto& [i, c] : phi.c) {
      (void)c;
      idx.insert(i);
    }
  }
  std::vector<FqVec> images;
  for (auto i : idx) {
    FqVec ei;
    ei.c.push_back({i, 1});
    FqVec im = apply(ei);
    // subtract lambda e_i
    im = fq_add(im, fq_scale(ei, q_ - lambda_, q_), q_);
    if (!im.c.empty()) images.push_back(im);
  }
  // Gaussian rank
  std::vector<FqVec> basis;
  auto inv_mod = [this](int a) {
    int r = 1, e = q_ - 2;
    long long base = ((a % q_) + q_) % q_;
    while (e) {
      if (e & 1) r = static_cast<int>((r * base) % q_);
      base = (base * base) % q_;
      e >>= 1;
    }
    return r;
  };
  for (FqVec v : images) {
    for (const auto& b : basis) {
      if (v.c.empty()) break;
      auto pivot = b.c.front();
      int val = 0;
      for (const auto& [i, c] : v.c) {
        if (i == pivot.first) val = c;
      }
      if (val) {
        int f = static_cast<int>((static_cast<long long>(val) * inv_mod(pivot.second)) % q_);
        v = fq_add(v, fq_scale(b, q_ - f, q_), q_);
      }
    }
    if (!v.c.empty()) basis.push_back(v);
  }
  return static_cast<int>(basis.size());
}

std::string GlAut::str() const {
  return "gl{lambda=" + std::to_string(lambda_) + ", rank<=" + std::to_string(rows_.size()) + "}";
}

// ---------------------------------------------------------------------------
// PartialIso

std::optional<Point> PartialIso::lookup(const Point& x) const {
  for (std::size_t i = 0; i < dom.size(); ++i) {
    if (dom[i] == x) return ran[i];
  }
  return std::nullopt;
}

std::optional<Point> PartialIso::lookup_inverse(const Point& y) const {
  for (std::size_t i = 0; i < ran.size(); ++i) {
    if (ran[i] == y) return dom[i];
  }
  return std::nullopt;
}

Point PartialIso::image(StructureOracle& oracle, const Point& x, std::uint64_t salt) {
  if (auto hit = lookup(x)) return *hit;
  Point z = [&] {
    try {
      return oracle.realize(ran, dom, x, PointSet{x}, salt);
    } catch (const ExhaustedSearch&) {
      return oracle.realize(ran, dom, x, PointSet{}, salt);
    }
  }();
  dom.push_back(x);
  ran.push_back(z);
  return z;
}

Point PartialIso::preimage(StructureOracle& oracle, const Point& y, std::uint64_t salt) {
  if (auto hit = lookup_inverse(y)) return *hit;
  Point z = [&] {
    try {
      return oracle.realize(dom, ran, y, PointSet{y}, salt);
    } catch (const ExhaustedSearch&) {
      return oracle.realize(dom, ran, y, PointSet{}, salt);
    }
  }();
  dom.push_back(z);
  ran.push_back(y);
  return z;
}

// ---------------------------------------------------------------------------
// Aut nodes

namespace {

struct IdentityNode final : AutNode {
  Point fwd(const Point& p) override { return p; }
  Point bwd(const Point& p) override { return p; }
  std::string describe() const override { return "id"; }
};

struct FinPermNode final : AutNode {
  FinPerm p;
  explicit FinPermNode(FinPerm q) : p(std::move(q)) {}
  Point fwd(const Point& x) override { return p(std::get<std::int64_t>(x)); }
  Point bwd(const Point& x) override { return p.preimage(std::get<std::int64_t>(x)); }
  std::string describe() const override { return "perm" + p.str(); }
};

struct PlqNode final : AutNode {
  PlqMap m;
  PlqMap minv;
  explicit PlqNode(PlqMap q) : m(std::move(q)), minv(m.inverse()) {}
  Point fwd(const Point& x) override { return m(std::get<Rat>(x)); }
  Point bwd(const Point& x) override { return minv(std::get<Rat>(x)); }
  std::string describe() const override { return m.str(); }
};

struct CircleNode final : AutNode {
  CircleMap m;
  CircleMap minv;
  explicit CircleNode(CircleMap q) : m(std::move(q)), minv(m.inverse()) {}
  Point fwd(const Point& x) override { return m(std::get<Rat>(x)); }
  Point bwd(const Point& x) override { return minv(std::get<Rat>(x)); }
  std::string describe() const override { return m.str(); }
};

struct EkNode final : AutNode {
  EkAut a;
  explicit EkNode(EkAut q) : a(std::move(q)) {}
  Point fwd(const Point& x) override { return a.apply(std::get<ClassSlot>(x)); }
  Point bwd(const Point& x) override { return a.apply_inverse(std::get<ClassSlot>(x)); }
  std::string describe() const override { return a.str(); }
};

struct GlNode final : AutNode {
  GlAut a;
  explicit GlNode(GlAut q) : a(std::move(q)) {}
  Point fwd(const Point& x) override { return a.apply(std::get<FqVec>(x)); }
  Point bwd(const Point& x) override { return a.apply_inverse(std::get<FqVec>(x)); }
  std::string describe() const override { return a.str(); }
};

struct LazyNode final : AutNode {
  StructureOracle* oracle;
  PartialIso iso;
  std::uint64_t salt;
  LazyNode(StructureOracle* o, PartialIso start, std::uint64_t s)
      : oracle(o), iso(std::move(start)), salt(s) {}
  Point fwd(const Point& x) override { return iso.image(*oracle, x, salt); }
  Point bwd(const Point& x) override { return iso.preimage(*oracle, x, salt); }
  std::string describe() const override { return "lazy#" + std::to_string(salt); }
};

struct InverseNode final : AutNode {
  Aut inner;
  explicit InverseNode(Aut a) : inner(std::move(a)) {}
  Point fwd(const Point& x) override { return inner->bwd(x); }
  Point bwd(const Point& x) override { return inner->fwd(x); }
  std::string describe() const override { return inner->describe() + "^-1"; }
};

struct ChainNode final : AutNode {
  std::vector<Aut> factors;  // applied left to right
  explicit ChainNode(std::vector<Aut> fs) : factors(std::move(fs)) {}
  Point fwd(const Point& x) override {
    Point p = x;
    for (auto& f : factors) p = f->fwd(p);
    return p;
  }
  Point bwd(const Point& x) override {
    Point p = x;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) p = (*it)->bwd(p);
    return p;
  }
  std::string describe() const override {
    std::string out = "(";
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) out += " ";
      out += factors[i]->describe();
    }
    return out + ")";
  }
};

}  // namespace

Aut make_identity_aut() { return std::make_shared<IdentityNode>(); }
Aut make_finperm_aut(FinPerm p) { return std::make_shared<FinPermNode>(std::move(p)); }
Aut make_plq_aut(PlqMap m) { return std::make_shared<PlqNode>(std::move(m)); }
Aut make_circle_aut(CircleMap m) { return std::make_shared<CircleNode>(std::move(m)); }
Aut make_ek_aut(EkAut a) { return std::make_shared<EkNode>(std::move(a)); }
Aut make_gl_aut(GlAut a) { return std::make_shared<GlNode>(std::move(a)); }
Aut make_lazy_aut(StructureOracle* oracle, std::uint64_t salt) {
  return std::make_shared<LazyNode>(oracle, PartialIso{}, salt);
}
Aut make_lazy_aut(StructureOracle* oracle, PartialIso start, std::uint64_t salt) {
  return std::make_shared<LazyNode>(oracle, std::move(start), salt);
}

Point apply(const Aut& a, const Point& p) { return a->fwd(p); }
Point apply_inverse(const Aut& a, const Point& p) { return a->bwd(p); }

const FinPerm* as_finperm(const Aut& a) {
  auto* n = dynamic_cast<FinPermNode*>(a.get());
  return n ? &n->p : nullptr;
}
const PlqMap* as_plq(const Aut& a) {
  auto* n = dynamic_cast<PlqNode*>(a.get());
  return n ? &n->m : nullptr;
}
const CircleMap* as_circle(const Aut& a) {
  auto* n = dynamic_cast<CircleNode*>(a.get());
  return n ? &n->m : nullptr;
}
const EkAut* as_ek(const Aut& a) {
  auto* n = dynamic_cast<EkNode*>(a.get());
  return n ? &n->a : nullptr;
}
const GlAut* as_gl(const Aut& a) {
  auto* n = dynamic_cast<GlNode*>(a.get());
  return n ? &n->a : nullptr;
}
const PartialIso* as_lazy_state(const Aut& a) {
  auto* n = dynamic_cast<LazyNode*>(a.get());
  return n ? &n->iso : nullptr;
}
bool is_identity_aut(const Aut& a) { return dynamic_cast<IdentityNode*>(a.get()) != nullptr; }

Aut compose(const Aut& a, const Aut& b) {
  if (is_identity_aut(a)) return b;
  if (is_identity_aut(b)) return a;
  if (const auto* pa = as_finperm(a)) {
    if (const auto* pb = as_finperm(b)) return make_finperm_aut(compose(*pa, *pb));
  }
  if (const auto* pa = as_plq(a)) {
    if (const auto* pb = as_plq(b)) return make_plq_aut(compose(*pa, *pb));
  }
  if (const auto* pa = as_circle(a)) {
    if (const auto* pb = as_circle(b)) return make_circle_aut(compose(*pa, *pb));
  }
  if (const auto* pa = as_gl(a)) {
    if (const auto* pb = as_gl(b)) return make_gl_aut(pa->compose_with(*pb));
  }
  if (const auto* pa = as_ek(a)) {
    if (const auto* pb = as_ek(b)) {
      if (auto fused = pa->compose_with(*pb)) return make_ek_aut(std::move(*fused));
    }
  }
  std::vector<Aut> fs;
  auto flatten = [&fs](const Aut& x) {
    if (auto* ch = dynamic_cast<ChainNode*>(x.get())) {
      fs.insert(fs.end(), ch->factors.begin(), ch->factors.end());
    } else {
      fs.push_back(x);
    }
  };
  flatten(a);
  flatten(b);
  return std::make_shared<ChainNode>(std::move(fs));
}

Aut invert(const Aut& a) {
  if (is_identity_aut(a)) return a;
  if (const auto* p = as_finperm(a)) return make_finperm_aut(p->inverse());
  if (const auto* p = as_plq(a)) return make_plq_aut(p->inverse());
  if (const auto* p = as_circle(a)) return make_circle_aut(p->inverse());
  if (const auto* p = as_gl(a)) return make_gl_aut(p->inverse());
  if (const auto* p = as_ek(a)) return make_ek_aut(p->inverse());
  if (auto* inv = dynamic_cast<InverseNode*>(a.get())) return inv->inner;
  if (auto* ch = dynamic_cast<ChainNode*>(a.get())) {
    std::vector<Aut> fs;
    for (auto it = ch->factors.rbegin(); it != ch->factors.rend(); ++it) fs.push_back(invert(*it));
    return std::make_shared<ChainNode>(std::move(fs));
  }
  return std::make_shared<InverseNode>(a);
}

bool is_small(const Aut& a) {
  if (is_identity_aut(a)) return true;
  if (as_finperm(a)) return true;
  if (const auto* p = as_plq(a)) return p->fixes_nontrivial_interval();
  if (const auto* p = as_circle(a)) return p->is_identity() || p->fixes_nontrivial_arc();
  if (const auto* p = as_ek(a)) return p->total_support_finite();
  if (const auto* p = as_gl(a)) return p->is_identity();
  if (auto* inv = dynamic_cast<InverseNode*>(a.get())) return is_small(inv->inner);
  throw UnsupportedRepresentation("is_small: no decision rule for " + a->describe());
}

bool is_slender(const Aut& a) {
  if (is_identity_aut(a)) return true;
  if (as_finperm(a)) return true;
  if (const auto* p = as_plq(a)) return p->fixes_nontrivial_interval();
  if (const auto* p = as_circle(a)) return p->is_identity() || p->fixes_nontrivial_arc();
  if (const auto* p = as_ek(a)) return p->class_perm_finite();
  if (as_gl(a)) return true;  // lambda*id + finite rank by construction
  if (auto* inv = dynamic_cast<InverseNode*>(a.get())) return is_slender(inv->inner);
  throw UnsupportedRepresentation("is_slender: no decision rule for " + a->describe());
}

std::optional<std::uint64_t> support_size(const Aut& a) {
  if (is_identity_aut(a)) return 0;
  if (const auto* p = as_finperm(a)) return p->support_size();
  if (const auto* p = as_plq(a)) {
    return p->is_identity() ? std::optional<std::uint64_t>(0) : std::nullopt;
  }
  if (const auto* p = as_circle(a)) {
    return p->is_identity() ? std::optional<std::uint64_t>(0) : std::nullopt;
  }
  if (const auto* p = as_ek(a)) {
    if (!p->total_support_finite()) return std::nullopt;
    return p->support_size();
  }
  if (const auto* p = as_gl(a)) {
    return p->is_identity() ? std::optional<std::uint64_t>(0) : std::nullopt;
  }
  if (auto* inv = dynamic_cast<InverseNode*>(a.get())) return support_size(inv->inner);
  throw UnsupportedRepresentation("support_size: no rule for " + a->describe());
}

Aut resolve(const ConstProd& c, const std::map<std::string, Aut>& bindings) {
  Aut acc = make_identity_aut();
  for (const auto& atom : c.atoms()) {
    auto it = bindings.find(atom.name);
    if (it == bindings.end()) {
      throw std::invalid_argument("unresolved constant name: " + atom.name);
    }
    acc = compose(acc, atom.sign > 0 ? it->second : invert(it->second));
  }
  return acc;
}

Aut word_value(const Word& w, const std::map<std::string, Aut>& bindings,
               const std::vector<Aut>& assignment) {
  if (static_cast<int>(assignment.size()) < w.var_count()) {
    throw std::invalid_argument("word_value: assignment does not cover all variables");
  }
  Aut acc = resolve(w.const_at(0), bindings);
  for (int j = 1; j <= w.length(); ++j) {
    Aut h = assignment[static_cast<std::size_t>(w.var_at(j) - 1)];
    acc = compose(acc, w.sign_at(j) > 0 ? h : invert(h));
    acc = compose(acc, resolve(w.const_at(j), bindings));
  }
  return acc;
}

}  // namespace mixid
