#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mixid/oracle.hpp"
#include "mixid/point.hpp"
#include "mixid/rational.hpp"
#include "mixid/word.hpp"

namespace mixid {

// ---------------------------------------------------------------------------
// Increasing piecewise-affine bijection of the rationals: breakpoints
// b_0 < ... < b_{m-1} with m+1 affine pieces (slope, intercept), continuous at
// the breakpoints, all slopes positive. Order automorphisms of (Q,<).
class PlqMap {
public:
  PlqMap();  // identity
  PlqMap(std::vector<Rat> breaks, std::vector<std::pair<Rat, Rat>> pieces);

  static PlqMap identity();
  static PlqMap shift(const Rat& by);
  static PlqMap affine(const Rat& slope, const Rat& intercept);
  // fixes the complement of (a,b), moves every interior point
  static PlqMap bump(const Rat& a, const Rat& b);
  // piecewise through the given graph points, identity outside their range
  static PlqMap through_points(const std::vector<std::pair<Rat, Rat>>& pts);

  Rat operator()(const Rat& t) const;
  PlqMap inverse() const;
  friend PlqMap compose(const PlqMap& a, const PlqMap& b);  // t -> b(a(t))

  bool is_identity() const;
  // maximal closed intervals of fixed points; +/- infinity encoded by open bounds
  struct FixedInterval {
    bool from_neg_inf = false, to_pos_inf = false;
    Rat lo, hi;  // meaningful when the respective side is bounded
    friend bool operator==(const FixedInterval&, const FixedInterval&) = default;
  };
  std::vector<FixedInterval> fixed_set() const;
  bool fixes_nontrivial_interval() const;

  const std::vector<Rat>& breaks() const { return breaks_; }
  const std::vector<std::pair<Rat, Rat>>& pieces() const { return pieces_; }

  friend bool operator==(const PlqMap& a, const PlqMap& b);
  std::string str() const;

private:
  std::vector<Rat> breaks_;
  std::vector<std::pair<Rat, Rat>> pieces_;  // slope, intercept
  void validate() const;
  void canonicalize();
};

// ---------------------------------------------------------------------------
// Circle maps on Q/Z with domain [0,1): piecewise-affine lift, strictly
// monotone, degree +1 (orientation preserving) or -1 (reversing).
struct Arc {
  Rat from, to;  // open arc counter-clockwise from 'from' to 'to'; from != to
  bool contains(const Rat& t) const;
};
bool arcs_intersect(const Arc& a, const Arc& b);

class CircleMap {
public:
  CircleMap();  // identity
  // lift pieces on [0,1): breakpoints 0 = u_0 < ... < u_m < 1, piece i on
  // [u_i, u_{i+1}) affine; lift continuous with F(1^-) = F(0) + dir
  CircleMap(std::vector<Rat> breaks, std::vector<std::pair<Rat, Rat>> pieces, int dir);

  static CircleMap identity();
  static CircleMap rotation(const Rat& by);
  static CircleMap reflection();  // t -> -t mod 1
  // fixes the complement of the arc, moves every interior point of it
  static CircleMap bump(const Arc& arc);

  Rat operator()(const Rat& t) const;  // t in [0,1)
  CircleMap inverse() const;
  friend CircleMap compose(const CircleMap& a, const CircleMap& b);  // t -> b(a(t))

  int degree() const { return dir_; }
  bool is_identity() const;
  bool fixes_nontrivial_arc() const;
  Arc arc_image(const Arc& a) const;

  friend bool operator==(const CircleMap& a, const CircleMap& b);
  std::string str() const;

private:
  std::vector<Rat> breaks_;                  // u_0 = 0 < ... < u_m < 1
  std::vector<std::pair<Rat, Rat>> pieces_;  // slope, intercept of the lift
  int dir_ = 1;
  Rat lift(const Rat& t) const;
  void validate() const;
  void canonicalize();
};

// ---------------------------------------------------------------------------
// Finitely supported permutation of the naturals.
class FinPerm {
public:
  FinPerm() = default;
  static FinPerm from_cycles(const std::vector<std::vector<std::int64_t>>& cycles);

  std::int64_t operator()(std::int64_t x) const;
  std::int64_t preimage(std::int64_t x) const;
  FinPerm inverse() const;
  friend FinPerm compose(const FinPerm& a, const FinPerm& b);  // x -> b(a(x))

  bool is_identity() const { return fwd_.empty(); }
  std::uint64_t support_size() const { return fwd_.size(); }
  const std::map<std::int64_t, std::int64_t>& moved() const { return fwd_; }

  friend bool operator==(const FinPerm& a, const FinPerm& b) { return a.fwd_ == b.fwd_; }
  std::string str() const;

private:
  std::map<std::int64_t, std::int64_t> fwd_, bwd_;  // moved points only
  void set(std::int64_t a, std::int64_t b);
  void strip();
};

// ---------------------------------------------------------------------------
// Automorphism of the k-class equivalence relation: a class permutation
// (finitely supported, or a global shift on class ids) together with a
// default slot table and finitely many per-class exceptions.
class EkAut {
public:
  EkAut(int k);
  static EkAut from_parts(int k, FinPerm class_perm, std::vector<int> default_table,
                          std::map<std::int64_t, std::vector<int>> exceptions);
  static EkAut class_shift(int k, std::int64_t by);

  ClassSlot apply(const ClassSlot& p) const;
  ClassSlot apply_inverse(const ClassSlot& p) const;
  EkAut inverse() const;
  std::optional<EkAut> compose_with(const EkAut& then) const;  // concrete when possible

  int k() const { return k_; }
  bool class_perm_finite() const { return shift_ == 0; }
  bool is_identity() const;
  bool total_support_finite() const;
  std::uint64_t support_size() const;  // only when finite

  std::string str() const;

private:
  int k_;
  FinPerm class_perm_;    // used when shift_ == 0
  std::int64_t shift_ = 0;  // global class shift when nonzero
  std::vector<int> default_table_;               // permutation of 0..k-1
  std::map<std::int64_t, std::vector<int>> exceptions_;
  std::vector<int> table_for(std::int64_t cls) const;
  static std::vector<int> invert_table(const std::vector<int>& t);
};

// ---------------------------------------------------------------------------
// Invertible map lambda*id + F on the countable F_q vector space, F of finite
// rank stored as rows (image vector, coordinate functional of finite support).
class GlAut {
public:
  GlAut(int q, int lambda, std::vector<std::pair<FqVec, FqVec>> rows);

  FqVec apply(const FqVec& v) const;
  FqVec apply_inverse(const FqVec& v) const;
  GlAut inverse() const;
  GlAut compose_with(const GlAut& then) const;

  int q() const { return q_; }
  int lambda() const { return lambda_; }
  bool is_identity() const;
  // rank of (this - mu*id) for each mu in F_q^x; finite by construction
  int rank_minus_scalar(int mu) const;

  std::string str() const;

private:
  int q_, lambda_;
  std::vector<std::pair<FqVec, FqVec>> rows_;  // (image u, functional phi)
  std::vector<std::pair<FqVec, FqVec>> inv_rows_;
  int inv_lambda_;
  GlAut(int q, int lambda, std::vector<std::pair<FqVec, FqVec>> rows, int inv_lambda,
        std::vector<std::pair<FqVec, FqVec>> inv_rows);
  void build_inverse();
  FqVec apply_rows(const std::vector<std::pair<FqVec, FqVec>>& rows, int lambda,
                   const FqVec& v) const;
};

// ---------------------------------------------------------------------------
// Finite partial isomorphism over an oracle; grows by back-and-forth steps.
struct PartialIso {
  PointVec dom, ran;

  Point image(StructureOracle& oracle, const Point& x, std::uint64_t salt);
  Point preimage(StructureOracle& oracle, const Point& y, std::uint64_t salt);
  std::optional<Point> lookup(const Point& x) const;
  std::optional<Point> lookup_inverse(const Point& y) const;
};

// ---------------------------------------------------------------------------
// Automorphism value: a shared immutable node. Lazy nodes memoize their
// extension state; single-owner per evaluation context.
class AutNode;
using Aut = std::shared_ptr<AutNode>;

class AutNode {
public:
  virtual ~AutNode() = default;
  virtual Point fwd(const Point& p) = 0;
  virtual Point bwd(const Point& p) = 0;
  virtual std::string describe() const = 0;
};

Aut make_identity_aut();
Aut make_finperm_aut(FinPerm p);
Aut make_plq_aut(PlqMap m);
Aut make_circle_aut(CircleMap m);
Aut make_ek_aut(EkAut a);
Aut make_gl_aut(GlAut a);
Aut make_lazy_aut(StructureOracle* oracle, std::uint64_t salt);
Aut make_lazy_aut(StructureOracle* oracle, PartialIso start, std::uint64_t salt);

Point apply(const Aut& a, const Point& p);
Point apply_inverse(const Aut& a, const Point& p);
Aut compose(const Aut& a, const Aut& b);  // apply a, then b
Aut invert(const Aut& a);

// concrete representation accessors (null when the node is not of that kind)
const FinPerm* as_finperm(const Aut& a);
const PlqMap* as_plq(const Aut& a);
const CircleMap* as_circle(const Aut& a);
const EkAut* as_ek(const Aut& a);
const GlAut* as_gl(const Aut& a);
const PartialIso* as_lazy_state(const Aut& a);
bool is_identity_aut(const Aut& a);

// Smallness / slenderness / support for closed-form representations.
// Throws UnsupportedRepresentation for lazy automorphisms and opaque chains.
bool is_small(const Aut& a);
bool is_slender(const Aut& a);
std::optional<std::uint64_t> support_size(const Aut& a);  // nullopt = infinite

// Resolve a formal constant product against bound names.
Aut resolve(const ConstProd& c, const std::map<std::string, Aut>& bindings);

// Substitution: the word map as a lazily evaluated composition chain.
Aut word_value(const Word& w, const std::map<std::string, Aut>& bindings,
               const std::vector<Aut>& assignment);  // assignment[i] binds variable i+1

}  // namespace mixid
