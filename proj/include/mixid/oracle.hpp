#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>

#include "mixid/errors.hpp"
#include "mixid/point.hpp"

namespace mixid {

// Oracle interface for a countable homogeneous structure with oligomorphic
// automorphism group. Exposes exactly what the witness engine consumes:
// quantifier-free type equality, algebraic closure of finite sets, and
// realization of prescribed one-point types avoiding a finite set.
//
// realize(base, pattern_base, pattern_ref, avoid) returns a point z not in
// avoid with same_type(pattern_base + [pattern_ref], base + [z]); it requires
// same_type(pattern_base, base) and |base| == |pattern_base|. Passing the
// same tuple twice asks for a fresh realization of the type of pattern_ref
// over base. Results are deterministic given the oracle seed and the call
// history; repeated identical calls return pairwise distinct points as long
// as the orbit is infinite.
class StructureOracle {
public:
  explicit StructureOracle(std::uint64_t seed) : seed_(seed) {}
  virtual ~StructureOracle() = default;

  virtual const std::string& name() const = 0;
  virtual bool no_algebraicity() const = 0;
  virtual bool algebraically_convex() const = 0;

  virtual bool same_type(const PointVec& a, const PointVec& b) = 0;

  virtual PointVec acl(const PointVec& y) = 0;
  virtual bool acl_contains(const PointVec& y, const Point& x);

  Point realize(const PointVec& base, const PointVec& pattern_base, const Point& pattern_ref,
                const PointSet& avoid, std::uint64_t salt = 0);
  Point realize(const PointVec& base, const Point& ref, const PointSet& avoid,
                std::uint64_t salt = 0) {
    return realize(base, base, ref, avoid, salt);
  }

  // A brand-new point, algebraically independent from everything the oracle
  // has produced or been shown, and outside avoid.
  virtual Point fresh_point(const PointSet& avoid) = 0;

  virtual std::unique_ptr<StructureOracle> clone() const = 0;

  std::uint64_t seed() const { return seed_; }

  int realize_budget = 10000;     // candidate enumeration bound per call
  int contract_check_limit = 48;  // tuple size up to which redundant type checks run

protected:
  virtual Point realize_impl(const PointVec& base, const PointVec& pattern_base,
                             const Point& pattern_ref, const PointSet& avoid, std::uint64_t salt,
                             int ordinal) = 0;

  // re-validates the defining property of a candidate while tuples are small
  bool validate_extension(const PointVec& base, const PointVec& pattern_base,
                          const Point& pattern_ref, const Point& candidate);

  std::uint64_t seed_;

private:
  // per-argument call counters: the k-th identical call takes the k-th valid
  // candidate in canonical order
  std::map<std::string, int> realize_counts_;
};

bool staggered_independent(StructureOracle& oracle, const PointVec& tuple);

// Structure selector: set | dlo | rado | eqrel:k | poset | perm2 | cyclic | vec:q
std::unique_ptr<StructureOracle> make_oracle(const std::string& selector, std::uint64_t seed);

std::vector<std::string> known_structures();

// Structure-specific extension entry points (throw ContractViolation when the
// oracle is of a different kind).
// poset: a fresh element above everything in below and below everything in above.
Point poset_new_element(StructureOracle& oracle, const PointVec& below, const PointVec& above);
// rado: a vertex adjacent to all of a and to none of b.
Point rado_extend(StructureOracle& oracle, const PointVec& a, const PointVec& b,
                  const PointSet& avoid);

}  // namespace mixid
