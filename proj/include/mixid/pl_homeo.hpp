#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mixid/rational.hpp"

namespace mixid {

// Piecewise-constant positive function on [0,1]: the (multiplicative)
// derivative of a PL homeomorphism. value_[i] holds on (breaks_[i], breaks_[i+1]).
struct SlopeCocycle {
  std::vector<Rat> breaks;  // 0 = b_0 < ... < b_k = 1
  std::vector<Rat> values;  // k entries, all positive

  void canonicalize();  // merge equal neighbours
  friend bool operator==(const SlopeCocycle& a, const SlopeCocycle& b) {
    return a.breaks == b.breaks && a.values == b.values;
  }
  Rat at(const Rat& t) const;  // value of the piece containing t (not a breakpoint)
  Rat max_value() const;
  Rat min_value() const;
  std::string str() const;
};

// Increasing piecewise-linear bijection of [0,1]: exact rational breakpoints
// and values, fixing 0 and 1.
class PLHomeo {
public:
  PLHomeo();  // identity
  static PLHomeo identity();
  // graph points (t_i, v_i), both strictly increasing, first (0,0), last (1,1)
  static PLHomeo from_points(std::vector<std::pair<Rat, Rat>> pts);
  // the standard comparison map: slope lambda on [0, 1/(2*lambda)], affine to 1
  static PLHomeo ramp(const Rat& lambda);
  // fixes [0,1] \ (a,b) pointwise, moves the interior
  static PLHomeo bump(const Rat& a, const Rat& b);
  // chordal approximation of t^(1/2) with nodes at 4^-i, i = depth..0
  static PLHomeo sqrt_chords(int depth);

  Rat operator()(const Rat& t) const;
  PLHomeo inverse() const;
  friend PLHomeo compose(const PLHomeo& a, const PLHomeo& b);  // t -> b(a(t))

  SlopeCocycle slope() const;
  Rat slope_at_zero() const;

  bool is_identity() const;
  // an exact rational point where the map differs from the identity
  std::optional<Rat> witness_not_identity() const;

  const std::vector<Rat>& knots() const { return t_; }
  const std::vector<Rat>& values() const { return v_; }

  friend bool operator==(const PLHomeo& a, const PLHomeo& b) { return a.t_ == b.t_ && a.v_ == b.v_; }
  std::string str() const;

private:
  std::vector<Rat> t_, v_;  // parallel, t_[0]=v_[0]=0, t_.back()=v_.back()=1
  void validate() const;
  void canonicalize();
};

// transport of a cocycle along a map: (s . a)(t) = s(a(t))
SlopeCocycle pullback(const SlopeCocycle& s, const PLHomeo& a);
SlopeCocycle pointwise_product(const SlopeCocycle& a, const SlopeCocycle& b);

}  // namespace mixid
