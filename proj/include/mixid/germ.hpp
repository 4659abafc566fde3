#pragma once

#include <map>
#include <optional>
#include <string>

#include "mixid/free_word.hpp"
#include "mixid/laurent.hpp"
#include "mixid/pl_homeo.hpp"
#include "mixid/word.hpp"

namespace mixid {

// Germ at 0 of a homeomorphism of the form t -> Lambda * t^(kappa^e), with
// log Lambda = log(lambda) * P(kappa). The pair (e, P) composes by
//   (e1, P1) then (e2, P2)  =  (e1 + e2, P2 + X^{e2} * P1).
struct Germ {
  long long e = 0;
  LaurentPoly p;

  static Germ identity() { return {}; }
  static Germ power_map() { return {1, LaurentPoly{}}; }                       // t -> t^kappa
  static Germ scale_map() { return {0, LaurentPoly::monomial(1, 0)}; }         // t -> lambda t

  friend bool operator==(const Germ& a, const Germ& b) { return a.e == b.e && a.p == b.p; }
  std::string str() const;
};

Germ germ_compose(const Germ& a, const Germ& b);  // apply a, then b
Germ germ_invert(const Germ& a);

// Substitute one variable by the power map t -> t^kappa and the other by
// t -> lambda t, composing germs left to right.
Germ germ_of_word(const FreeWord& u, int power_var = 1, int scale_var = 2);

// Numeric value Lambda * t^(kappa^e) for cross-checks.
double germ_eval(const Germ& g, double kappa, double lambda, double t);

struct NonvanishingWitness {
  Rat kappa0;
  Rat value;   // P(kappa0), nonzero
  Rat lambda0;
};

// For u in the commutator subgroup: a rational kappa0 > 1 with P(kappa0) != 0,
// or nothing when P vanishes identically (a basis change might still apply;
// that route is out of scope and reported as inconclusive).
std::optional<NonvanishingWitness> nonvanishing_witness(const FreeWord& u);

struct OnevarBoundResult {
  Rat max_slope_ratio;  // M = exp(C): largest of slope and 1/slope over all constants
  int length = 0;       // l
  long long exponent_sum = 0;  // e > 0 after normalization
  long long lambda = 0;        // smallest integer with lambda^e > M^l
  PLHomeo g_lambda;
  PLHomeo composed;     // w(g_lambda), exact
  Rat slope_at_zero;    // of the composed map, > 1
  Rat witness_point, witness_value;
  std::string to_json() const;
};

// Quantitative non-vanishing for non-singular one-variable words with PL
// constants: picks lambda past the exact threshold and verifies w(g_lambda)
// differs from the identity at a rational point.
OnevarBoundResult onevar_bound(const Word& w, const std::map<std::string, PLHomeo>& constants);

struct CommutatorBoundResult {
  std::vector<Rat> exponent_chain;  // milestones of the lower-bound exponent
  Rat eta;
  Rat eta_exponent;                 // E, a nonnegative rational
  std::optional<Rat> eta_power;     // eta^E when E is integral
  long long lambda = 0;             // smallest integer with lambda * eta^E > 1
  std::optional<Rat> product;       // lambda * eta^E when E is integral
  int sqrt_depth = 0;
  Rat surrogate_from;  // the chordal surrogate dominates on [surrogate_from, 1]
  Rat witness_point, witness_value;
  std::string to_json() const;
};

// Lower-bound chain for two-variable words with commutator content and PL
// constants whose slope near zero is at least eta; verified with an exact PL
// surrogate for the square-root map.
CommutatorBoundResult commutator_bound(const Word& w,
                                       const std::map<std::string, PLHomeo>& constants,
                                       const Rat& eta);

}  // namespace mixid
