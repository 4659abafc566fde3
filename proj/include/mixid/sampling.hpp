#pragma once

#include <string>
#include <vector>

#include "mixid/automorphism.hpp"
#include "mixid/free_word.hpp"
#include "mixid/rng.hpp"
#include "mixid/word.hpp"

namespace mixid {

// Random generators used by the identity checks, the acceptance runs and the
// fuzz tests. All deterministic in the passed Rng.

Rat random_rat(Rng& rng, long long lo, long long hi, int denom_pow = 4);

FinPerm random_finperm(Rng& rng, int universe, int moves);
PlqMap random_plq(Rng& rng);          // product of bumps and a possible shift
PlqMap random_plq_bump(Rng& rng, long long lo, long long hi);
CircleMap random_circle(Rng& rng, bool reversing);
EkAut random_ek(Rng& rng, int k);
GlAut random_gl(Rng& rng, int q);

// A concrete constant for the given structure; rado/poset/perm2 use seeded
// lazy automorphisms (the closed forms those structures admit are trivial).
Aut sample_constant(const std::string& structure, StructureOracle& oracle, Rng& rng);

// Assignment value for a variable in randomized identity checks.
Aut sample_variable(const std::string& structure, StructureOracle& oracle, Rng& rng,
                    bool allow_reversing);

// Random reduced word over constant names c1..c_m: strong (no critical
// indices) or with at least one critical index.
Word random_strong_word(Rng& rng, int max_len, int max_vars,
                        const std::vector<std::string>& const_names);
Word random_word_with_critical(Rng& rng, int max_len, int max_vars,
                               const std::vector<std::string>& const_names);

// Free-group samples for the kernel tests: products of commutators of
// commutator-subgroup elements land in the second derived subgroup.
FreeWord random_commutator_word(Rng& rng, int brackets);        // in F'
FreeWord random_double_commutator_word(Rng& rng, int brackets); // in F''

}  // namespace mixid
