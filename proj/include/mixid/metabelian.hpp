#pragma once

#include <utility>

#include "mixid/free_word.hpp"
#include "mixid/laurent.hpp"

namespace mixid {

// Image of a two-variable free word in the free metabelian group, presented
// as a 2x2 matrix [[g, (tx, ty)], [0, 1]] over the Laurent ring in two
// commuting symbols: g is the abelianized image (a unit monomial), (tx, ty)
// is the row in the rank-2 free module. Multiplication is
// (g1, t1)*(g2, t2) = (g1*g2, g1*t2 + t1). The kernel of this representation
// is exactly the second derived subgroup.
struct MetabelianImage {
  long long ax = 0, ay = 0;  // abelianization exponents (the unit monomial X^ax Y^ay)
  LaurentPoly2 tx, ty;       // module row

  bool is_trivial() const { return ax == 0 && ay == 0 && tx.is_zero() && ty.is_zero(); }
};

// Requires the word to use variables 1 and 2 only.
MetabelianImage metabelian_image(const FreeWord& u);

bool in_second_derived(const FreeWord& u);

}  // namespace mixid
