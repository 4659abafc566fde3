#include "mixid/metabelian.hpp"

#include <stdexcept>

namespace mixid {

MetabelianImage metabelian_image(const FreeWord& u) {
  MetabelianImage acc;  // identity matrix
  for (const auto& l : u.letters()) {
    if (l.var != 1 && l.var != 2) {
      throw std::invalid_argument("metabelian_image: word must be over two variables");
    }
    // letter matrix (g, t)
    long long gx = 0, gy = 0;
    LaurentPoly2 tx, ty;
    if (l.var == 1) {
      gx = l.sign;
      tx = l.sign > 0 ? LaurentPoly2::monomial(1, 0, 0) : LaurentPoly2::monomial(-1, -1, 0);
    } else {
      gy = l.sign;
      ty = l.sign > 0 ? LaurentPoly2::monomial(1, 0, 0) : LaurentPoly2::monomial(-1, 0, -1);
    }
    // acc := acc * letter
    LaurentPoly2 g_acc = LaurentPoly2::monomial(1, acc.ax, acc.ay);
    acc.tx += g_acc * tx;
    acc.ty += g_acc * ty;
    acc.ax += gx;
    acc.ay += gy;
  }
  return acc;
}

bool in_second_derived(const FreeWord& u) { return metabelian_image(u).is_trivial(); }

}  // namespace mixid
