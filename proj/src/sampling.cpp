#include "mixid/sampling.hpp"

#include <algorithm>

namespace mixid {

Rat random_rat(Rng& rng, long long lo, long long hi, int denom_pow) {
  long long den = 1ll << rng.range(0, denom_pow);
  long long num = rng.range(lo * den, hi * den);
  return Rat(num, den);
}

FinPerm random_finperm(Rng& rng, int universe, int moves) {
  std::vector<std::vector<std::int64_t>> cycles;
  std::vector<std::int64_t> pool;
  for (int i = 0; i < universe; ++i) pool.push_back(i);
  for (int i = universe - 1; i > 0; --i) {
    std::swap(pool[static_cast<std::size_t>(i)],
              pool[static_cast<std::size_t>(rng.range(0, i))]);
  }
  std::size_t used = 0;
  while (static_cast<int>(used) < moves && used + 2 <= pool.size()) {
    std::size_t len = static_cast<std::size_t>(rng.range(2, 3));
    len = std::min(len, pool.size() - used);
    if (len < 2) break;
    cycles.emplace_back(pool.begin() + static_cast<long>(used),
                        pool.begin() + static_cast<long>(used + len));
    used += len;
  }
  return FinPerm::from_cycles(cycles);
}

PlqMap random_plq_bump(Rng& rng, long long lo, long long hi) {
  Rat a = random_rat(rng, lo, hi - 1, 2);
  Rat b = a + Rat(1) + random_rat(rng, 0, 2, 2);
  return PlqMap::bump(a, b);
}

PlqMap random_plq(Rng& rng) {
  switch (rng.below(4)) {
    case 0: return PlqMap::shift(random_rat(rng, 1, 5, 2));
    case 1: return PlqMap::affine(Rat(rng.range(1, 3), 1) + Rat(1, 2), random_rat(rng, -2, 2, 2));
    case 2: return random_plq_bump(rng, -8, 8);
    default:
      return compose(random_plq_bump(rng, -8, 0), PlqMap::shift(random_rat(rng, 1, 4, 2)));
  }
}

CircleMap random_circle(Rng& rng, bool reversing) {
  // increasing piecewise map on a fundamental domain glued at the endpoints,
  // then rotated
  int knots = static_cast<int>(rng.range(2, 4));
  std::vector<Rat> ts{Rat(0)}, vs{Rat(0)};
  for (int i = 0; i <= knots; ++i) {
    ts.push_back(ts.back() + Rat(rng.range(1, 4)));
    vs.push_back(vs.back() + Rat(rng.range(1, 4)));
  }
  Rat tmax = ts.back(), vmax = vs.back();
  std::vector<Rat> breaks;
  std::vector<std::pair<Rat, Rat>> pieces;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    Rat t0 = ts[i] / tmax, v0 = vs[i] / vmax;
    Rat t1 = ts[i + 1] / tmax, v1 = vs[i + 1] / vmax;
    Rat s = (v1 - v0) / (t1 - t0);
    breaks.push_back(t0);
    pieces.push_back({s, v0 - s * t0});
  }
  CircleMap m(std::move(breaks), std::move(pieces), 1);
  m = compose(m, CircleMap::rotation(Rat(rng.range(0, 15), 16)));
  if (reversing) m = compose(m, CircleMap::reflection());
  return m;
}

EkAut random_ek(Rng& rng, int k) {
  FinPerm cp = random_finperm(rng, 6, static_cast<int>(rng.range(0, 4)));
  std::vector<int> dflt(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) dflt[static_cast<std::size_t>(i)] = i;
  std::map<std::int64_t, std::vector<int>> exc;
  int n_exc = static_cast<int>(rng.range(0, 2));
  for (int i = 0; i < n_exc; ++i) {
    std::vector<int> t = dflt;
    for (int s = k - 1; s > 0; --s) {
      std::swap(t[static_cast<std::size_t>(s)], t[static_cast<std::size_t>(rng.range(0, s))]);
    }
    exc[rng.range(0, 5)] = t;
  }
  return EkAut::from_parts(k, cp, dflt, exc);
}

GlAut random_gl(Rng& rng, int q) {
  for (;;) {
    int lambda = static_cast<int>(rng.range(1, q - 1));
    std::vector<std::pair<FqVec, FqVec>> rows;
    int n_rows = static_cast<int>(rng.below(2));
    for (int i = 0; i < n_rows; ++i) {
      FqVec u, phi;
      u.c.push_back({static_cast<std::int32_t>(rng.range(0, 3)),
                     static_cast<std::int32_t>(rng.range(1, q - 1))});
      phi.c.push_back({static_cast<std::int32_t>(rng.range(0, 3)),
                       static_cast<std::int32_t>(rng.range(1, q - 1))});
      rows.push_back({u, phi});
    }
    try {
      return GlAut(q, lambda, rows);
    } catch (const std::invalid_argument&) {
      // singular draw, try again
    }
  }
}

Aut sample_constant(const std::string& structure, StructureOracle& oracle, Rng& rng) {
  if (structure == "set") {
    return make_finperm_aut(random_finperm(rng, 8, static_cast<int>(rng.range(2, 5))));
  }
  if (structure == "dlo") return make_plq_aut(random_plq(rng));
  if (structure == "cyclic") return make_circle_aut(random_circle(rng, false));
  if (structure.rfind("eqrel:", 0) == 0) {
    return make_ek_aut(random_ek(rng, std::stoi(structure.substr(6))));
  }
  if (structure.rfind("vec:", 0) == 0) {
    return make_gl_aut(random_gl(rng, std::stoi(structure.substr(4))));
  }
  // rado, poset, perm2: no usable closed form; seeded lazy automorphism
  return make_lazy_aut(&oracle, rng.u64() | 1);
}

Aut sample_variable(const std::string& structure, StructureOracle& oracle, Rng& rng,
                    bool allow_reversing) {
  // circle assignments are sampled as concrete piecewise maps so arc data
  // stays exactly computable; reversing samples compose with the reflection
  if (structure == "cyclic") {
    return make_circle_aut(random_circle(rng, allow_reversing && rng.coin()));
  }
  if (structure == "dlo" && rng.coin()) {
    return make_plq_aut(random_plq(rng));
  }
  return make_lazy_aut(&oracle, rng.u64() | 1);
}

namespace {

Word random_word(Rng& rng, int max_len, int max_vars,
                 const std::vector<std::string>& const_names, bool force_critical) {
  int l = static_cast<int>(rng.range(1, max_len));
  int r = static_cast<int>(rng.range(1, max_vars));
  std::vector<int> vars, signs;
  for (int j = 0; j < l; ++j) {
    int var = static_cast<int>(rng.range(1, r));
    int sign = rng.coin() ? 1 : -1;
    if (!force_critical && j > 0 && vars.back() == var && signs.back() == -sign) {
      sign = -sign;  // avoid a critical pattern: turn it into a doubled letter
    }
    vars.push_back(var);
    signs.push_back(sign);
  }
  if (force_critical) {
    // plant one explicit critical pair
    int at = l > 1 ? static_cast<int>(rng.range(0, l - 2)) : 0;
    if (l == 1) {
      vars.push_back(vars[0]);
      signs.push_back(-signs[0]);
      ++l;
      at = 0;
    } else {
      vars[static_cast<std::size_t>(at) + 1] = vars[static_cast<std::size_t>(at)];
      signs[static_cast<std::size_t>(at) + 1] = -signs[static_cast<std::size_t>(at)];
    }
  }
  auto random_const = [&](bool may_be_identity) {
    if (may_be_identity && rng.coin()) return ConstProd{};
    return ConstProd::named(const_names[rng.below(const_names.size())]);
  };
  std::vector<ConstProd> consts;
  consts.push_back(random_const(true));
  for (int j = 1; j < l; ++j) {
    bool critical_slot = vars[static_cast<std::size_t>(j - 1)] == vars[static_cast<std::size_t>(j)] &&
                         signs[static_cast<std::size_t>(j - 1)] == -signs[static_cast<std::size_t>(j)];
    consts.push_back(random_const(!critical_slot));
  }
  consts.push_back(random_const(true));
  return Word::from_letters(std::move(consts), std::move(vars), std::move(signs));
}

}  // namespace

Word random_strong_word(Rng& rng, int max_len, int max_vars,
                        const std::vector<std::string>& const_names) {
  for (;;) {
    Word w = random_word(rng, max_len, max_vars, const_names, false);
    if (w.length() > 0 && is_strong(w)) return w;
  }
}

Word random_word_with_critical(Rng& rng, int max_len, int max_vars,
                               const std::vector<std::string>& const_names) {
  for (;;) {
    Word w = random_word(rng, max_len, max_vars, const_names, true);
    if (w.length() > 0 && !classify(w).jminus.empty()) return w;
  }
}

FreeWord random_commutator_word(Rng& rng, int brackets) {
  FreeWord out;
  for (int i = 0; i < std::max(1, brackets); ++i) {
    int n = static_cast<int>(rng.range(1, 3)) * (rng.coin() ? 1 : -1);
    int m = static_cast<int>(rng.range(1, 3)) * (rng.coin() ? 1 : -1);
    FreeWord a = FreeWord::letter(1, 1).pow(n);
    FreeWord b = FreeWord::letter(2, 1).pow(m);
    out = out * FreeWord::commutator(a, b);
  }
  return out;
}

FreeWord random_double_commutator_word(Rng& rng, int brackets) {
  FreeWord out;
  for (int i = 0; i < std::max(1, brackets); ++i) {
    FreeWord a = random_commutator_word(rng, static_cast<int>(rng.range(1, 2)));
    FreeWord b = random_commutator_word(rng, static_cast<int>(rng.range(1, 2)));
    out = out * FreeWord::commutator(a, b);
  }
  return out;
}

}  // namespace mixid
