#include "mixid/germ.hpp"

#include <cmath>

#include "json.hpp"
#include "mixid/errors.hpp"

namespace mixid {

using ordered_json = nlohmann::ordered_json;

std::string Germ::str() const {
  return "t -> lambda^(" + p.str() + ") * t^(X^" + std::to_string(e) + ")";
}

Germ germ_compose(const Germ& a, const Germ& b) {
  return {a.e + b.e, b.p + a.p.shifted(b.e)};
}

Germ germ_invert(const Germ& a) {
  return {-a.e, (-a.p).shifted(-a.e)};
}

Germ germ_of_word(const FreeWord& u, int power_var, int scale_var) {
  Germ acc;
  for (const auto& l : u.letters()) {
    Germ step;
    if (l.var == power_var) {
      step = Germ::power_map();
    } else if (l.var == scale_var) {
      step = Germ::scale_map();
    } else {
      throw std::invalid_argument("germ_of_word: word uses a third variable");
    }
    if (l.sign < 0) step = germ_invert(step);
    acc = germ_compose(acc, step);
  }
  return acc;
}

double germ_eval(const Germ& g, double kappa, double lambda, double t) {
  double log_scale = 0;
  for (const auto& [e, c] : g.p.coeffs()) {
    log_scale += static_cast<double>(c) * std::pow(kappa, static_cast<double>(e));
  }
  log_scale *= std::log(lambda);
  double exponent = std::pow(kappa, static_cast<double>(g.e));
  return std::exp(log_scale) * std::pow(t, exponent);
}

std::optional<NonvanishingWitness> nonvanishing_witness(const FreeWord& u) {
  if (!u.abelianization().empty()) {
    throw std::invalid_argument(
        "nonvanishing_witness: word lies outside the commutator subgroup; use the one-variable "
        "bound");
  }
  Germ g = germ_of_word(u);
  if (g.e != 0) throw std::logic_error("commutator-subgroup germ with nonzero power part");
  if (g.p.is_zero()) return std::nullopt;
  // finitely many positive roots, so successive integers hit a non-root
  for (long long k = 2;; ++k) {
    Rat at(k);
    Rat val = g.p.eval(at);
    if (!val.is_zero()) return NonvanishingWitness{at, val, Rat(2)};
  }
}

namespace {

PLHomeo resolve_pl(const ConstProd& c, const std::map<std::string, PLHomeo>& constants) {
  PLHomeo acc = PLHomeo::identity();
  for (const auto& atom : c.atoms()) {
    auto it = constants.find(atom.name);
    if (it == constants.end()) {
      throw std::invalid_argument("unresolved constant name: " + atom.name);
    }
    acc = compose(acc, atom.sign > 0 ? it->second : it->second.inverse());
  }
  return acc;
}

// v = c0^{-1} w c0: the leading constant moves into the tail
Word strip_leading(const Word& w, ConstProd& c0) {
  c0 = w.const_at(0);
  std::vector<ConstProd> consts;
  consts.push_back(ConstProd{});
  for (int j = 1; j < w.length(); ++j) consts.push_back(w.const_at(j));
  consts.push_back(w.const_at(w.length()) * c0);
  std::vector<int> vars, signs;
  for (int j = 1; j <= w.length(); ++j) {
    vars.push_back(w.var_at(j));
    signs.push_back(w.sign_at(j));
  }
  return Word::from_letters(std::move(consts), std::move(vars), std::move(signs));
}

}  // namespace

std::string OnevarBoundResult::to_json() const {
  ordered_json j;
  j["length"] = length;
  j["exponent_sum"] = exponent_sum;
  j["max_slope_ratio"] = max_slope_ratio.str();
  j["threshold"] = "lambda^" + std::to_string(exponent_sum) + " > " + max_slope_ratio.str() +
                   "^" + std::to_string(length);
  j["lambda"] = lambda;
  j["slope_at_zero"] = slope_at_zero.str();
  j["witness_point"] = witness_point.str();
  j["witness_value"] = witness_value.str();
  j["composed"] = composed.str();
  return j.dump(2);
}

OnevarBoundResult onevar_bound(const Word& w_in, const std::map<std::string, PLHomeo>& constants) {
  if (w_in.var_count() > 1) {
    throw std::invalid_argument("onevar_bound: word must use a single variable");
  }
  if (w_in.length() == 0 || is_singular(w_in)) {
    throw SingularInput("onevar_bound: word is singular");
  }
  long long e = 0;
  for (int j = 1; j <= w_in.length(); ++j) e += w_in.sign_at(j);
  bool inverted = e < 0;
  Word w = inverted ? w_in.inverse() : w_in;
  if (inverted) e = -e;

  ConstProd c0;
  Word v = strip_leading(w, c0);
  int l = v.length();

  std::vector<PLHomeo> cs(static_cast<std::size_t>(l) + 1);
  Rat m_ratio(1);
  for (int j = 1; j <= l; ++j) {
    cs[static_cast<std::size_t>(j)] = resolve_pl(v.const_at(j), constants);
    SlopeCocycle s = cs[static_cast<std::size_t>(j)].slope();
    m_ratio = max(m_ratio, s.max_value());
    m_ratio = max(m_ratio, s.min_value().inverse());
  }

  // smallest integer lambda with lambda^e > M^l, compared exactly
  Rat ml = m_ratio.pow(l);
  long long lambda = 2;
  while (!(Rat(lambda).pow(e) > ml)) ++lambda;

  PLHomeo g = PLHomeo::ramp(Rat(lambda));
  PLHomeo ginv = g.inverse();
  PLHomeo composed = PLHomeo::identity();
  for (int j = 1; j <= l; ++j) {
    composed = compose(composed, v.sign_at(j) > 0 ? g : ginv);
    composed = compose(composed, cs[static_cast<std::size_t>(j)]);
  }
  // undo the normalization so the reported map is the original word map
  PLHomeo c0_pl = resolve_pl(c0, constants);
  composed = compose(compose(c0_pl, composed), c0_pl.inverse());
  if (inverted) composed = composed.inverse();

  OnevarBoundResult res;
  res.max_slope_ratio = m_ratio;
  res.length = l;
  res.exponent_sum = inverted ? -e : e;
  res.lambda = lambda;
  res.g_lambda = g;
  res.slope_at_zero = composed.slope_at_zero();
  auto witness = composed.witness_not_identity();
  if (!witness) {
    throw std::logic_error("onevar_bound: composed map collapsed to the identity");
  }
  res.witness_point = *witness;
  res.witness_value = composed(*witness);
  res.composed = std::move(composed);
  return res;
}

std::string CommutatorBoundResult::to_json() const {
  ordered_json j;
  ordered_json chain = ordered_json::array();
  for (const auto& r : exponent_chain) chain.push_back(r.str());
  j["exponent_chain"] = chain;
  j["eta"] = eta.str();
  j["eta_exponent"] = eta_exponent.str();
  if (eta_power) j["eta_power"] = eta_power->str();
  j["lambda"] = lambda;
  if (product) j["product"] = product->str();
  j["sqrt_depth"] = sqrt_depth;
  j["surrogate_from"] = surrogate_from.str();
  j["witness_point"] = witness_point.str();
  j["witness_value"] = witness_value.str();
  return j.dump(2);
}

CommutatorBoundResult commutator_bound(const Word& w,
                                       const std::map<std::string, PLHomeo>& constants,
                                       const Rat& eta) {
  FreeWord expected = FreeWord::commutator(FreeWord::letter(1, 1), FreeWord::letter(2, 1));
  if (!(w.content() == expected)) {
    throw ContentMismatch("commutator_bound: content must be the basic commutator");
  }
  if (!(Rat(0) < eta) || Rat(1) < eta) {
    throw std::invalid_argument("commutator_bound: eta must lie in (0,1]");
  }

  int l = w.length();
  std::vector<PLHomeo> cs(static_cast<std::size_t>(l) + 1);
  for (int j = 0; j <= l; ++j) {
    cs[static_cast<std::size_t>(j)] = resolve_pl(w.const_at(j), constants);
    if (!cs[static_cast<std::size_t>(j)].is_identity() &&
        cs[static_cast<std::size_t>(j)].slope_at_zero() < eta) {
      throw std::invalid_argument("commutator_bound: a constant has slope below eta near zero");
    }
  }

  // Walk the word tracking the exponent E of the lower bound eta^E:
  // passing through the power map halves it, through its inverse doubles it,
  // each nontrivial constant adds one, the scale map leaves it unchanged.
  // Milestones are recorded once the first power-map letter has been applied.
  Rat expo(0);
  std::vector<Rat> chain;
  bool seen_power = false;
  auto record = [&] {
    if (seen_power && (chain.empty() || !(chain.back() == expo))) chain.push_back(expo);
  };
  if (!cs[0].is_identity()) expo += Rat(1);
  for (int j = 1; j <= l; ++j) {
    if (w.var_at(j) == 1) {
      expo = w.sign_at(j) > 0 ? expo / Rat(2) : expo * Rat(2);
      seen_power = true;
      record();
    } else {
      record();
    }
    if (!w.const_at(j).is_identity()) {
      expo += Rat(1);
      record();
    }
  }

  CommutatorBoundResult res;
  res.exponent_chain = std::move(chain);
  res.eta = eta;
  res.eta_exponent = expo;
  if (!expo.num().fits_int64() || !expo.den().fits_int64()) {
    throw std::logic_error("commutator_bound: exponent out of range");
  }
  long long p = expo.num().to_int64(), q = expo.den().to_int64();
  if (expo.is_integer()) res.eta_power = eta.pow(p);

  // smallest integer lambda with lambda * eta^E > 1, i.e. lambda^q * eta^p > 1
  long long lambda = 2;
  while (!(Rat(lambda).pow(q) * eta.pow(p) > Rat(1))) ++lambda;
  res.lambda = lambda;
  if (res.eta_power) res.product = Rat(lambda) * *res.eta_power;

  res.sqrt_depth = 10;
  PLHomeo f = PLHomeo::sqrt_chords(res.sqrt_depth);
  res.surrogate_from = Rat(BigInt(1), BigInt(4).pow(static_cast<std::uint64_t>(res.sqrt_depth)));
  PLHomeo g = PLHomeo::ramp(Rat(lambda));
  PLHomeo finv = f.inverse(), ginv = g.inverse();
  PLHomeo composed = cs[0];
  for (int j = 1; j <= l; ++j) {
    const PLHomeo& letter = w.var_at(j) == 1 ? (w.sign_at(j) > 0 ? f : finv)
                                             : (w.sign_at(j) > 0 ? g : ginv);
    composed = compose(composed, letter);
    composed = compose(composed, cs[static_cast<std::size_t>(j)]);
  }
  auto witness = composed.witness_not_identity();
  if (!witness) {
    throw std::logic_error("commutator_bound: surrogate composition collapsed to the identity");
  }
  res.witness_point = *witness;
  res.witness_value = composed(*witness);
  return res;
}

}  // namespace mixid
