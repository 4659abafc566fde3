#include "mixid/witness.hpp"

#include <algorithm>

#include "json.hpp"

namespace mixid {

using ordered_json = nlohmann::ordered_json;

std::string branch_name(Branch b) {
  switch (b) {
    case Branch::Strong: return "strong";
    case Branch::ConvexNoSmall: return "convex";
    case Branch::NoSlender: return "slender";
  }
  return "?";
}

namespace {

// v = c0^{-1} w c0 has trivial leading constant; the trailing constant
// becomes c_l * c0.
Word normalize_leading(const Word& w, ConstProd& c0_out) {
  c0_out = w.const_at(0);
  std::vector<ConstProd> consts;
  consts.push_back(ConstProd{});
  for (int j = 1; j < w.length(); ++j) consts.push_back(w.const_at(j));
  consts.push_back(w.const_at(w.length()) * c0_out);
  std::vector<int> vars, signs;
  for (int j = 1; j <= w.length(); ++j) {
    vars.push_back(w.var_at(j));
    signs.push_back(w.sign_at(j));
  }
  return Word::from_letters(std::move(consts), std::move(vars), std::move(signs));
}

PointVec with_point(PointVec v, const Point& p) {
  v.push_back(p);
  return v;
}

ordered_json points_json(const PointVec& ps) {
  ordered_json arr = ordered_json::array();
  for (const auto& p : ps) arr.push_back(point_str(p));
  return arr;
}

struct Engine {
  const WitnessRequest& req;
  StructureOracle& oracle;
  Word v;
  ConstProd c0;
  std::vector<Aut> consts;  // 1..l resolved against the normalized word
  Aut c0_aut;
  int r = 0;
  int l = 0;

  std::vector<PointVec> omega_plus, omega_minus;  // per variable, aligned
  PointVec pair_pts;                              // normalized pair points so far
  WitnessCertificate cert;

  explicit Engine(const WitnessRequest& rq) : req(rq), oracle(*rq.oracle) {
    if (!req.oracle) throw ContractViolation("build_witness: no oracle");
    if (req.word.length() < 1) throw ContractViolation("build_witness: word must have positive length");
    if (req.pairs < 1) throw ContractViolation("build_witness: pair count must be positive");
    v = normalize_leading(req.word, c0);
    if (v.length() != req.word.length()) {
      throw ContractViolation("build_witness: word is not reduced");
    }
    l = v.length();
    r = v.var_count();
    consts.resize(static_cast<std::size_t>(l) + 1);
    for (int j = 1; j <= l; ++j) {
      consts[static_cast<std::size_t>(j)] = resolve(v.const_at(j), req.bindings);
    }
    c0_aut = resolve(c0, req.bindings);
    omega_plus.assign(static_cast<std::size_t>(r), {});
    omega_minus.assign(static_cast<std::size_t>(r), {});
    validate_branch();
    cert.structure = oracle.name();
    cert.seed = oracle.seed();
    cert.original_word = req.word;
    cert.normalized_word = v;
    cert.leading_constant = c0;
    cert.h_dom.assign(static_cast<std::size_t>(r), {});
    cert.h_ran.assign(static_cast<std::size_t>(r), {});
  }

  void validate_branch() {
    auto cls = classify(v);
    if (req.branch == Branch::Strong && !cls.jminus.empty()) {
      throw ContractViolation("branch strong requires a word without critical indices");
    }
    if (req.branch == Branch::ConvexNoSmall && !oracle.algebraically_convex()) {
      throw ContractViolation("branch convex requires an algebraically convex structure");
    }
    // cross-check the caller-asserted hypothesis against the decidable
    // detectors; a proven violation makes sampling pointless, so refuse with
    // the offending constant named. Lazy constants stay undecided and the
    // per-step retry budget takes over.
    for (const auto& [j, c] : cls.critical) {
      Aut a = resolve(c, req.bindings);
      try {
        if (req.branch == Branch::ConvexNoSmall && is_small(a)) throw RetryExhausted(j, c.str());
        if (req.branch == Branch::NoSlender && is_slender(a)) throw RetryExhausted(j, c.str());
      } catch (const UnsupportedRepresentation&) {
        // detectors are partial; sampling decides at run time
      }
    }
  }

  PointVec& side(int var, int sign) {
    auto k = static_cast<std::size_t>(var - 1);
    return sign > 0 ? omega_plus[k] : omega_minus[k];
  }

  Point pick_alpha() {
    int v1 = v.var_at(1), e1 = v.sign_at(1);
    PointSet avoid;
    for (int attempt = 0; attempt <= req.retry_budget; ++attempt) {
      Point cand = oracle.fresh_point(avoid);
      if (!oracle.acl_contains(side(v1, e1), cand) && !oracle.acl_contains(pair_pts, cand)) {
        return cand;
      }
      avoid.insert(cand);
    }
    throw RetryExhausted(0, "<fresh point>");
  }

  Point choose_step(int i, int j, const Point& cur, PointVec& pattern, PointVec& base) {
    PointSet avoid;
    std::optional<Point> convex_fix;
    PointVec convex_k;
    int rejected = 0;
    bool critical = j < l && v.var_at(j) == v.var_at(j + 1) && v.sign_at(j) == -v.sign_at(j + 1);
    for (int attempt = 0; attempt <= req.retry_budget; ++attempt) {
      Point z = [&] {
        if (critical && req.branch == Branch::ConvexNoSmall && convex_fix) {
          return oracle.realize(convex_k, convex_k, *convex_fix, avoid);
        }
        return oracle.realize(base, pattern, cur, avoid);
      }();
      if (critical && req.branch == Branch::ConvexNoSmall && !convex_fix) {
        // fix the first candidate and sample its orbit over the punctured closure
        convex_fix = z;
        convex_k = oracle.acl(with_point(base, z));
        convex_k.erase(std::remove(convex_k.begin(), convex_k.end(), z), convex_k.end());
      }
      if (accept(j, cur, z, base)) {
        if (critical && req.branch == Branch::ConvexNoSmall) {
          // punctured-closure identity for the accepted orbit point
          PointVec kz = oracle.acl(with_point(base, z));
          kz.erase(std::remove(kz.begin(), kz.end(), z), kz.end());
          if (!(kz == convex_k)) {
            throw ContractViolation("punctured closure drifted along the orbit");
          }
        }
        PointVec ext_p = with_point(pattern, cur), ext_b = with_point(base, z);
        if (!oracle.same_type(ext_p, ext_b)) {
          throw ContractViolation("engine produced a candidate of the wrong type");
        }
        cert.log.push_back({i, j, rejected, point_str(cur), points_str(base), point_str(z)});
        return z;
      }
      avoid.insert(z);
      ++rejected;
    }
    throw RetryExhausted(j, v.const_at(j).str());
  }

  bool accept(int j, const Point& cur, const Point& z, const PointVec& base) {
    const Aut& cj = consts[static_cast<std::size_t>(j)];
    Point zc = mixid::apply(cj, z);
    if (j == l) {
      // final step: the new pair endpoint beta stays independent of all
      // pair points chosen so far, including the current alpha
      return !oracle.acl_contains(with_point(pair_pts, current_alpha_), zc);
    }
    int k1 = v.var_at(j + 1), e1 = v.sign_at(j + 1);
    int k = v.var_at(j), e = v.sign_at(j);
    if (k1 != k) {
      return !oracle.acl_contains(side(k1, e1), zc);
    }
    if (e1 == e) {
      return !oracle.acl_contains(with_point(side(k, e), cur), zc);
    }
    // critical index
    if (req.branch == Branch::ConvexNoSmall) {
      if (zc == z) return false;
      PointVec k_set = oracle.acl(with_point(base, z));
      k_set.erase(std::remove(k_set.begin(), k_set.end(), z), k_set.end());
      return std::find(k_set.begin(), k_set.end(), zc) == k_set.end();
    }
    if (req.branch == Branch::NoSlender) {
      return !oracle.acl_contains(with_point(base, z), zc);
    }
    throw ContractViolation("critical index reached under branch strong");
  }

  Point current_alpha_;

  WitnessCertificate build() {
    for (int i = 1; i <= req.pairs; ++i) run_pair(i);
    for (int k = 1; k <= r; ++k) {
      cert.h_dom[static_cast<std::size_t>(k - 1)] = side(k, +1);
      cert.h_ran[static_cast<std::size_t>(k - 1)] = side(k, -1);
    }
    for (auto& [alpha, beta] : cert.normalized_pairs) {
      cert.pairs.emplace_back(apply_inverse(c0_aut, alpha), apply_inverse(c0_aut, beta));
    }
    PointVec flat;
    for (const auto& [a, b] : cert.pairs) {
      flat.push_back(a);
      flat.push_back(b);
    }
    if (!staggered_independent(oracle, flat)) {
      throw ContractViolation("emitted pairs are not staggered independent");
    }
    return std::move(cert);
  }

  void run_pair(int i) {
    Point alpha = pick_alpha();
    current_alpha_ = alpha;
    PointVec chain{alpha};
    Point cur = alpha;
    Point last_minus = alpha;
    for (int j = 1; j <= l; ++j) {
      int k = v.var_at(j), e = v.sign_at(j);
      PointVec& pattern = side(k, e);
      PointVec& base = side(k, -e);
      if (oracle.acl_contains(pattern, cur)) {
        throw ContractViolation("engine invariant broken: chain point is algebraic over its side");
      }
      Point z = choose_step(i, j, cur, pattern, base);
      chain.push_back(z);
      side(k, +1).push_back(e > 0 ? cur : z);
      side(k, -1).push_back(e > 0 ? z : cur);
      last_minus = z;
      if (j < l) {
        cur = mixid::apply(consts[static_cast<std::size_t>(j)], z);
        chain.push_back(cur);
      }
    }
    Point beta = mixid::apply(consts[static_cast<std::size_t>(l)], last_minus);
    pair_pts.push_back(alpha);
    pair_pts.push_back(beta);
    cert.normalized_pairs.emplace_back(alpha, beta);
    cert.chains.push_back(std::move(chain));
  }
};

}  // namespace

WitnessCertificate build_witness(const WitnessRequest& req) { return Engine(req).build(); }

std::string WitnessCertificate::to_json() const {
  ordered_json j;
  j["word"] = original_word.str();
  j["structure"] = structure;
  j["seed"] = seed;
  j["normalized_word"] = normalized_word.str();
  j["conjugated_by"] = leading_constant.str();
  ordered_json prs = ordered_json::array();
  for (const auto& [a, b] : pairs) {
    prs.push_back(ordered_json{{"alpha", point_str(a)}, {"beta", point_str(b)}});
  }
  j["pairs"] = prs;
  ordered_json nprs = ordered_json::array();
  for (const auto& [a, b] : normalized_pairs) {
    nprs.push_back(ordered_json{{"alpha", point_str(a)}, {"beta", point_str(b)}});
  }
  j["normalized_pairs"] = nprs;
  ordered_json chs = ordered_json::array();
  for (const auto& c : chains) chs.push_back(points_json(c));
  j["chains"] = chs;
  ordered_json omega;
  ordered_json oplus = ordered_json::array(), ominus = ordered_json::array();
  for (const auto& d : h_dom) oplus.push_back(points_json(d));
  for (const auto& d : h_ran) ominus.push_back(points_json(d));
  omega["plus"] = oplus;
  omega["minus"] = ominus;
  j["omega_sets"] = omega;
  ordered_json hs = ordered_json::array();
  for (std::size_t k = 0; k < h_dom.size(); ++k) {
    hs.push_back(ordered_json{{"domain", points_json(h_dom[k])}, {"range", points_json(h_ran[k])}});
  }
  j["h_maps"] = hs;
  ordered_json lg = ordered_json::array();
  for (const auto& e : log) {
    lg.push_back(ordered_json{{"pair", e.pair},
                              {"step", e.step},
                              {"rejected", e.rejected},
                              {"ref", e.ref},
                              {"base", e.base},
                              {"chosen", e.chosen}});
  }
  j["log"] = lg;
  j["warnings"] = warnings;
  return j.dump(2);
}

VerifyReport verify_certificate(const WitnessCertificate& cert, const WitnessRequest& req) {
  auto fail = [](const std::string& what) { return VerifyReport{false, what}; };
  if (!req.oracle) return fail("no oracle");
  StructureOracle& oracle = *req.oracle;
  if (!(cert.original_word == req.word)) return fail("certificate word differs from request");
  ConstProd c0;
  Word v = normalize_leading(req.word, c0);
  if (!(v == cert.normalized_word)) return fail("normalized word mismatch");
  if (!(c0 == cert.leading_constant)) return fail("leading constant mismatch");
  int l = v.length();
  int r = v.var_count();
  std::vector<Aut> consts(static_cast<std::size_t>(l) + 1);
  for (int j = 1; j <= l; ++j) consts[static_cast<std::size_t>(j)] = resolve(v.const_at(j), req.bindings);
  Aut c0_aut = resolve(c0, req.bindings);

  std::size_t n = cert.normalized_pairs.size();
  if (cert.pairs.size() != n || cert.chains.size() != n) return fail("pair/chain count mismatch");
  if (static_cast<int>(cert.h_dom.size()) != r || static_cast<int>(cert.h_ran.size()) != r) {
    return fail("h map count mismatch");
  }

  std::vector<PointVec> dom(static_cast<std::size_t>(r)), ran(static_cast<std::size_t>(r));
  for (std::size_t i = 0; i < n; ++i) {
    const PointVec& chain = cert.chains[i];
    if (static_cast<int>(chain.size()) != 2 * l) return fail("chain length mismatch");
    if (!(chain[0] == cert.normalized_pairs[i].first)) return fail("chain does not start at alpha");
    for (int j = 1; j < l; ++j) {
      Point expect = mixid::apply(consts[static_cast<std::size_t>(j)],
                           chain[static_cast<std::size_t>(2 * j - 1)]);
      if (!(chain[static_cast<std::size_t>(2 * j)] == expect)) {
        return fail("chain equation fails at pair " + std::to_string(i + 1) + ", step " +
                    std::to_string(j) + ": w_" + std::to_string(j + 1) +
                    " != c_" + std::to_string(j) + "(w_" + std::to_string(j) + "^-)");
      }
    }
    Point beta = mixid::apply(consts[static_cast<std::size_t>(l)], chain[static_cast<std::size_t>(2 * l - 1)]);
    if (!(beta == cert.normalized_pairs[i].second)) return fail("final constant does not map to beta");
    Point a0 = apply_inverse(c0_aut, cert.normalized_pairs[i].first);
    Point b0 = apply_inverse(c0_aut, cert.normalized_pairs[i].second);
    if (!(cert.pairs[i].first == a0) || !(cert.pairs[i].second == b0)) {
      return fail("pair transport through the leading constant fails");
    }
    for (int j = 1; j <= l; ++j) {
      int k = v.var_at(j), e = v.sign_at(j);
      const Point& pe = chain[static_cast<std::size_t>(2 * (j - 1))];
      const Point& pm = chain[static_cast<std::size_t>(2 * (j - 1) + 1)];
      dom[static_cast<std::size_t>(k - 1)].push_back(e > 0 ? pe : pm);
      ran[static_cast<std::size_t>(k - 1)].push_back(e > 0 ? pm : pe);
    }
  }
  for (int k = 0; k < r; ++k) {
    if (!(dom[static_cast<std::size_t>(k)] == cert.h_dom[static_cast<std::size_t>(k)]) ||
        !(ran[static_cast<std::size_t>(k)] == cert.h_ran[static_cast<std::size_t>(k)])) {
      return fail("h map data does not match the chains");
    }
    PointSet d(dom[static_cast<std::size_t>(k)].begin(), dom[static_cast<std::size_t>(k)].end());
    PointSet g(ran[static_cast<std::size_t>(k)].begin(), ran[static_cast<std::size_t>(k)].end());
    if (d.size() != dom[static_cast<std::size_t>(k)].size() ||
        g.size() != ran[static_cast<std::size_t>(k)].size()) {
      return fail("collision inside an h map side");
    }
    if (!oracle.same_type(cert.h_dom[static_cast<std::size_t>(k)],
                          cert.h_ran[static_cast<std::size_t>(k)])) {
      return fail("h map sides are not isomorphic as substructures");
    }
  }
  PointVec flat;
  for (const auto& [a, b] : cert.pairs) {
    flat.push_back(a);
    flat.push_back(b);
  }
  if (!staggered_independent(oracle, flat)) return fail("pairs are not staggered independent");
  return {};
}

std::string RefutationReport::to_json() const {
  ordered_json j;
  j["moved_from"] = point_str(moved_from);
  j["moved_to"] = point_str(moved_to);
  j["certificate"] = ordered_json::parse(cert.to_json());
  return j.dump(2);
}

RefutationReport refute_mixed_identity(const WitnessRequest& req) {
  WitnessRequest one = req;
  one.pairs = std::max(1, req.pairs);
  WitnessCertificate cert = build_witness(one);
  RefutationReport rep;
  rep.moved_from = cert.pairs.front().first;
  rep.moved_to = cert.pairs.front().second;
  if (rep.moved_from == rep.moved_to) {
    throw ContractViolation("refutation pair degenerated");
  }
  rep.cert = std::move(cert);
  return rep;
}

std::string SymPipelineReport::to_json() const {
  ordered_json j;
  j["word"] = original.str();
  j["collapsed_word"] = collapsed.str();
  j["budget"] = budget;
  j["collapse_steps"] = collapse_steps;
  j["pairs_requested"] = budget + 2;
  ordered_json mv = ordered_json::array();
  for (const auto& [a, b] : moved) {
    mv.push_back(ordered_json{{"from", point_str(a)}, {"to", point_str(b)}});
  }
  j["moved_points"] = mv;
  j["agreeing_pairs"] = agreeing_pairs;
  j["certificate"] = ordered_json::parse(cert.to_json());
  return j.dump(2);
}

SymPipelineReport sym_nonsingular_pipeline(const Word& w,
                                           const std::map<std::string, Aut>& bindings,
                                           StructureOracle& oracle, int retry_budget) {
  if (oracle.name() != "set") {
    throw ContractViolation("pipeline runs over the pure set only");
  }
  if (is_singular(w)) throw SingularInput("pipeline requires a non-singular word");

  DropFn drop = [&bindings](const ConstProd& c) -> std::optional<std::uint64_t> {
    Aut a = resolve(c, bindings);
    auto s = support_size(a);
    if (!s) return std::nullopt;  // infinite support stays
    return *s;
  };
  auto collapsed = collapse_critical(w, drop);
  if (collapsed.word.length() == 0) {
    throw ContractViolation("collapse emptied a non-singular word");
  }
  if (!is_strong(collapsed.word)) {
    throw ContractViolation("collapsed word still carries finite-support critical constants");
  }

  SymPipelineReport rep;
  rep.original = w;
  rep.collapsed = collapsed.word;
  rep.budget = collapsed.budget;
  rep.collapse_steps = collapsed.steps;

  WitnessRequest wr;
  wr.word = collapsed.word;
  wr.bindings = bindings;
  wr.oracle = &oracle;
  wr.pairs = static_cast<int>(collapsed.budget) + 2;
  wr.branch = Branch::Strong;
  wr.retry_budget = retry_budget;
  rep.cert = build_witness(wr);

  int r = std::max(w.var_count(), collapsed.word.var_count());
  std::vector<Aut> assignment;
  for (int k = 0; k < r; ++k) {
    PartialIso start;
    if (k < static_cast<int>(rep.cert.h_dom.size())) {
      start.dom = rep.cert.h_dom[static_cast<std::size_t>(k)];
      start.ran = rep.cert.h_ran[static_cast<std::size_t>(k)];
    }
    assignment.push_back(make_lazy_aut(&oracle, std::move(start),
                                       static_cast<std::uint64_t>(k) + 1));
  }
  Aut wmap = word_value(w, bindings, assignment);
  for (const auto& [alpha, beta] : rep.cert.pairs) {
    Point y = mixid::apply(wmap, alpha);
    if (y == beta) ++rep.agreeing_pairs;
    if (!(y == alpha)) rep.moved.emplace_back(alpha, y);
  }
  if (rep.agreeing_pairs < rep.cert.pairs.size() - static_cast<std::size_t>(rep.budget)) {
    throw ContractViolation("word map disagrees with the collapsed map on too many pairs");
  }
  if (rep.moved.size() < 2) {
    throw ContractViolation("word map moved fewer than two staggered points");
  }
  return rep;
}

}  // namespace mixid
