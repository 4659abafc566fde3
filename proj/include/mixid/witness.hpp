#pragma once

#include <map>
#include <string>
#include <vector>

#include "mixid/automorphism.hpp"
#include "mixid/oracle.hpp"
#include "mixid/word.hpp"

namespace mixid {

enum class Branch { Strong, ConvexNoSmall, NoSlender };

std::string branch_name(Branch b);

struct WitnessRequest {
  Word word;  // reduced, positive length
  std::map<std::string, Aut> bindings;
  StructureOracle* oracle = nullptr;
  int pairs = 1;  // n
  Branch branch = Branch::Strong;
  int retry_budget = 64;
};

struct RealizeLogEntry {
  int pair;      // induction step n
  int step;      // letter index j
  int rejected;  // candidates discarded before acceptance
  std::string ref;    // the point whose type was realized
  std::string base;   // the tuple it was realized over
  std::string chosen;
};

// Full replayable output of a witness construction: for each pair the chain
// of intermediate points, the per-variable correspondences h_k, and the
// final staggered pairs for the original word.
struct WitnessCertificate {
  std::string structure;
  std::uint64_t seed = 0;
  Word original_word;
  Word normalized_word;       // leading constant removed by conjugation
  ConstProd leading_constant;  // the conjugator
  std::vector<std::pair<Point, Point>> pairs;             // for the original word
  std::vector<std::pair<Point, Point>> normalized_pairs;  // for the normalized word
  // per pair: [w_1^{e(1)}, w_1^{-e(1)}, ..., w_l^{e(l)}, w_l^{-e(l)}]
  std::vector<PointVec> chains;
  std::vector<PointVec> h_dom, h_ran;  // per variable, aligned
  std::vector<RealizeLogEntry> log;
  std::vector<std::string> warnings;

  std::string to_json() const;  // stable field order, exact point tokens
};

WitnessCertificate build_witness(const WitnessRequest& req);

struct VerifyReport {
  bool ok = true;
  std::string first_failure;
};

// Independent replay: rechecks every chain equation with apply, the pair
// transport, the h_k correspondences via same_type, collision freedom and
// staggered independence. Uses oracle primitives only.
VerifyReport verify_certificate(const WitnessCertificate& cert, const WitnessRequest& req);

struct RefutationReport {
  WitnessCertificate cert;
  Point moved_from, moved_to;  // a concrete point with x.w(h) = y != x
  std::string to_json() const;
};

RefutationReport refute_mixed_identity(const WitnessRequest& req);

// Pipeline for non-singular words over the pure set with finitely supported
// critical constants: collapse them, witness the collapsed word on f+2
// staggered pairs, and exhibit points moved by the original word map.
struct SymPipelineReport {
  Word original, collapsed;
  std::uint64_t budget = 0;  // f: total support of the dropped constants
  int collapse_steps = 0;
  WitnessCertificate cert;                         // for the collapsed word, n = f+2
  std::vector<std::pair<Point, Point>> moved;      // alpha_i with alpha_i.w(h) = beta_i != alpha_i
  std::size_t agreeing_pairs = 0;                  // pairs where w and w' agree (>= n - f)
  std::string to_json() const;
};

SymPipelineReport sym_nonsingular_pipeline(const Word& w,
                                           const std::map<std::string, Aut>& bindings,
                                           StructureOracle& oracle, int retry_budget = 64);

}  // namespace mixid
