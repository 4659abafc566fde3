#pragma once

#include <map>
#include <string>
#include <vector>

#include "mixid/automorphism.hpp"
#include "mixid/word.hpp"

namespace mixid {

struct IdentityCandidate {
  std::string id;  // "dlo", "cyclic", "cyclic-pm"
  Word word;
  std::map<std::string, Aut> bindings;
  std::string structure;
  bool sample_reversing = false;  // include orientation-reversing samples
};

// One-variable word [[g1^x, g3], [g2^x, g2]] with bumps supported in
// (0,1), (2,3), (4,5).
IdentityCandidate dlo_identity();

// Circle words [[[g1^x, g4], [g3^x, g5]], [g2^x, g2]] and the same word in
// x^2, with five bumps in disjoint counter-clockwise arcs.
std::pair<IdentityCandidate, IdentityCandidate> cyclic_identities();

IdentityCandidate identity_by_name(const std::string& name);

struct IdentityViolation {
  int trial = 0;
  std::string point, image, assignment;
};

struct IdentityReport {
  std::string candidate;
  int trials = 0, points = 0;
  std::uint64_t seed = 0;
  std::vector<IdentityViolation> violations;
  std::string to_json() const;
};

// Randomized evaluation: per trial, sample an automorphism per variable and
// evaluate the word at sampled points. Evidence, not proof.
IdentityReport verify_identity(const IdentityCandidate& cand, int trials, int points_per_trial,
                               std::uint64_t seed);

}  // namespace mixid
