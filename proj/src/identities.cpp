#include "mixid/identities.hpp"

#include "json.hpp"
#include "mixid/sampling.hpp"
#include "mixid/word_parser.hpp"

namespace mixid {

using ordered_json = nlohmann::ordered_json;

IdentityCandidate dlo_identity() {
  IdentityCandidate c;
  c.id = "dlo";
  c.structure = "dlo";
  c.word = parse_word("[[g1^x,g3],[g2^x,g2]]");
  c.bindings["g1"] = make_plq_aut(PlqMap::bump(Rat(0), Rat(1)));
  c.bindings["g2"] = make_plq_aut(PlqMap::bump(Rat(2), Rat(3)));
  c.bindings["g3"] = make_plq_aut(PlqMap::bump(Rat(4), Rat(5)));
  return c;
}

std::pair<IdentityCandidate, IdentityCandidate> cyclic_identities() {
  IdentityCandidate c;
  c.id = "cyclic";
  c.structure = "cyclic";
  c.word = parse_word("[[[g1^x,g4],[g3^x,g5]],[g2^x,g2]]");
  for (int i = 1; i <= 5; ++i) {
    Arc arc{Rat(2 * (i - 1), 10), Rat(2 * i - 1, 10)};
    c.bindings["g" + std::to_string(i)] = make_circle_aut(CircleMap::bump(arc));
  }
  IdentityCandidate pm = c;
  pm.id = "cyclic-pm";
  pm.word = c.word.substitute_vars([](int var) {
    return Word::variable(var) * Word::variable(var);
  });
  pm.sample_reversing = true;
  return {std::move(c), std::move(pm)};
}

IdentityCandidate identity_by_name(const std::string& name) {
  if (name == "dlo") return dlo_identity();
  if (name == "cyclic") return cyclic_identities().first;
  if (name == "cyclic-pm") return cyclic_identities().second;
  throw std::invalid_argument("unknown identity candidate: " + name);
}

std::string IdentityReport::to_json() const {
  ordered_json j;
  j["candidate"] = candidate;
  j["trials"] = trials;
  j["points"] = points;
  j["seed"] = seed;
  ordered_json vs = ordered_json::array();
  for (const auto& v : violations) {
    vs.push_back(ordered_json{{"trial", v.trial},
                              {"point", v.point},
                              {"image", v.image},
                              {"assignment", v.assignment}});
  }
  j["violations"] = vs;
  j["verdict"] = violations.empty() ? "no violations (randomized evidence, not proof)"
                                    : "violations found";
  return j.dump(2);
}

IdentityReport verify_identity(const IdentityCandidate& cand, int trials, int points_per_trial,
                               std::uint64_t seed) {
  IdentityReport rep;
  rep.candidate = cand.id.empty() ? cand.word.str() : cand.id;
  rep.trials = trials;
  rep.points = points_per_trial;
  rep.seed = seed;

  Rng master(seed);
  int r = cand.word.var_count();
  for (int t = 0; t < trials; ++t) {
    Rng trial_rng = master.sub(static_cast<std::uint64_t>(t));
    auto oracle = make_oracle(cand.structure, trial_rng.u64());
    std::vector<Aut> assignment;
    for (int k = 0; k < std::max(1, r); ++k) {
      assignment.push_back(
          sample_variable(cand.structure, *oracle, trial_rng, cand.sample_reversing));
    }
    Aut wmap = word_value(cand.word, cand.bindings, assignment);
    for (int p = 0; p < points_per_trial; ++p) {
      Point pt;
      if (cand.structure == "cyclic") {
        pt = Rat(trial_rng.range(0, 1023), 1024);
      } else {
        pt = random_rat(trial_rng, -8, 16, 6);
      }
      Point img = mixid::apply(wmap, pt);
      if (!(img == pt)) {
        std::string desc;
        for (const auto& a : assignment) desc += a->describe() + ";";
        rep.violations.push_back({t, point_str(pt), point_str(img), desc});
      }
    }
  }
  return rep;
}

}  // namespace mixid
