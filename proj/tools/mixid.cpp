// mixid: analyze words with constants over automorphism groups of countable
// homogeneous structures, build and verify witness certificates, check the
// shipped singular identities, and run the exact derivative-germ bounds.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mixid/constants_io.hpp"
#include "mixid/errors.hpp"
#include "mixid/germ.hpp"
#include "mixid/identities.hpp"
#include "mixid/metabelian.hpp"
#include "mixid/oracle.hpp"
#include "mixid/witness.hpp"
#include "mixid/word_parser.hpp"

using namespace mixid;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kRefuted = 1;
constexpr int kInconclusive = 2;
constexpr int kUsage = 3;
constexpr int kEngineFailure = 4;

struct CommonOpts {
  std::string structure = "dlo";
  std::string constants_path;
  std::uint64_t seed = 1;
  bool json = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_structure = true) {
  if (with_structure) {
    cmd->add_option("--structure", o.structure,
                    "structure: set|dlo|rado|eqrel:k|poset|perm2|cyclic|vec:q");
  }
  cmd->add_option("--constants", o.constants_path, "constant definition file (JSON)");
  cmd->add_option("--seed", o.seed, "master seed; fixes all randomized behavior");
  cmd->add_flag("--json", o.json, "emit JSON instead of text");
}

int cmd_analyze(const std::string& text, const CommonOpts& o) {
  Word w = parse_word(text);
  auto cls = classify(w);
  FreeWord content = w.content();
  ordered_json j;
  j["word"] = w.str();
  j["length"] = w.length();
  if (w.length() == 0) j["reduced_to_constant"] = w.const_at(0).str();
  j["variables"] = w.var_count();
  j["j0"] = cls.j0;
  j["jplus"] = cls.jplus;
  j["jminus"] = cls.jminus;
  ordered_json crit = ordered_json::array();
  for (const auto& [pos, c] : cls.critical) {
    crit.push_back(ordered_json{{"position", pos}, {"constant", c.str()}});
  }
  j["critical_constants"] = crit;
  j["strong"] = is_strong(w);
  j["singular"] = is_singular(w);
  j["content"] = content.str();
  if (content.max_var() <= 2) {
    j["content_in_second_derived"] = in_second_derived(content);
  }
  if (o.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "word:      " << w.str() << "\n";
    std::cout << "length:    " << w.length() << "  variables: " << w.var_count() << "\n";
    if (w.length() == 0) {
      std::cout << "note:      the input reduces to the constant " << w.const_at(0).str() << "\n";
    }
    auto list = [](const std::vector<int>& v) {
      std::string s = "{";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
      return s + "}";
    };
    std::cout << "J0: " << list(cls.j0) << "  J+: " << list(cls.jplus)
              << "  J-: " << list(cls.jminus) << "\n";
    for (const auto& [pos, c] : cls.critical) {
      std::cout << "critical constant at " << pos << ": " << c.str() << "\n";
    }
    std::cout << (is_strong(w) ? "strong" : "not strong") << ", "
              << (is_singular(w) ? "singular" : "non-singular") << "\n";
    std::cout << "content:   " << content.str() << "\n";
    if (content.max_var() <= 2) {
      std::cout << "content in second derived subgroup: "
                << (in_second_derived(content) ? "yes" : "no") << "\n";
    }
  }
  return kOk;
}

int cmd_list_structures() {
  for (const auto& s : known_structures()) {
    auto name = s;
    std::string example = name;
    if (name == "eqrel:k") example = "eqrel:3";
    if (name == "vec:q") example = "vec:2";
    auto oracle = make_oracle(example, 1);
    std::cout << name << "  (no algebraicity: " << (oracle->no_algebraicity() ? "yes" : "no")
              << ", algebraically convex: " << (oracle->algebraically_convex() ? "yes" : "no")
              << ")\n";
  }
  return kOk;
}

int cmd_witness(const std::string& text, const CommonOpts& o, int n, const std::string& branch,
                int retry_budget, const std::string& out_path) {
  Word w = parse_word(text);
  auto oracle = make_oracle(o.structure, o.seed);
  ConstantFile consts;
  if (!o.constants_path.empty()) consts = load_constant_file(o.constants_path, oracle.get());

  WitnessRequest req;
  req.word = w;
  req.bindings = consts.constants;
  req.oracle = oracle.get();
  req.pairs = n;
  req.retry_budget = retry_budget;
  if (branch == "strong") req.branch = Branch::Strong;
  else if (branch == "convex") req.branch = Branch::ConvexNoSmall;
  else if (branch == "slender") req.branch = Branch::NoSlender;
  else throw CLI::ValidationError("--branch must be strong, convex or slender");

  WitnessCertificate cert = build_witness(req);
  VerifyReport verdict = verify_certificate(cert, req);
  std::string payload = cert.to_json();
  if (out_path.empty() || out_path == "-") {
    std::cout << payload << "\n";
  } else {
    std::ofstream out(out_path);
    out << payload << "\n";
    std::cout << "certificate written to " << out_path << "\n";
  }
  std::cout << (verdict.ok ? "verified" : ("verification FAILED: " + verdict.first_failure))
            << "\n";
  return verdict.ok ? kOk : kEngineFailure;
}

int cmd_verify_identity(const std::string& name_or_word, const CommonOpts& o, int trials,
                        int points) {
  IdentityCandidate cand;
  try {
    cand = identity_by_name(name_or_word);
  } catch (const std::invalid_argument&) {
    cand.id = "";
    cand.word = parse_word(name_or_word);
    cand.structure = o.structure;
    if (!o.constants_path.empty()) {
      auto oracle = make_oracle(o.structure, o.seed);
      auto consts = load_constant_file(o.constants_path, oracle.get());
      cand.bindings = consts.constants;
    }
  }
  IdentityReport rep = verify_identity(cand, trials, points, o.seed);
  std::cout << rep.to_json() << "\n";
  return rep.violations.empty() ? kOk : kRefuted;
}

int cmd_germ(const std::string& text, const CommonOpts& o) {
  Word w = parse_word(text);
  for (int j = 0; j <= w.length(); ++j) {
    if (!w.const_at(j).is_identity()) {
      throw std::invalid_argument("germ: the word must not contain constants");
    }
  }
  FreeWord u = w.content();
  Germ g = germ_of_word(u);
  ordered_json j;
  j["word"] = u.str();
  j["e"] = g.e;
  j["P"] = g.p.str();
  j["germ"] = g.str();
  int exit_code = kOk;
  if (u.abelianization().empty()) {
    auto witness = nonvanishing_witness(u);
    if (witness) {
      j["witness"] = ordered_json{{"kappa0", witness->kappa0.str()},
                                  {"value", witness->value.str()},
                                  {"lambda0", witness->lambda0.str()}};
    } else {
      j["witness"] = "inconclusive";
      exit_code = kInconclusive;
    }
  } else {
    j["note"] = "content survives abelianization; the one-variable bound applies";
  }
  if (o.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "germ of " << u.str() << ": e = " << g.e << ", P = " << g.p.str() << "\n";
    if (j.contains("witness")) {
      if (j["witness"].is_string()) {
        std::cout << "nonvanishing: inconclusive (P = 0; a change of basis might still apply)\n";
      } else {
        std::cout << "nonvanishing witness: kappa0 = " << j["witness"]["kappa0"].get<std::string>()
                  << ", P(kappa0) = " << j["witness"]["value"].get<std::string>() << "\n";
      }
    }
  }
  return exit_code;
}

int cmd_onevar(const std::string& text, const CommonOpts& o) {
  Word w = parse_word(text);
  std::map<std::string, PLHomeo> constants;
  if (!o.constants_path.empty()) {
    auto consts = load_constant_file(o.constants_path, nullptr);
    constants = consts.pl_constants;
  }
  OnevarBoundResult res = onevar_bound(w, constants);
  std::cout << res.to_json() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"words with constants over oligomorphic automorphism groups"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string word_text;
  int n = 1, trials = 200, points = 50, retry_budget = 64;
  std::string branch = "strong", out_path;

  auto* analyze = app.add_subcommand("analyze", "reduce and classify a word");
  analyze->add_option("word", word_text, "word expression")->required();
  add_common(analyze, opts);

  auto* witness = app.add_subcommand("witness", "build and verify a witness certificate");
  witness->add_option("word", word_text, "word expression")->required();
  witness->add_option("--n", n, "number of staggered pairs");
  witness->add_option("--branch", branch, "strong | convex | slender");
  witness->add_option("--retry-budget", retry_budget, "per-step retry budget");
  witness->add_option("--out", out_path, "certificate output path ('-' for stdout)");
  add_common(witness, opts);

  auto* verify = app.add_subcommand("verify-identity", "randomized identity verification");
  verify->add_option("candidate", word_text, "dlo | cyclic | cyclic-pm | word expression")
      ->required();
  verify->add_option("--trials", trials, "number of sampled assignments");
  verify->add_option("--points", points, "points evaluated per trial");
  add_common(verify, opts);

  auto* germ = app.add_subcommand("germ", "symbolic germ of a two-variable word");
  germ->add_option("word", word_text, "constant-free word expression")->required();
  add_common(germ, opts, false);

  auto* onevar = app.add_subcommand("onevar", "one-variable derivative bound");
  onevar->add_option("word", word_text, "one-variable word expression")->required();
  add_common(onevar, opts, false);

  app.add_subcommand("list-structures", "print the available structures");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("analyze")) return cmd_analyze(word_text, opts);
    if (app.got_subcommand("witness")) {
      return cmd_witness(word_text, opts, n, branch, retry_budget, out_path);
    }
    if (app.got_subcommand("verify-identity")) {
      return cmd_verify_identity(word_text, opts, trials, points);
    }
    if (app.got_subcommand("germ")) return cmd_germ(word_text, opts);
    if (app.got_subcommand("onevar")) return cmd_onevar(word_text, opts);
    if (app.got_subcommand("list-structures")) return cmd_list_structures();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const RetryExhausted& e) {
    std::cerr << "engine failure: " << e.what() << "\n";
    return kEngineFailure;
  } catch (const ExhaustedSearch& e) {
    std::cerr << "engine failure: " << e.what() << "\n";
    return kEngineFailure;
  } catch (const ContractViolation& e) {
    std::cerr << "engine failure: " << e.what() << "\n";
    return kEngineFailure;
  } catch (const SingularInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ContentMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
