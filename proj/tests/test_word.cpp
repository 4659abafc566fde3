#include "doctest.h"
#include "mixid/rng.hpp"
#include "mixid/sampling.hpp"
#include "mixid/word.hpp"
#include "naive_oracles.hpp"

using namespace mixid;

namespace {

ConstProd C(const std::string& n) { return ConstProd::named(n); }
ConstProd Ci(const std::string& n) { return ConstProd::named(n).inverse(); }
ConstProd id() { return ConstProd{}; }

// random raw alternating sequence, not necessarily reduced
struct RawWord {
  std::vector<ConstProd> consts;
  std::vector<int> vars, signs;
};

RawWord random_raw(Rng& rng, int max_len, int max_vars) {
  RawWord raw;
  int l = static_cast<int>(rng.range(0, max_len));
  const char* names[] = {"a", "b", "c"};
  auto rand_const = [&]() {
    switch (rng.below(5)) {
      case 0: return id();
      case 1: return Ci(names[rng.below(3)]);
      default: return C(names[rng.below(3)]);
    }
  };
  raw.consts.push_back(rand_const());
  for (int j = 0; j < l; ++j) {
    raw.vars.push_back(static_cast<int>(rng.range(1, max_vars)));
    raw.signs.push_back(rng.coin() ? 1 : -1);
    raw.consts.push_back(rand_const());
  }
  return raw;
}

}  // namespace

TEST_CASE("const products reduce freely") {
  CHECK((C("a") * Ci("a")).is_identity());
  CHECK((C("a") * C("b")).str() == "a*b");
  CHECK((C("a") * C("b") * Ci("b") * Ci("a")).is_identity());
  CHECK(C("a").inverse().str() == "a^-1");
}

TEST_CASE("reduce: already reduced word is unchanged") {
  Word w = Word::from_letters({id(), C("c1"), id()}, {1, 1}, {1, -1});
  CHECK(w.length() == 2);
  CHECK(w.const_at(1) == C("c1"));
}

TEST_CASE("reduce: nested cancellation empties the word") {
  // x c1 x^-1 x c1^-1 x^-1 with identity constants elsewhere
  auto built = Word::reduce({id(), C("c1"), id(), C("c1").inverse(), id()},
                            {1, 1, 1, 1}, {1, -1, 1, -1});
  CHECK(built.word.length() == 0);
  CHECK(built.word.const_at(0).is_identity());
  CHECK(built.emptied);
}

TEST_CASE("reduce: x id x stays length two") {
  Word w = Word::from_letters({id(), id(), id()}, {1, 1}, {1, 1});
  CHECK(w.length() == 2);
  CHECK(w.content().str() == "x*x");
}

TEST_CASE("classify on the spec patterns") {
  // x c1 x c2 x^-1 c3 x^-1
  Word w = Word::from_letters({id(), C("c1"), C("c2"), C("c3"), id()},
                              {1, 1, 1, 1}, {1, 1, -1, -1});
  auto cls = classify(w);
  CHECK(cls.jplus == std::vector<int>{1, 3});
  CHECK(cls.jminus == std::vector<int>{2});
  REQUIRE(cls.critical.size() == 1);
  CHECK(cls.critical[0].second == C("c2"));

  Word v = Word::from_letters({id(), C("c"), id()}, {1, 1}, {-1, 1});
  CHECK(classify(v).jminus == std::vector<int>{1});
  CHECK_FALSE(is_strong(v));

  Word u = Word::from_letters({id(), C("c"), id()}, {1, 2}, {1, 1});
  CHECK(classify(u).j0 == std::vector<int>{1});
  CHECK(is_strong(u));
  CHECK_FALSE(is_singular(u));
}

TEST_CASE("content matches the naive oracle on the spec examples") {
  // x c1 x c2 -> x^2
  Word w = Word::from_letters({id(), C("c1"), C("c2")}, {1, 1}, {1, 1});
  CHECK(w.content().str() == "x*x");
  // x^-1 c x c' x -> x
  Word v = Word::from_letters({id(), C("c"), C("d"), id()}, {1, 1, 1}, {-1, 1, 1});
  CHECK(v.content().str() == "x");
  // conjugated commutator is singular
  Word g = Word::from_letters({id(), C("g1"), C("g3"), C("g1").inverse(), C("g3").inverse()},
                              {1, 1, 1, 1}, {-1, 1, -1, 1});
  CHECK(is_singular(g));
}

TEST_CASE("strong and singular flags") {
  Word w = Word::from_letters({id(), C("c"), id()}, {1, 1}, {1, 1});
  CHECK(is_strong(w));
  CHECK_FALSE(is_singular(w));
}

TEST_CASE("collapse of a single critical constant") {
  Word w = Word::from_letters({id(), C("t"), id()}, {1, 1}, {-1, 1});
  auto res = collapse_critical(w, [](const ConstProd&) { return std::uint64_t{2}; });
  CHECK(res.word.length() == 0);
  CHECK(res.budget == 2);
  CHECK(res.steps == 1);

  // strong words are untouched
  Word s = Word::from_letters({id(), C("t"), id()}, {1, 1}, {1, 1});
  auto res2 = collapse_critical(s, [](const ConstProd&) { return std::uint64_t{2}; });
  CHECK(res2.word == s);
  CHECK(res2.budget == 0);

  // x^-1 t x c x -> c x with the constants merged, content preserved
  Word m = Word::from_letters({id(), C("t"), C("c"), id()}, {1, 1, 1}, {-1, 1, 1});
  auto res3 = collapse_critical(m, [](const ConstProd& c) -> std::optional<std::uint64_t> {
    if (c == C("t")) return std::uint64_t{2};
    return std::nullopt;
  });
  CHECK(res3.word.length() == 1);
  CHECK(res3.word.const_at(0) == C("c"));
  CHECK(res3.budget == 2);
  CHECK(res3.word.content() == m.content());
}

TEST_CASE("collapse_at rejects non-critical positions") {
  Word w = Word::from_letters({id(), C("c"), id()}, {1, 1}, {1, 1});
  CHECK_THROWS_AS(collapse_at(w, 1), std::invalid_argument);
}

TEST_CASE("word inverse and product behave like group elements") {
  Word w = Word::from_letters({C("a"), C("b"), C("c")}, {1, 2}, {1, -1});
  CHECK((w * w.inverse()).length() == 0);
  CHECK((w * w.inverse()).const_at(0).is_identity());
  CHECK(w.pow(0).length() == 0);
  CHECK(w.pow(2).length() == 4);
}

TEST_CASE("fuzz: partition, idempotence, content homomorphism") {
  Rng rng(2024);
  for (int trial = 0; trial < 3000; ++trial) {
    auto raw = random_raw(rng, 16, 4);
    auto built = Word::reduce(raw.consts, raw.vars, raw.signs);
    const Word& w = built.word;

    // J partition
    auto cls = classify(w);
    std::vector<bool> seen(static_cast<std::size_t>(std::max(0, w.length() - 1)), false);
    for (auto js : {&cls.j0, &cls.jplus, &cls.jminus}) {
      for (int j : *js) {
        REQUIRE(j >= 1);
        REQUIRE(j <= w.length() - 1);
        REQUIRE_FALSE(seen[static_cast<std::size_t>(j - 1)]);
        seen[static_cast<std::size_t>(j - 1)] = true;
      }
    }
    for (bool s : seen) REQUIRE(s);

    // reduce is idempotent
    {
      std::vector<ConstProd> cs;
      std::vector<int> vs, ss;
      for (int j = 0; j <= w.length(); ++j) cs.push_back(w.const_at(j));
      for (int j = 1; j <= w.length(); ++j) {
        vs.push_back(w.var_at(j));
        ss.push_back(w.sign_at(j));
      }
      Word again = Word::from_letters(cs, vs, ss);
      REQUIRE(again == w);
    }

    // content is preserved by reduction, against the naive oracle
    {
      std::vector<naive::Tok> raw_vars;
      for (std::size_t j = 0; j < raw.vars.size(); ++j) {
        raw_vars.push_back({true, raw.vars[j], raw.signs[j], ""});
      }
      auto expect = naive::reduce_tokens(raw_vars);
      FreeWord got = w.content();
      REQUIRE(got.length() == expect.size());
      for (std::size_t j = 0; j < expect.size(); ++j) {
        REQUIRE(got.letters()[j].var == expect[j].var);
        REQUIRE(got.letters()[j].sign == expect[j].sign);
      }
    }
  }
}

TEST_CASE("fuzz: content is a homomorphism for concatenation") {
  Rng rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    auto ra = random_raw(rng, 8, 3);
    auto rb = random_raw(rng, 8, 3);
    Word a = Word::from_letters(ra.consts, ra.vars, ra.signs);
    Word b = Word::from_letters(rb.consts, rb.vars, rb.signs);
    CHECK((a * b).content() == a.content() * b.content());
  }
}

TEST_CASE("fuzz: collapse keeps content and shortens") {
  Rng rng(55);
  std::vector<std::string> names{"a", "b", "c"};
  for (int trial = 0; trial < 400; ++trial) {
    Word w = random_word_with_critical(rng, 8, 3, names);
    auto res = collapse_critical(w, [&rng](const ConstProd&) -> std::optional<std::uint64_t> {
      return std::uint64_t{2};
    });
    CHECK(res.word.content() == w.content());
    CHECK(res.word.length() <= w.length());
    CHECK(res.word.length() <= w.length() - 2 * res.steps);
    CHECK(classify(res.word).jminus.empty());
  }
}

TEST_CASE("every strong word of positive length is non-singular") {
  Rng rng(31);
  std::vector<std::string> names{"a", "b", "c"};
  for (int trial = 0; trial < 1000; ++trial) {
    Word w = random_strong_word(rng, 10, 3, names);
    REQUIRE(is_strong(w));
    REQUIRE(w.length() > 0);
    CHECK_FALSE(is_singular(w));
  }
}
