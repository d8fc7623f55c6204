#include <doctest.h>

#include "oracles.hpp"
#include "trackpow/error.hpp"
#include "trackpow/words.hpp"

using namespace trackpow;

namespace {
  Alphabet const ab = Alphabet::standard(2);

  Word w(std::string_view text, Alphabet const& a = ab) {
    return a.parse(text);
  }
}  // namespace

TEST_CASE("alphabet parsing accepts every inverse notation") {
  auto a = w("a");
  auto A = w("A");
  CHECK(a == Word{0});
  CHECK(A == Word{1});
  CHECK(w("a^-1") == A);
  CHECK(w("inv(a)") == A);
  CHECK(w("a b a^-1") == Word{0, 2, 1});
  CHECK(w("aba^2B") == Word{0, 2, 0, 0, 3});
  CHECK(w("a^3") == Word{0, 0, 0});
  CHECK(w("a^-2") == Word{1, 1});
  CHECK(w("1").empty());
  CHECK(w("").empty());
}

TEST_CASE("alphabet formatting") {
  CHECK(ab.format(Word{}) == "1");
  CHECK(ab.format(Word{0, 2, 1}) == "abA");
  Alphabet named({"x1", "y1"});
  CHECK_FALSE(named.compact());
  CHECK(named.format(named.parse("x1 y1^-1 inv(x1)")) == "x1 y1^-1 x1^-1");
  CHECK(named.letter_name(3) == "y1^-1");
}

TEST_CASE("format and parse round-trip") {
  oracle::Rng rng(11);
  Alphabet    four = Alphabet::standard(4);
  Alphabet    named({"e1", "e2", "e3"});
  for (int i = 0; i < 200; ++i) {
    auto x = oracle::random_word(rng, 4, rng.below(12), true);
    CHECK(four.parse(four.format(x)) == x);
    auto y = oracle::random_word(rng, 3, rng.below(12), true);
    CHECK(named.parse(named.format(y)) == y);
  }
}

TEST_CASE("uppercase is a plain letter when it is a name") {
  Alphabet cased({"a", "A"});
  CHECK(cased.parse("A") == Word{2});
  CHECK(cased.format(Word{1}) == "a^-1");
}

TEST_CASE("bad names and tokens are rejected") {
  CHECK_THROWS_AS(Alphabet({"a", "a"}), Error);
  CHECK_THROWS_AS(Alphabet({"1"}), Error);
  CHECK_THROWS_AS(Alphabet({"a b"}), Error);
  CHECK_THROWS_AS(Alphabet({"2x"}), Error);
  CHECK_THROWS_AS(ab.parse("c"), Error);
  try {
    (void)ab.parse("a q");
    FAIL("expected an error");
  } catch (Error const& e) {
    CHECK(e.kind() == ErrorKind::parse);
  }
}

TEST_CASE("free reduction") {
  CHECK(reduce(w("a b B A b")).letters() == w("b"));
  CHECK(reduce(w("a A")).empty());
  CHECK(is_reduced(w("a b A B")));
  CHECK_FALSE(is_reduced(w("a b B")));
  CHECK_THROWS_AS(GroupWord::from_reduced(w("a A")), Error);
  oracle::Rng rng(3);
  for (int i = 0; i < 2000; ++i) {
    auto x = oracle::random_word(rng, 2, rng.below(16), true);
    CHECK(reduce(x).letters() == oracle::reduce(x));
  }
}

TEST_CASE("group operations") {
  auto u = reduce(w("a b"));
  auto v = reduce(w("B a"));
  CHECK(multiply(u, v).letters() == w("a a"));
  CHECK(inverse(u).letters() == w("B A"));
  CHECK(power(u, 3).letters() == w("ababab"));
  CHECK(power(u, -2).letters() == w("BABA"));
  CHECK(power(u, 0).empty());
  CHECK(cyclic_reduce(reduce(w("a b A"))).letters() == w("b"));
  CHECK(cyclic_reduce(reduce(w("B a b"))).letters() == w("a"));
  CHECK(flip(w("a B")) == w("b A"));
  CHECK(repeat(w("ab"), 3) == w("ababab"));
}

TEST_CASE("primitive roots") {
  auto r = primitive_root(w("abab"));
  CHECK(r.root == w("ab"));
  CHECK(r.exponent == 2);
  CHECK(primitive_root(w("aaa")).exponent == 3);
  CHECK(primitive_root(w("aba")).exponent == 1);
  CHECK_THROWS_AS(primitive_root(Word{}), Error);
  oracle::Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    auto x = oracle::random_word(rng, 2, 1 + rng.below(10), false);
    CHECK(is_primitive(x) == oracle::is_primitive(x));
  }
}

TEST_CASE("border array") {
  CHECK(border_array(w("abaab")) == std::vector<std::size_t>{0, 0, 1, 1, 2});
  CHECK(border_array(w("aaaa")) == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("max power index conventions and small cases") {
  CHECK(max_power_index(Word{}) == 0);
  CHECK(max_power_index(w("a")) == 1);
  CHECK(max_power_index(w("ab")) == 1);
  CHECK(max_power_index(w("aab")) == 2);
  CHECK(max_power_index(w("abaababaabaab")) == 2);
  CHECK(max_power_index(w("abaababaabaababaababa")) == 3);
  CHECK(max_power_index(w("babababa")) == 4);
}

TEST_CASE("power runs") {
  auto runs = find_power_runs(w("baaab"), 2);
  REQUIRE(runs.size() == 1);
  CHECK(runs[0].start == 1);
  CHECK(runs[0].period == w("a"));
  CHECK(runs[0].exponent == 3);
  CHECK(runs[0].remainder == 0);

  runs = find_power_runs(w("abababa"), 2);
  REQUIRE(runs.size() == 1);
  CHECK(runs[0].period == w("ab"));
  CHECK(runs[0].exponent == 3);
  CHECK(runs[0].remainder == 1);
  CHECK(runs[0].length() == 7);

  CHECK(find_power_runs(w("abab"), 3).empty());
  CHECK_THROWS_AS(find_power_runs(w("aa"), 1), Error);
}

TEST_CASE("every reported run is a genuine maximal power") {
  oracle::Rng rng(17);
  for (int i = 0; i < 500; ++i) {
    auto x = oracle::random_word(rng, 2, rng.below(30), false);
    for (auto const& run : find_power_runs(x, 2)) {
      auto p = run.period.size();
      REQUIRE(run.start + run.length() <= x.size());
      CHECK(oracle::is_primitive(run.period));
      for (std::size_t k = 0; k < run.length(); ++k) {
        CHECK(x[run.start + k] == run.period[k % p]);
      }
      if (run.start > 0) {
        CHECK(x[run.start - 1] != x[run.start - 1 + p]);
      }
      if (run.start + run.length() < x.size()) {
        CHECK(x[run.start + run.length()] != x[run.start + run.length() - p]);
      }
    }
  }
}
