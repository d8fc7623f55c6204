#include <doctest.h>

#include "oracles.hpp"
#include "trackpow/error.hpp"
#include "trackpow/substitutions.hpp"

using namespace trackpow;

namespace {
  Alphabet const abc = Alphabet::standard(3);

  Substitution plain(std::vector<std::string> const& images, Alphabet const& a = abc) {
    std::vector<Word> w;
    for (auto const& s : images) {
      w.push_back(a.parse(s));
    }
    return Substitution::plain(a, w);
  }

  std::string str(Word const& w, Alphabet const& a = abc) {
    return a.format(w);
  }

  Substitution const shift_periodic = plain({"ab", "c", "abc"});
  Substitution const fib    = plain({"ab", "a"}, Alphabet::standard(2));
}  // namespace

TEST_CASE("applying and iterating") {
  CHECK(str(shift_periodic.apply(abc.parse("a"))) == "ab");
  CHECK(str(iterate(shift_periodic, abc.parse("a"), 3)) == "abcabc");
  CHECK(str(iterate(fib, Alphabet::standard(2).parse("b"), 4), Alphabet::standard(2))
        == "abaab");
  CHECK(iterate(shift_periodic, abc.parse("a"), 0) == abc.parse("a"));
}

TEST_CASE("length cap") {
  try {
    (void)iterate(fib, Word{0}, 40, 1000);
    FAIL("expected an error");
  } catch (Error const& e) {
    CHECK(e.kind() == ErrorKind::limit);
  }
}

TEST_CASE("plain substitutions reject inverse letters") {
  CHECK_THROWS_AS(plain({"aB", "b", "c"}), Error);
  CHECK_THROWS_AS(shift_periodic.apply(abc.parse("A")), Error);
  CHECK_THROWS_AS(Substitution::plain(abc, {abc.parse("a")}), Error);
}

TEST_CASE("transition matrix of the shift-periodic example") {
  auto m = transition_matrix(shift_periodic);
  CHECK(m.matrix() == IntMatrix({{1, 0, 1}, {1, 0, 1}, {0, 1, 1}}));
  CHECK(m.pow(2).matrix() == IntMatrix({{1, 1, 2}, {1, 1, 2}, {1, 1, 2}}));
  CHECK(is_primitive(m));
}

TEST_CASE("transition matrix of flip-extended substitutions counts both orientations") {
  auto s = Substitution::flip_extended(abc, {abc.parse("aB"), abc.parse("b"), abc.parse("CA")});
  CHECK(s.is_inverse_closed());
  CHECK(s.is_flip_equivariant());
  CHECK(s.image(1) == abc.parse("bA"));
  CHECK(transition_matrix(s).matrix() == IntMatrix({{1, 0, 1}, {1, 1, 0}, {0, 0, 1}}));
}

TEST_CASE("composition") {
  auto sq = compose(shift_periodic, shift_periodic);
  for (Letter x : {0u, 2u, 4u}) {
    CHECK(sq.image(x) == shift_periodic.apply(shift_periodic.image(x)));
  }
  CHECK(transition_matrix(sq).matrix() == transition_matrix(shift_periodic).pow(2).matrix());
}

TEST_CASE("fixed point streams") {
  FixedPointStream s(fib, 0);
  CHECK(str(s.prefix(8), Alphabet::standard(2)) == "abaababa");
  CHECK(s.extend(20).size() >= 20);
  CHECK(fixed_point_prefix(shift_periodic, 0, 9) == abc.parse("abcabcabc"));
  // b is not a proper prefix of its image.
  CHECK_THROWS_AS(FixedPointStream(fib, 2), Error);
}

TEST_CASE("shift periodicity") {
  auto v = detect_shift_period(shift_periodic, 0, 10);
  REQUIRE(std::holds_alternative<Periodic>(v));
  CHECK(str(std::get<Periodic>(v).period) == "abc");
  CHECK(std::get<Periodic>(v).q == 2);

  auto f = detect_shift_period(fib, 0, 50);
  REQUIRE(std::holds_alternative<NoPeriodUpTo>(f));
  CHECK(std::get<NoPeriodUpTo>(f).bound == 50);
  CHECK(certify_aperiodic(fib, 0));
  CHECK_FALSE(certify_aperiodic(shift_periodic, 0));
}

TEST_CASE("orbit letters") {
  auto s = plain({"ab", "b", "c"});
  CHECK(orbit_letters(s, 0) == std::vector<Letter>{0, 2});
  CHECK(orbit_letters(shift_periodic, 0) == std::vector<Letter>{0, 2, 4});
}

TEST_CASE("orbit power index of the Fibonacci substitution stays below 4") {
  CHECK(orbit_power_index(fib, 0, 20) == 3);
}

TEST_CASE("orientability") {
  // a -> a b^-1 forces b^-1; b^-1 -> b^-1 so {a, b^-1} is closed.
  auto ok = orientability(
      Substitution::flip_extended(Alphabet::standard(2), {abc.parse("aB"), abc.parse("b")}));
  CHECK(ok.orientable);
  CHECK(ok.preferred == std::vector<Letter>{0, 3});
  REQUIRE(ok.induced);
  CHECK(ok.induced->alphabet().names() == std::vector<std::string>{"a", "B"});
  CHECK(ok.induced->alphabet().format(ok.induced->image(0)) == "aB");

  // a -> a b a^-1 needs both a and a^-1.
  auto no = orientability(
      Substitution::flip_extended(Alphabet::standard(2), {abc.parse("abA"), abc.parse("b")}));
  CHECK_FALSE(no.orientable);
  CHECK_FALSE(no.induced);

  auto skew = Substitution::inverse_closed(
      Alphabet::standard(1), {Alphabet::standard(1).parse("a"), Alphabet::standard(1).parse("a")});
  CHECK_FALSE(skew.is_flip_equivariant());
  CHECK_THROWS_AS(orientability(skew), Error);
}
