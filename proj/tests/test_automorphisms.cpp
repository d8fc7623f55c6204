#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "trackpow/automorphisms.hpp"
#include "trackpow/error.hpp"

using namespace trackpow;

namespace {
  Alphabet const ab = Alphabet::standard(2);

  BasisMap map2(char const* a, char const* b) {
    return BasisMap(ab, {reduce(ab.parse(a)), reduce(ab.parse(b))});
  }

  BasisMap const fib  = map2("ab", "a");
  BasisMap const dehn = map2("a", "ba");
}  // namespace

TEST_CASE("applying a basis map reduces as it goes") {
  CHECK(ab.format(fib.apply(ab.parse("b")).letters()) == "a");
  CHECK(ab.format(fib.apply(ab.parse("B")).letters()) == "A");
  CHECK(ab.format(fib.apply(ab.parse("aB")).letters()) == "abA");
  CHECK(ab.format(dehn.apply(ab.parse("bA")).letters()) == "b");
  CHECK(fib.image(1) == reduce(ab.parse("BA")));
}

TEST_CASE("fibonacci orbit") {
  std::vector<std::string> expected{"a",        "ab",           "aba",
                                    "abaab",    "abaababa",     "abaababaabaab",
                                    "abaababaabaababaababa"};
  auto w = reduce(ab.parse("b"));
  for (auto const& e : expected) {
    w = fib.apply(w.letters());
    CHECK(ab.format(w.letters()) == e);
  }
}

TEST_CASE("composition and powers") {
  auto f2 = compose(fib, fib);
  CHECK(f2 == power(fib, 2));
  CHECK(ab.format(f2.images()[0].letters()) == "aba");
  CHECK(power(fib, 0) == BasisMap::identity(ab));
  oracle::Rng rng(41);
  auto        f5 = power(fib, 5);
  for (int i = 0; i < 100; ++i) {
    auto w   = oracle::random_reduced(rng, 2, rng.below(8));
    auto lhs = f5.apply(w);
    auto rhs = reduce(w);
    for (int k = 0; k < 5; ++k) {
      rhs = fib.apply(rhs.letters());
    }
    CHECK(lhs == rhs);
  }
}

TEST_CASE("verification against a supplied inverse") {
  // fib^-1: a -> b, b -> B a
  auto inv = map2("b", "Ba");
  CHECK(verify_automorphism(fib, inv));
  CHECK_FALSE(verify_automorphism(fib, dehn));
  CHECK(verify_automorphism(dehn, map2("a", "bA")));
}

TEST_CASE("abelianization counts signed letters") {
  CHECK(abelianization(fib) == IntMatrix({{1, 1}, {1, 0}}));
  CHECK(abelianization(dehn) == IntMatrix({{1, 1}, {0, 1}}));
  CHECK(abelianization(map2("aBA", "b")) == IntMatrix({{0, 0}, {-1, 1}}));
}

TEST_CASE("trace criterion in rank 2") {
  CHECK(growth_rank2(fib) == Growth::exponential);
  CHECK(growth_rank2(dehn) == Growth::polynomial);
  CHECK(growth_rank2(BasisMap::identity(ab)) == Growth::polynomial);
  for (unsigned n = 1; n <= 5; ++n) {
    auto phi = trace_family_member(n);
    auto m   = abelianization(phi);
    Integer nn = n;
    CHECK((m * m).trace() == nn * nn * nn * nn + 4 * nn * nn + 2);
    CHECK(growth_rank2(phi) == Growth::exponential);
  }
  CHECK_THROWS_AS(growth_rank2(BasisMap::identity(Alphabet::standard(3))), Error);
  CHECK_THROWS_AS(growth_rank2(map2("aa", "b")), Error);
}

TEST_CASE("trace family images") {
  auto phi = trace_family_member(2);
  CHECK(ab.format(phi.images()[0].letters()) == "abaabaa");
  CHECK(ab.format(phi.images()[1].letters()) == "baa");
}

TEST_CASE("polynomial order bound") {
  CHECK(polynomial_order_bound(2, 3) == 9);
  CHECK(polynomial_order_bound(3, 2) == 64);
  CHECK(polynomial_order_bound(1, 5) == 1);
}

TEST_CASE("growth rate estimate") {
  auto est = growth_rate_estimate(fib, reduce(ab.parse("b")), 12);
  REQUIRE(est.lengths.size() == 13);
  CHECK(est.lengths[12] == 233);
  CHECK(est.root_estimate == doctest::Approx(std::pow(233.0, 1.0 / 12)));
  CHECK(std::abs(est.root_estimate - 1.618) < 0.05);
  CHECK(std::abs(est.ratio_estimate - 1.618) < 0.01);

  auto id = growth_rate_estimate(BasisMap::identity(ab), reduce(ab.parse("ab")), 5);
  CHECK(id.root_estimate == doctest::Approx(std::pow(2.0, 1.0 / 5)));
  CHECK(id.ratio_estimate == 1.0);

  // Dehn twist: lengths p + 1, the estimate drifts down towards 1.
  auto lin = growth_rate_estimate(dehn, reduce(ab.parse("b")), 12);
  CHECK(lin.lengths[12] == 13);
  CHECK(std::abs(lin.root_estimate - 1.23) < 0.01);
  auto deeper = growth_rate_estimate(dehn, reduce(ab.parse("b")), 40);
  CHECK(deeper.root_estimate < lin.root_estimate);
  CHECK_THROWS_AS(growth_rate_estimate(fib, reduce(ab.parse("b")), 1), Error);
  CHECK_THROWS_AS(growth_rate_estimate(fib, GroupWord{}, 4), Error);
}
