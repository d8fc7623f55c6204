#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "trackpow/error.hpp"
#include "trackpow/matrices.hpp"

using namespace trackpow;

namespace {
  oracle::Matrix random_matrix(oracle::Rng& rng, std::size_t n, long long lo, long long hi) {
    oracle::Matrix m(n, std::vector<long long>(n));
    for (auto& row : m) {
      for (auto& v : row) {
        v = lo + static_cast<long long>(rng.below(static_cast<std::size_t>(hi - lo + 1)));
      }
    }
    return m;
  }

  NonnegIntMatrix nonneg(oracle::Matrix const& m) {
    return NonnegIntMatrix(IntMatrix(m));
  }
}  // namespace

TEST_CASE("products, powers and traces") {
  IntMatrix m({{1, 0, 1}, {1, 0, 1}, {0, 1, 1}});
  CHECK(m.pow(2) == IntMatrix({{1, 1, 2}, {1, 1, 2}, {1, 1, 2}}));
  CHECK(m.pow(0) == IntMatrix::identity(3));
  CHECK(m.transpose()(0, 1) == 1);
  CHECK(m.trace() == 2);
  CHECK(m.to_string() == "1 0 1\n1 0 1\n0 1 1\n");
}

TEST_CASE("exact arithmetic does not overflow") {
  IntMatrix fib({{1, 1}, {1, 0}});
  auto      big = fib.pow(200);
  CHECK(big(0, 1).str() == "280571172992510140037611932413038677189525");
}

TEST_CASE("determinants agree with the Leibniz expansion") {
  oracle::Rng rng(23);
  for (int i = 0; i < 300; ++i) {
    auto n = 1 + rng.below(4);
    auto m = random_matrix(rng, n, -3, 3);
    CHECK(IntMatrix(m).determinant() == oracle::determinant(m));
  }
  CHECK(IntMatrix(0).determinant() == 1);
}

TEST_CASE("negative entries are refused where nonnegativity is required") {
  CHECK_THROWS_AS(NonnegIntMatrix(IntMatrix({{1, -1}, {0, 1}})), Error);
}

TEST_CASE("irreducibility and primitivity agree with brute force up to size 4") {
  oracle::Rng rng(29);
  for (int i = 0; i < 2000; ++i) {
    auto n = 1 + rng.below(4);
    auto m = random_matrix(rng, n, 0, 1);
    auto M = nonneg(m);
    CHECK(is_irreducible(M) == oracle::irreducible(m));
    CHECK(is_primitive(M) == oracle::primitive(m));
    auto e = primitivity_exponent(M);
    CHECK(e.has_value() == is_primitive(M));
    if (e) {
      oracle::Matrix p = m;
      for (unsigned k = 1; k < *e; ++k) {
        CHECK_FALSE(oracle::positive(p));
        p = oracle::multiply(p, m);
      }
      CHECK(oracle::positive(p));
    }
  }
}

TEST_CASE("primitivity exponent is the smallest positive power") {
  IntMatrix m({{1, 0, 1}, {1, 0, 1}, {0, 1, 1}});
  CHECK(primitivity_exponent(NonnegIntMatrix(m)) == 2u);
  // Wielandt matrix of size 3 attains n^2 - 2n + 2 = 5.
  IntMatrix w({{0, 1, 0}, {0, 0, 1}, {1, 1, 0}});
  CHECK(primitivity_exponent(NonnegIntMatrix(w)) == 5u);
  CHECK_FALSE(primitivity_exponent(NonnegIntMatrix(IntMatrix({{0, 1}, {1, 0}}))));
}

TEST_CASE("transitive permutations") {
  CHECK(is_transitive_permutation(NonnegIntMatrix(IntMatrix({{0, 1}, {1, 0}}))));
  CHECK(is_transitive_permutation(NonnegIntMatrix(IntMatrix(std::vector<std::vector<long long>>{{1}}))));
  CHECK_FALSE(is_transitive_permutation(NonnegIntMatrix(IntMatrix({{1, 0}, {0, 1}}))));
  CHECK_FALSE(is_transitive_permutation(NonnegIntMatrix(IntMatrix({{1, 1}, {1, 0}}))));
}

TEST_CASE("PF eigenvalue of small matrices") {
  auto golden = pf_eigenvalue(NonnegIntMatrix(IntMatrix({{1, 1}, {1, 0}})));
  CHECK(golden.lambda == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-9));
  CHECK(golden.residual < 1e-9);
  double sum = 0;
  for (double v : golden.eigvec) {
    CHECK(v > 0);
    sum += v;
  }
  CHECK(sum == doctest::Approx(1.0));

  auto shift_periodic = pf_eigenvalue(NonnegIntMatrix(IntMatrix({{1, 0, 1}, {1, 0, 1}, {0, 1, 1}})));
  CHECK(std::abs(shift_periodic.lambda - 2.0) < 1e-9);
  CHECK(shift_periodic.residual < 1e-9);

  // Imprimitive but irreducible: the shift still converges.
  auto swap = pf_eigenvalue(NonnegIntMatrix(IntMatrix({{0, 2}, {2, 0}})));
  CHECK(swap.lambda == doctest::Approx(2.0));

  auto psi = pf_eigenvalue(NonnegIntMatrix(IntMatrix({{2, 1}, {1, 0}})));
  CHECK(psi.lambda == doctest::Approx(1 + std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("PF eigenvalue refuses reducible input") {
  try {
    (void)pf_eigenvalue(NonnegIntMatrix(IntMatrix({{1, 1}, {0, 1}})));
    FAIL("expected an error");
  } catch (Error const& e) {
    CHECK(e.kind() == ErrorKind::precondition);
  }
}

TEST_CASE("PF eigenvalue reports non-convergence") {
  PFOptions tight{.tol = 0.0, .max_iterations = 3};
  try {
    (void)pf_eigenvalue(NonnegIntMatrix(IntMatrix({{1, 1}, {1, 0}})), tight);
    FAIL("expected an error");
  } catch (Error const& e) {
    CHECK(e.kind() == ErrorKind::convergence);
  }
}

TEST_CASE("PF eigenvector satisfies the eigen-equation on random primitive matrices") {
  oracle::Rng rng(31);
  int         checked = 0;
  while (checked < 200) {
    auto n = 1 + rng.below(4);
    auto m = random_matrix(rng, n, 0, 3);
    if (!oracle::primitive(m)) {
      continue;
    }
    ++checked;
    auto pf = pf_eigenvalue(nonneg(m));
    for (std::size_t i = 0; i < n; ++i) {
      double mv = 0;
      for (std::size_t j = 0; j < n; ++j) {
        mv += static_cast<double>(m[i][j]) * pf.eigvec[j];
      }
      CHECK(std::abs(mv - pf.lambda * pf.eigvec[i]) < 1e-8);
    }
  }
}
