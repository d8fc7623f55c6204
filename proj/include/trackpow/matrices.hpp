#ifndef TRACKPOW_MATRICES_HPP_
#define TRACKPOW_MATRICES_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace trackpow {

  using Integer = boost::multiprecision::cpp_int;

  // Dense square matrix of arbitrary-precision integers.
  class IntMatrix {
   public:
    IntMatrix() = default;
    explicit IntMatrix(std::size_t n) : _n(n), _entries(n * n) {}
    explicit IntMatrix(std::vector<std::vector<long long>> const& rows);

    static IntMatrix identity(std::size_t n);

    std::size_t size() const noexcept {
      return _n;
    }

    Integer& operator()(std::size_t i, std::size_t j) {
      return _entries[i * _n + j];
    }

    Integer const& operator()(std::size_t i, std::size_t j) const {
      return _entries[i * _n + j];
    }

    IntMatrix operator*(IntMatrix const& that) const;
    bool      operator==(IntMatrix const&) const = default;

    IntMatrix transpose() const;
    IntMatrix pow(unsigned p) const;
    Integer   trace() const;
    // Bareiss fraction-free elimination; exact.
    Integer determinant() const;
    bool    is_zero() const;

    // Rows of space-separated integers, one row per line.
    std::string to_string() const;
    std::vector<std::vector<std::string>> to_strings() const;

   private:
    std::size_t          _n = 0;
    std::vector<Integer> _entries;
  };

  // Square matrix with nonnegative integer entries.
  class NonnegIntMatrix {
   public:
    NonnegIntMatrix() = default;
    // Throws precondition on a negative entry.
    explicit NonnegIntMatrix(IntMatrix m);
    explicit NonnegIntMatrix(std::vector<std::vector<long long>> const& rows)
        : NonnegIntMatrix(IntMatrix(rows)) {}

    std::size_t size() const noexcept {
      return _m.size();
    }

    Integer const& operator()(std::size_t i, std::size_t j) const {
      return _m(i, j);
    }

    IntMatrix const& matrix() const noexcept {
      return _m;
    }

    NonnegIntMatrix operator*(NonnegIntMatrix const& that) const {
      return NonnegIntMatrix(_m * that._m);
    }

    NonnegIntMatrix transpose() const {
      return NonnegIntMatrix(_m.transpose());
    }

    NonnegIntMatrix pow(unsigned p) const {
      return NonnegIntMatrix(_m.pow(p));
    }

    bool operator==(NonnegIntMatrix const&) const = default;

    std::string to_string() const {
      return _m.to_string();
    }

   private:
    IntMatrix _m;
  };

  // The directed graph i -> j whenever M(i, j) > 0 is strongly connected.
  bool is_irreducible(NonnegIntMatrix const& m);

  // Some power of M is entrywise positive. Decided by boolean squaring up to
  // the Wielandt exponent n^2 - 2n + 2.
  bool is_primitive(NonnegIntMatrix const& m);

  // Smallest p >= 1 with M^p entrywise positive, if M is primitive.
  std::optional<unsigned> primitivity_exponent(NonnegIntMatrix const& m);

  // 0/1 matrix of a permutation that is a single cycle through all indices.
  bool is_transitive_permutation(NonnegIntMatrix const& m);

  struct PFResult {
    double              lambda;
    std::vector<double> eigvec;  // positive, sums to 1
    double              residual;  // max |M v - lambda v|
    unsigned            iterations;
  };

  struct PFOptions {
    double   tol            = 1e-9;
    unsigned max_iterations = 1'000'000;
  };

  // Perron-Frobenius eigenvalue and right eigenvector of an irreducible M.
  //
  // Power iteration on M + I from the all-ones vector. The shift keeps the
  // dominant eigenvalue strictly dominant for imprimitive irreducible input.
  // Throws precondition on reducible input and convergence (message carries
  // the last iterate) if the residual stays above tol.
  PFResult pf_eigenvalue(NonnegIntMatrix const& m, PFOptions const& opts = {});

}  // namespace trackpow

#endif  // TRACKPOW_MATRICES_HPP_
