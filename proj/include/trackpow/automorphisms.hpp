#ifndef TRACKPOW_AUTOMORPHISMS_HPP_
#define TRACKPOW_AUTOMORPHISMS_HPP_

#include <cstddef>
#include <vector>

#include "trackpow/matrices.hpp"
#include "trackpow/substitutions.hpp"
#include "trackpow/words.hpp"

namespace trackpow {

  // Endomorphism of the free group on the letters of an alphabet, given by
  // the reduced images of the positive letters.
  class BasisMap {
   public:
    BasisMap() = default;
    BasisMap(Alphabet basis, std::vector<GroupWord> images);

    static BasisMap identity(Alphabet basis);

    std::size_t rank() const noexcept {
      return _basis.rank();
    }

    Alphabet const& basis() const noexcept {
      return _basis;
    }

    // Image of any letter; inverse letters map to the flipped image.
    GroupWord image(Letter x) const;

    std::vector<GroupWord> const& images() const noexcept {
      return _images;
    }

    GroupWord apply(std::span<Letter const> w, std::size_t cap = default_length_cap) const;

    bool operator==(BasisMap const&) const = default;

   private:
    Alphabet               _basis;
    std::vector<GroupWord> _images;
  };

  // x -> reduce(outer(inner(x))).
  BasisMap compose(BasisMap const& outer, BasisMap const& inner);
  BasisMap power(BasisMap const& phi, unsigned p);

  bool verify_automorphism(BasisMap const& phi, BasisMap const& phi_inv);

  // (i, j) = #a_i - #inv(a_i) in phi(a_j).
  IntMatrix abelianization(BasisMap const& phi);

  enum class Growth { polynomial, exponential };

  char const* to_string(Growth g) noexcept;

  // Rank 2 only: exponential iff |trace(M^2)| > 2 for the abelianization M.
  // Throws precondition for other ranks or when |det M| != 1.
  Growth growth_rank2(BasisMap const& phi);

  // n^(2 (2^(r-1) - 1)).
  Integer polynomial_order_bound(unsigned r, unsigned n);

  struct GrowthEstimate {
    // ||phi^depth(g)||^(1/depth).
    double root_estimate;
    // ||phi^depth(g)|| / ||phi^(depth-1)(g)||.
    double ratio_estimate;
    // ||phi^p(g)|| for p = 0 .. depth (cyclically reduced lengths).
    std::vector<std::size_t> lengths;
  };

  // Free-group side only. Whether an automorphism can act on a Burnside
  // group with exponential growth is an open question, and nothing here
  // estimates growth inside B(r, n).
  GrowthEstimate growth_rate_estimate(BasisMap const&  phi,
                                      GroupWord const& g,
                                      std::size_t      depth,
                                      std::size_t      cap = default_length_cap);

  // The rank-2 examples a -> a (b a^n)^n, b -> b a^n.
  BasisMap trace_family_member(unsigned n);

}  // namespace trackpow

#endif  // TRACKPOW_AUTOMORPHISMS_HPP_
