#ifndef TRACKPOW_SUBSTITUTIONS_HPP_
#define TRACKPOW_SUBSTITUTIONS_HPP_

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "trackpow/matrices.hpp"
#include "trackpow/words.hpp"

namespace trackpow {

  // Any operation that materialises an iterated image refuses to build a word
  // longer than this unless told otherwise.
  inline constexpr std::size_t default_length_cap = 10'000'000;

  // Monoid morphism given by letter images.
  //
  // A plain substitution acts on the positive letters of its alphabet only.
  // An inverse-closed one acts on every letter; it is flip-equivariant when
  // image(inv(x)) == flip(image(x)) for all x.
  class Substitution {
   public:
    Substitution() = default;

    // images[i] is the image of the i-th letter; words use positive letters.
    static Substitution plain(Alphabet alphabet, std::vector<Word> images);

    // images[i] is the image of the i-th positive letter; inverses by flip.
    static Substitution flip_extended(Alphabet alphabet, std::vector<Word> images);

    // images[x] for every letter id x < 2 * rank.
    static Substitution inverse_closed(Alphabet alphabet, std::vector<Word> images);

    Alphabet const& alphabet() const noexcept {
      return _alphabet;
    }

    bool is_inverse_closed() const noexcept {
      return _inverse_closed;
    }

    bool is_flip_equivariant() const;

    bool in_domain(Letter x) const noexcept {
      return _alphabet.contains(x) && (_inverse_closed || is_positive(x));
    }

    std::vector<Letter> domain() const;

    Word const& image(Letter x) const;

    // sigma(w). Throws limit if the result would exceed cap letters.
    Word apply(std::span<Letter const> w, std::size_t cap = default_length_cap) const;

    bool operator==(Substitution const&) const = default;

   private:
    Substitution(Alphabet alphabet, bool inverse_closed, std::vector<Word> images);

    Alphabet          _alphabet;
    bool              _inverse_closed = false;
    std::vector<Word> _images;  // indexed by letter id
  };

  // (i, j) counts letter i in sigma(letter j). For inverse-closed
  // substitutions the positive letters are the preferred orientation and both
  // i and inv(i) are counted.
  NonnegIntMatrix transition_matrix(Substitution const& sigma);

  // Composite x -> outer(inner(x)).
  Substitution compose(Substitution const& outer, Substitution const& inner);

  // sigma^p(w), p >= 0.
  Word iterate(Substitution const& sigma,
               std::span<Letter const> w,
               std::size_t             p,
               std::size_t             cap = default_length_cap);

  // Lazily grown prefix of the fixed point sigma^infinity(a), where a is a
  // proper prefix of sigma(a). Single owner; copy to share a snapshot.
  class FixedPointStream {
   public:
    FixedPointStream(Substitution sigma, Letter seed);

    // Prefix of length at least `length` (possibly longer). Throws
    // precondition if the seed stops growing before reaching it.
    Word const& extend(std::size_t length);

    Word prefix(std::size_t length);

    Substitution const& substitution() const noexcept {
      return _sigma;
    }

   private:
    Substitution _sigma;
    Word         _buffer;
    std::size_t  _next = 1;  // next buffer letter whose image is not yet appended
  };

  Word fixed_point_prefix(Substitution const& sigma, Letter a, std::size_t length);

  struct Periodic {
    Word        period;    // primitive, sigma(period) == period^q
    std::size_t q;
  };

  struct NoPeriodUpTo {
    std::size_t bound;
  };

  using PeriodicityVerdict = std::variant<Periodic, NoPeriodUpTo>;

  // Looks for a primitive prefix u of sigma^infinity(a), |u| <= bound, with
  // sigma(u) = u^q for some q >= 2 and the fixed point agreeing with u u u.
  // Both sigma^infinity(a) and u^infinity are then sigma-fixed with arbitrarily
  // long common prefixes, hence equal.
  PeriodicityVerdict detect_shift_period(Substitution const& sigma, Letter a, std::size_t bound);

  // Letters occurring in the words sigma^p(a), p >= 0, in alphabet order.
  std::vector<Letter> orbit_letters(Substitution const& sigma, Letter a);

  // True when the restriction of sigma to orbit_letters(a) is primitive and its
  // PF eigenvalue is not an integer. Then sigma^infinity(a) is not
  // shift-periodic: sigma(u) = u^q would make the letter-count vector of u a
  // nonnegative eigenvector for the integer eigenvalue q.
  bool certify_aperiodic(Substitution const& sigma, Letter a);

  // max_power_index(sigma^depth(a)); since sigma^p(a) is a prefix of
  // sigma^(p+1)(a), this is also the maximum over every p <= depth.
  std::size_t orbit_power_index(Substitution const& sigma,
                                Letter              a,
                                std::size_t         depth,
                                std::size_t         cap = default_length_cap);

  struct Orientability {
    bool orientable = false;
    // One letter of each inverse pair, closed under sigma; lexicographically
    // least by alphabet order with a positive letter preferred.
    std::vector<Letter> preferred;
    // sigma restricted to `preferred`, as a plain substitution. A chosen
    // inverse letter x^-1 is named X for a one-character lowercase x when
    // that is free, otherwise x_inv.
    std::optional<Substitution> induced;
  };

  // Decides whether a flip-equivariant sigma maps some preferred orientation
  // into words over itself (a 2-SAT instance: choosing x forces every letter
  // of sigma(x)). Throws precondition on non-flip-equivariant input.
  Orientability orientability(Substitution const& sigma);

}  // namespace trackpow

#endif  // TRACKPOW_SUBSTITUTIONS_HPP_
