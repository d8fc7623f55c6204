#ifndef TRACKPOW_WORDS_HPP_
#define TRACKPOW_WORDS_HPP_

// Words over alphabets closed under formal inverses.
//
// A letter is an integer: the i-th named letter is 2*i and its formal inverse
// is 2*i + 1, so inversion is a single xor. Words are plain letter vectors and
// do not carry their alphabet; the Alphabet is only needed to read and print
// them.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace trackpow {

  using Letter = std::uint32_t;
  using Word   = std::vector<Letter>;

  constexpr Letter inverse(Letter x) noexcept {
    return x ^ 1u;
  }

  constexpr bool is_positive(Letter x) noexcept {
    return (x & 1u) == 0;
  }

  constexpr Letter positive_letter(std::size_t pair) noexcept {
    return static_cast<Letter>(2 * pair);
  }

  constexpr std::size_t pair_index(Letter x) noexcept {
    return x >> 1;
  }

  enum class Color : std::uint8_t { none, yellow, red };

  // Finite set of named letters together with their formal inverses.
  //
  // Input accepts `x`, `x^-1`, `inv(x)`, `x^k` for an integer k, and the
  // uppercase `X` for the inverse of a single-character lowercase name when `X`
  // is not itself a name. The token `1` denotes the empty word. Output writes
  // inverses as `x^-1`, except in compact alphabets (all names one character),
  // where words print unseparated and such inverses print as `X`.
  class Alphabet {
   public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names);

    // Letters a, b, c, ... (at most 26).
    static Alphabet standard(std::size_t rank);

    std::size_t rank() const noexcept {
      return _names.size();
    }

    std::size_t size() const noexcept {
      return 2 * _names.size();
    }

    std::vector<std::string> const& names() const noexcept {
      return _names;
    }

    std::string const& name(std::size_t pair) const {
      return _names.at(pair);
    }

    std::string letter_name(Letter x) const;

    // True when every name is one character, so words print without
    // separators and can be read back character by character.
    bool compact() const noexcept {
      return _compact;
    }

    bool contains(Letter x) const noexcept {
      return pair_index(x) < _names.size();
    }

    std::optional<std::size_t> find_name(std::string_view name) const;

    // A single-letter token; nullopt if the token does not name a letter.
    std::optional<Letter> find_letter(std::string_view token) const;

    Letter letter(std::string_view token) const;

    Word parse(std::string_view text) const;
    std::string format(std::span<Letter const> w) const;

    bool operator==(Alphabet const& that) const {
      return _names == that._names;
    }

   private:
    bool parse_token(std::string_view token, Word& out) const;
    bool parse_compact(std::string_view token, Word& out) const;
    std::string compact_name(Letter x) const;

    std::vector<std::string> _names;
    bool                     _compact = true;
  };

  // Freely reduced word: no factor x inv(x).
  class GroupWord {
   public:
    GroupWord() = default;

    // Throws precondition if `w` is not freely reduced.
    static GroupWord from_reduced(Word w);

    Word const& letters() const noexcept {
      return _letters;
    }

    std::size_t size() const noexcept {
      return _letters.size();
    }

    bool empty() const noexcept {
      return _letters.empty();
    }

    bool operator==(GroupWord const&) const = default;
    auto operator<=>(GroupWord const&) const = default;

   private:
    explicit GroupWord(Word w) : _letters(std::move(w)) {}
    friend GroupWord reduce(std::span<Letter const> w);

    Word _letters;
  };

  GroupWord reduce(std::span<Letter const> w);
  bool      is_reduced(std::span<Letter const> w) noexcept;

  // Reverse and invert every letter. On reduced words this is the group
  // inverse.
  Word flip(std::span<Letter const> w);

  GroupWord inverse(GroupWord const& w);
  GroupWord multiply(GroupWord const& u, GroupWord const& v);

  // u^m for any integer m, freely reduced; negative m uses inv(u).
  GroupWord power(GroupWord const& u, long m);

  // Cyclically reduced core of a reduced word: strips x ... inv(x) from both
  // ends. Its length is the conjugacy length of the element.
  GroupWord cyclic_reduce(GroupWord const& w);

  // Word concatenated with itself m times (monoid power).
  Word repeat(std::span<Letter const> u, std::size_t m);

  // Failure function: result[i] is the longest proper border of w[0..i].
  std::vector<std::size_t> border_array(std::span<Letter const> w);

  struct PrimitiveRoot {
    Word        root;
    std::size_t exponent;
  };

  // w = root^exponent with root primitive. Throws precondition on empty input.
  PrimitiveRoot primitive_root(std::span<Letter const> w);
  bool          is_primitive(std::span<Letter const> w);

  // Largest m such that u^m is a factor of w for some nonempty u. Empty word
  // gives 0, any nonempty word at least 1.
  std::size_t max_power_index(std::span<Letter const> w);

  // A maximal periodic stretch w[start, start + length) with primitive period.
  // `exponent` is the integer part of length / |period|; `remainder` is the
  // length of the trailing partial period.
  struct PowerRun {
    std::size_t start;
    Word        period;
    std::size_t exponent;
    std::size_t remainder;

    std::size_t length() const noexcept {
      return exponent * period.size() + remainder;
    }

    bool operator==(PowerRun const&) const = default;
  };

  // All maximal stretches whose integer exponent is at least min_exponent
  // (>= 2), ordered by start then period length. Conjugate periods inside one
  // stretch are reported once, at the leftmost position.
  std::vector<PowerRun> find_power_runs(std::span<Letter const> w,
                                        std::size_t             min_exponent);

}  // namespace trackpow

#endif  // TRACKPOW_WORDS_HPP_
