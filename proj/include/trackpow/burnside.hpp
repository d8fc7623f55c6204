#ifndef TRACKPOW_BURNSIDE_HPP_
#define TRACKPOW_BURNSIDE_HPP_

// Elementary moves on reduced words, and exact finite Burnside quotients for
// exponents 2 and 3 built by coset enumeration.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "trackpow/automorphisms.hpp"
#include "trackpow/words.hpp"

namespace trackpow {

  ////////////////////////////////////////////////////////////////////////
  // Elementary moves
  ////////////////////////////////////////////////////////////////////////

  // Exponent n and slack xi = xi_num / xi_den >= 0. A power u^m may be moved
  // when m is an integer strictly greater than n/2 - xi.
  class MoveParams {
   public:
    MoveParams(long n, long xi_num = 0, long xi_den = 1);

    // "1", "0.5", "3/2".
    static MoveParams parse(long n, std::string const& xi);

    long n() const noexcept {
      return _n;
    }

    long xi_num() const noexcept {
      return _xi_num;
    }

    long xi_den() const noexcept {
      return _xi_den;
    }

    // Smallest integer > n/2 - xi, before clamping.
    long threshold() const noexcept {
      return _threshold;
    }

    // Exponent actually required of a run: max(threshold, 2), or the override.
    std::size_t min_exponent() const noexcept {
      return _min_exponent;
    }

    // Replace the threshold, e.g. by the symmetric variant m >= n/4 - xi/2.
    MoveParams with_min_exponent(std::size_t m) const;

    std::string xi_string() const;

   private:
    long        _n, _xi_num, _xi_den;
    long        _threshold;
    std::size_t _min_exponent;
  };

  struct ElementaryMove {
    PowerRun  run;     // u^m sits at run.start, m = run.exponent
    GroupWord result;  // reduced word after u^m -> u^(m-n)
  };

  std::vector<ElementaryMove> find_elementary_moves(GroupWord const& w, MoveParams const& params);

  // Throws precondition if the move does not describe a movable power of w
  // (stale move).
  GroupWord apply_elementary_move(GroupWord const&      w,
                                  ElementaryMove const& move,
                                  MoveParams const&     params);

  struct MoveStep {
    std::size_t position;
    Word        period;
    std::size_t exponent;
    GroupWord   result;
  };

  struct SearchBudget {
    std::size_t max_states = 200'000;
    std::size_t max_depth  = 64;
  };

  struct Joined {
    GroupWord             witness;
    std::vector<MoveStep> from_first;
    std::vector<MoveStep> from_second;
  };

  // Never a proof that the words differ in B(r, n).
  struct Undecided {
    std::size_t explored_first;
    std::size_t explored_second;
    bool        budget_exhausted;  // false: both move graphs were exhausted
  };

  using SearchResult = std::variant<Joined, Undecided>;

  // Bidirectional breadth-first search over move descendants, memoised on
  // reduced words (no cyclic normalisation).
  SearchResult common_descendant_search(GroupWord const&    w1,
                                        GroupWord const&    w2,
                                        MoveParams const&   params,
                                        SearchBudget const& budget = {});

  ////////////////////////////////////////////////////////////////////////
  // Coset enumeration
  ////////////////////////////////////////////////////////////////////////

  struct ToddCoxeterOptions {
    std::size_t max_cosets = std::size_t(1) << 21;
  };

  struct ToddCoxeterStats {
    std::size_t defined      = 0;
    std::size_t max_live     = 0;
    std::size_t coincidences = 0;
  };

  // Closed, standardised coset table of the trivial subgroup: coset 0 is the
  // identity and cosets are numbered in breadth-first order of the columns.
  class CosetTable {
   public:
    CosetTable() = default;
    CosetTable(std::size_t rank, std::vector<std::uint32_t> table, ToddCoxeterStats stats);

    std::size_t rank() const noexcept {
      return _rank;
    }

    std::size_t size() const noexcept {
      return _rank == 0 ? 1 : _table.size() / (2 * _rank);
    }

    std::size_t act(std::size_t coset, Letter x) const {
      return _table[coset * 2 * _rank + x];
    }

    std::size_t act(std::size_t coset, std::span<Letter const> w) const;

    ToddCoxeterStats const& stats() const noexcept {
      return _stats;
    }

    // Header "coset,a,a^-1,b,b^-1,..." then one row per coset.
    std::string to_csv(Alphabet const& generators) const;

   private:
    std::size_t                _rank = 0;
    std::vector<std::uint32_t> _table;
    ToddCoxeterStats           _stats;
  };

  // HLT enumeration with a fixed scan order. Relators are words over the
  // standard letters 0 .. 2 rank - 1. Throws limit (with statistics in the
  // message) when more than max_cosets cosets are needed.
  CosetTable todd_coxeter(std::size_t                 rank,
                          std::vector<Word> const&    relators,
                          ToddCoxeterOptions const&   opts = {});

  class FiniteQuotient {
   public:
    FiniteQuotient(CosetTable table, unsigned exponent, std::size_t relator_length);

    std::size_t rank() const noexcept {
      return _table.rank();
    }

    unsigned exponent() const noexcept {
      return _exponent;
    }

    std::size_t order() const noexcept {
      return _table.size();
    }

    // Every element satisfies g^exponent = 1, hence this quotient of the free
    // group by exponent-th powers is B(rank, exponent) itself.
    bool exponent_certified() const noexcept {
      return _certified;
    }

    // Longest w whose power w^exponent was used as a relator.
    std::size_t relator_length() const noexcept {
      return _relator_length;
    }

    CosetTable const& table() const noexcept {
      return _table;
    }

    static constexpr std::size_t identity = 0;

    std::size_t evaluate(std::span<Letter const> w) const {
      return _table.act(identity, w);
    }

    std::size_t multiply(std::size_t g, std::size_t h) const {
      return _table.act(g, _reps[h]);
    }

    std::size_t inverse_of(std::size_t g) const {
      return evaluate(flip(_reps[g]));
    }

    // Shortlex-first word reaching g from the identity.
    Word const& representative(std::size_t g) const {
      return _reps.at(g);
    }

   private:
    CosetTable        _table;
    unsigned          _exponent;
    std::size_t       _relator_length;
    std::vector<Word> _reps;
    bool              _certified = false;
  };

  struct BurnsideOptions {
    // Refuse when the classical order formula exceeds this.
    std::size_t max_order          = 100'000;
    std::size_t max_relator_length = 8;
    // Per attempt; attempts with too short relators describe infinite groups
    // and stop here.
    std::size_t max_cosets = std::size_t(1) << 20;
  };

  // 2^r for n = 2, 3^(r + C(r,2) + C(r,3)) for n = 3.
  Integer burnside_order_formula(std::size_t r, unsigned n);

  // Relators w^n for the cyclically reduced primitive w of length <= L,
  // one per class under rotation and inversion.
  std::vector<Word> power_relators(std::size_t r, unsigned n, std::size_t max_length);

  // B(r, n) for n in {2, 3}: enumerate with power_relators for L = 1, 2, ...
  // until the enumeration closes and every element has order dividing n.
  FiniteQuotient burnside_oracle(std::size_t r, unsigned n, BurnsideOptions const& opts = {});

  struct ExceedsBound {
    std::size_t bound;
  };

  using InducedOrder = std::variant<std::size_t, ExceedsBound>;

  // Smallest k <= max_k with phi^k(x) = x in Q for every basis letter x. The
  // images are tracked inside Q, so words never grow.
  InducedOrder induced_order(BasisMap const& phi, FiniteQuotient const& q, std::size_t max_k);

}  // namespace trackpow

#endif  // TRACKPOW_BURNSIDE_HPP_
