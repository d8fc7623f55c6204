#include "trackpow/burnside.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "trackpow/error.hpp"

namespace trackpow {

  ////////////////////////////////////////////////////////////////////////
  // MoveParams
  ////////////////////////////////////////////////////////////////////////

  namespace {
    long floor_div(long a, long b) {
      long q = a / b;
      if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
      }
      return q;
    }
  }  // namespace

  MoveParams::MoveParams(long n, long xi_num, long xi_den)
      : _n(n), _xi_num(xi_num), _xi_den(xi_den) {
    if (n < 1) {
      fail(ErrorKind::precondition, "exponent n must be positive");
    }
    if (xi_den <= 0 || xi_num < 0) {
      fail(ErrorKind::precondition, "xi must be a nonnegative rational");
    }
    auto g = std::gcd(_xi_num, _xi_den);
    if (g > 1) {
      _xi_num /= g;
      _xi_den /= g;
    }
    // n/2 - xi = (n * den - 2 * num) / (2 * den)
    _threshold    = floor_div(_n * _xi_den - 2 * _xi_num, 2 * _xi_den) + 1;
    _min_exponent = static_cast<std::size_t>(std::max(_threshold, 2L));
  }

  MoveParams MoveParams::parse(long n, std::string const& xi) {
    auto slash = xi.find('/');
    try {
      if (slash != std::string::npos) {
        return MoveParams(n, std::stol(xi.substr(0, slash)), std::stol(xi.substr(slash + 1)));
      }
      auto dot = xi.find('.');
      if (dot == std::string::npos) {
        std::size_t used = 0;
        long        v    = std::stol(xi, &used);
        if (used != xi.size()) {
          fail(ErrorKind::parse, "cannot read xi '" + xi + "'");
        }
        return MoveParams(n, v, 1);
      }
      auto frac = xi.substr(dot + 1);
      if (frac.size() > 9 || frac.find_first_not_of("0123456789") != std::string::npos) {
        fail(ErrorKind::parse, "cannot read xi '" + xi + "'");
      }
      long den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) {
        den *= 10;
      }
      long whole = dot == 0 ? 0 : std::stol(xi.substr(0, dot));
      long part  = frac.empty() ? 0 : std::stol(frac);
      return MoveParams(n, whole * den + part, den);
    } catch (std::logic_error const&) {
      fail(ErrorKind::parse, "cannot read xi '" + xi + "'");
    }
  }

  MoveParams MoveParams::with_min_exponent(std::size_t m) const {
    if (m < 2) {
      fail(ErrorKind::precondition, "movable powers need exponent >= 2");
    }
    MoveParams out    = *this;
    out._min_exponent = m;
    return out;
  }

  std::string MoveParams::xi_string() const {
    if (_xi_den == 1) {
      return std::to_string(_xi_num);
    }
    return std::to_string(_xi_num) + "/" + std::to_string(_xi_den);
  }

  ////////////////////////////////////////////////////////////////////////
  // Moves
  ////////////////////////////////////////////////////////////////////////

  namespace {
    GroupWord replace_power(GroupWord const& w, PowerRun const& run, long n) {
      auto const& x    = w.letters();
      auto        from = static_cast<std::ptrdiff_t>(run.start);
      auto        to   = from + static_cast<std::ptrdiff_t>(run.exponent * run.period.size());
      Word        out(x.begin(), x.begin() + from);
      auto        m = static_cast<long>(run.exponent) - n;
      if (m >= 0) {
        auto body = repeat(run.period, static_cast<std::size_t>(m));
        out.insert(out.end(), body.begin(), body.end());
      } else {
        auto body = repeat(flip(run.period), static_cast<std::size_t>(-m));
        out.insert(out.end(), body.begin(), body.end());
      }
      out.insert(out.end(), x.begin() + to, x.end());
      return reduce(out);
    }
  }  // namespace

  std::vector<ElementaryMove> find_elementary_moves(GroupWord const& w, MoveParams const& params) {
    std::vector<ElementaryMove> moves;
    for (auto& run : find_power_runs(w.letters(), params.min_exponent())) {
      auto result = replace_power(w, run, params.n());
      moves.push_back({std::move(run), std::move(result)});
    }
    return moves;
  }

  GroupWord apply_elementary_move(GroupWord const&      w,
                                  ElementaryMove const& move,
                                  MoveParams const&     params) {
    auto const& run = move.run;
    auto const& x   = w.letters();
    bool        ok  = !run.period.empty() && run.exponent >= params.min_exponent()
              && run.start + run.exponent * run.period.size() <= x.size()
              && is_primitive(run.period);
    for (std::size_t i = 0; ok && i < run.exponent * run.period.size(); ++i) {
      ok = x[run.start + i] == run.period[i % run.period.size()];
    }
    if (!ok) {
      fail(ErrorKind::precondition, "stale move: the word has no such movable power");
    }
    return replace_power(w, run, params.n());
  }

  namespace {
    struct SearchNode {
      GroupWord   word;
      long        parent;
      MoveStep    step;
      std::size_t depth;
    };

    struct Side {
      std::vector<SearchNode>     nodes;
      std::map<Word, std::size_t> index;
      std::vector<std::size_t>    frontier;

      explicit Side(GroupWord const& root) {
        nodes.push_back({root, -1, {}, 0});
        index.emplace(root.letters(), 0);
        frontier.push_back(0);
      }

      std::vector<MoveStep> path_to(std::size_t i) const {
        std::vector<MoveStep> steps;
        for (long k = static_cast<long>(i); nodes[k].parent >= 0; k = nodes[k].parent) {
          steps.push_back(nodes[k].step);
        }
        std::reverse(steps.begin(), steps.end());
        return steps;
      }
    };
  }  // namespace

  SearchResult common_descendant_search(GroupWord const&    w1,
                                        GroupWord const&    w2,
                                        MoveParams const&   params,
                                        SearchBudget const& budget) {
    Side first(w1), second(w2);
    if (w1 == w2) {
      return Joined{w1, {}, {}};
    }
    auto undecided = [&](bool exhausted) {
      return Undecided{first.nodes.size(), second.nodes.size(), exhausted};
    };
    for (;;) {
      bool use_first = !first.frontier.empty()
                       && (second.frontier.empty()
                           || first.frontier.size() <= second.frontier.size());
      Side& self  = use_first ? first : second;
      Side& other = use_first ? second : first;
      if (self.frontier.empty()) {
        return undecided(false);
      }
      std::vector<std::size_t> next;
      for (auto i : self.frontier) {
        if (self.nodes[i].depth >= budget.max_depth) {
          return undecided(true);
        }
        auto word = self.nodes[i].word;
        for (auto& move : find_elementary_moves(word, params)) {
          if (self.index.count(move.result.letters())) {
            continue;
          }
          if (first.nodes.size() + second.nodes.size() >= budget.max_states) {
            return undecided(true);
          }
          MoveStep step{move.run.start, move.run.period, move.run.exponent, move.result};
          auto     id = self.nodes.size();
          self.nodes.push_back({move.result, static_cast<long>(i), step, self.nodes[i].depth + 1});
          self.index.emplace(move.result.letters(), id);
          next.push_back(id);
          if (auto hit = other.index.find(move.result.letters()); hit != other.index.end()) {
            auto mine   = self.path_to(id);
            auto theirs = other.path_to(hit->second);
            if (use_first) {
              return Joined{move.result, std::move(mine), std::move(theirs)};
            }
            return Joined{move.result, std::move(theirs), std::move(mine)};
          }
        }
      }
      self.frontier = std::move(next);
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Finite quotients
  ////////////////////////////////////////////////////////////////////////

  FiniteQuotient::FiniteQuotient(CosetTable table, unsigned exponent, std::size_t relator_length)
      : _table(std::move(table)), _exponent(exponent), _relator_length(relator_length) {
    // Breadth-first words in column order; the table is already numbered in
    // that order, so the first time a coset is reached is its shortlex word.
    _reps.assign(order(), {});
    std::vector<bool> seen(order());
    std::vector<std::size_t> queue{identity};
    seen[identity] = true;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      auto g = queue[i];
      for (Letter x = 0; x < 2 * rank(); ++x) {
        auto h = _table.act(g, x);
        if (!seen[h]) {
          seen[h]  = true;
          _reps[h] = _reps[g];
          _reps[h].push_back(x);
          queue.push_back(h);
        }
      }
    }
    _certified = true;
    for (std::size_t g = 0; g < order() && _certified; ++g) {
      std::size_t c = identity;
      for (unsigned k = 0; k < _exponent; ++k) {
        c = _table.act(c, _reps[g]);
      }
      _certified = c == identity;
    }
  }

  Integer burnside_order_formula(std::size_t r, unsigned n) {
    Integer result = 1;
    if (n == 2) {
      for (std::size_t i = 0; i < r; ++i) {
        result *= 2;
      }
      return result;
    }
    if (n == 3) {
      auto e = r + r * (r - 1) / 2 + (r >= 3 ? r * (r - 1) * (r - 2) / 6 : 0);
      for (std::size_t i = 0; i < e; ++i) {
        result *= 3;
      }
      return result;
    }
    fail(ErrorKind::precondition, "finite Burnside oracles exist here for n = 2 and 3 only");
  }

  std::vector<Word> power_relators(std::size_t r, unsigned n, std::size_t max_length) {
    std::vector<Word> out;
    std::vector<Word> layer{{}};
    for (std::size_t len = 1; len <= max_length; ++len) {
      std::vector<Word> grown;
      for (auto const& w : layer) {
        for (Letter x = 0; x < 2 * r; ++x) {
          if (!w.empty() && x == inverse(w.back())) {
            continue;
          }
          auto v = w;
          v.push_back(x);
          grown.push_back(std::move(v));
        }
      }
      layer = std::move(grown);
      for (auto const& w : layer) {
        if (len > 1 && w.front() == inverse(w.back())) {
          continue;
        }
        if (!is_primitive(w)) {
          continue;
        }
        // Keep w only if it is the least word among its rotations and the
        // rotations of its inverse.
        bool  least = true;
        auto  inv   = flip(w);
        for (Word const* base : std::array<Word const*, 2>{&w, &inv}) {
          for (std::size_t s = 0; s < len && least; ++s) {
            Word rot(base->begin() + static_cast<std::ptrdiff_t>(s), base->end());
            rot.insert(rot.end(), base->begin(), base->begin() + static_cast<std::ptrdiff_t>(s));
            least = !(rot < w);
          }
        }
        if (least) {
          out.push_back(repeat(w, n));
        }
      }
    }
    return out;
  }

  FiniteQuotient burnside_oracle(std::size_t r, unsigned n, BurnsideOptions const& opts) {
    if (n != 2 && n != 3) {
      fail(ErrorKind::precondition, "finite Burnside oracles exist here for n = 2 and 3 only");
    }
    if (r < 1) {
      fail(ErrorKind::precondition, "rank must be positive");
    }
    auto expected = burnside_order_formula(r, n);
    if (expected > opts.max_order) {
      fail(ErrorKind::limit,
           "B(" + std::to_string(r) + "," + std::to_string(n) + ") has order " + expected.str()
               + ", above the cap of " + std::to_string(opts.max_order));
    }
    std::string last_failure;
    for (std::size_t len = 1; len <= opts.max_relator_length; ++len) {
      CosetTable table;
      try {
        table = todd_coxeter(r, power_relators(r, n, len), {.max_cosets = opts.max_cosets});
      } catch (Error const& e) {
        if (e.kind() != ErrorKind::limit) {
          throw;
        }
        last_failure = e.what();
        continue;
      }
      FiniteQuotient q(std::move(table), n, len);
      if (q.exponent_certified()) {
        return q;
      }
      last_failure = "quotient of order " + std::to_string(q.order()) + " fails the exponent check";
    }
    fail(ErrorKind::limit,
         "no certified quotient with relators up to length "
             + std::to_string(opts.max_relator_length) + ": " + last_failure);
  }

  InducedOrder induced_order(BasisMap const& phi, FiniteQuotient const& q, std::size_t max_k) {
    if (phi.rank() != q.rank()) {
      fail(ErrorKind::mismatch, "basis map and quotient have different ranks");
    }
    auto const r = q.rank();
    std::vector<std::size_t> generators(r), current(r);
    for (std::size_t i = 0; i < r; ++i) {
      generators[i] = q.evaluate(std::vector<Letter>{positive_letter(i)});
    }
    current = generators;
    for (std::size_t k = 1; k <= max_k; ++k) {
      // phi^k(x) = phi^(k-1)(phi(x)): substitute the current images into phi(x).
      std::vector<std::size_t> next(r);
      for (std::size_t i = 0; i < r; ++i) {
        std::size_t g = FiniteQuotient::identity;
        for (Letter y : phi.images()[i].letters()) {
          auto h = current[pair_index(y)];
          g      = q.multiply(g, is_positive(y) ? h : q.inverse_of(h));
        }
        next[i] = g;
      }
      current = std::move(next);
      if (current == generators) {
        return k;
      }
    }
    return ExceedsBound{max_k};
  }

}  // namespace trackpow
