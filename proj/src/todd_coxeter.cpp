#include <deque>
#include <limits>
#include <sstream>

#include "trackpow/burnside.hpp"
#include "trackpow/error.hpp"

namespace trackpow {

  namespace {
    constexpr std::uint32_t undefined = std::numeric_limits<std::uint32_t>::max();

    // Hasselgrove-Leech-Trotter enumeration of the cosets of the trivial
    // subgroup, with coincidences processed through a union-find forward
    // pointer and a queue.
    class Enumerator {
     public:
      Enumerator(std::size_t rank, std::vector<Word> const& relators, std::size_t max_cosets)
          : _cols(2 * rank), _relators(relators), _max(max_cosets) {
        new_coset();
      }

      void run() {
        for (std::uint32_t c = 0; c < _parent.size(); ++c) {
          if (!alive(c)) {
            continue;
          }
          for (auto const& r : _relators) {
            scan_and_fill(c, r);
            if (!alive(c)) {
              break;
            }
          }
          if (!alive(c)) {
            continue;
          }
          for (std::size_t x = 0; x < _cols; ++x) {
            if (entry(c, x) == undefined) {
              define(c, x);
            }
          }
        }
      }

      // Live cosets renumbered breadth-first from the identity.
      CosetTable standardise(std::size_t rank) const {
        std::vector<std::uint32_t> number(_parent.size(), undefined);
        std::vector<std::uint32_t> order{0};
        number[0] = 0;
        for (std::size_t i = 0; i < order.size(); ++i) {
          for (std::size_t x = 0; x < _cols; ++x) {
            auto d = entry(order[i], x);
            if (number[d] == undefined) {
              number[d] = static_cast<std::uint32_t>(order.size());
              order.push_back(d);
            }
          }
        }
        std::vector<std::uint32_t> table(order.size() * _cols);
        for (std::size_t i = 0; i < order.size(); ++i) {
          for (std::size_t x = 0; x < _cols; ++x) {
            table[i * _cols + x] = number[entry(order[i], x)];
          }
        }
        return CosetTable(rank, std::move(table), _stats);
      }

     private:
      bool alive(std::uint32_t c) const {
        return _parent[c] == c;
      }

      std::uint32_t& entry(std::uint32_t c, std::size_t x) {
        return _table[c * _cols + x];
      }

      std::uint32_t entry(std::uint32_t c, std::size_t x) const {
        return _table[c * _cols + x];
      }

      std::uint32_t new_coset() {
        if (_parent.size() >= _max) {
          std::ostringstream msg;
          msg << "coset enumeration incomplete: more than " << _max << " cosets needed ("
              << _stats.defined << " defined, " << _live << " live, " << _stats.coincidences
              << " coincidences)";
          fail(ErrorKind::limit, msg.str());
        }
        auto d = static_cast<std::uint32_t>(_parent.size());
        _parent.push_back(d);
        _table.resize(_table.size() + _cols, undefined);
        ++_stats.defined;
        ++_live;
        _stats.max_live = std::max(_stats.max_live, _live);
        return d;
      }

      void define(std::uint32_t c, std::size_t x) {
        auto d                = new_coset();
        entry(c, x)           = d;
        entry(d, x ^ 1u)      = c;
      }

      void scan_and_fill(std::uint32_t c, Word const& r) {
        std::uint32_t f = c, b = c;
        long          i = 0, j = static_cast<long>(r.size()) - 1;
        for (;;) {
          while (i <= j && entry(f, r[i]) != undefined) {
            f = entry(f, r[i]);
            ++i;
          }
          if (i > j) {
            if (f != b) {
              coincidence(f, b);
            }
            return;
          }
          while (j >= i && entry(b, r[j] ^ 1u) != undefined) {
            b = entry(b, r[j] ^ 1u);
            --j;
          }
          if (j < i) {
            coincidence(f, b);
            return;
          }
          if (i == j) {
            entry(f, r[i])      = b;
            entry(b, r[i] ^ 1u) = f;
            return;
          }
          define(f, r[i]);
        }
      }

      std::uint32_t rep(std::uint32_t k) {
        auto root = k;
        while (_parent[root] != root) {
          root = _parent[root];
        }
        while (_parent[k] != root) {
          auto next  = _parent[k];
          _parent[k] = root;
          k          = next;
        }
        return root;
      }

      void merge(std::uint32_t k, std::uint32_t l, std::deque<std::uint32_t>& queue) {
        k = rep(k);
        l = rep(l);
        if (k == l) {
          return;
        }
        if (l < k) {
          std::swap(k, l);
        }
        _parent[l] = k;
        --_live;
        ++_stats.coincidences;
        queue.push_back(l);
      }

      void coincidence(std::uint32_t a, std::uint32_t b) {
        std::deque<std::uint32_t> queue;
        merge(a, b, queue);
        while (!queue.empty()) {
          auto e = queue.front();
          queue.pop_front();
          for (std::size_t x = 0; x < _cols; ++x) {
            auto f = entry(e, x);
            if (f == undefined) {
              continue;
            }
            entry(f, x ^ 1u) = undefined;
            auto e1 = rep(e), f1 = rep(f);
            if (entry(e1, x) != undefined) {
              merge(f1, entry(e1, x), queue);
            } else if (entry(f1, x ^ 1u) != undefined) {
              merge(e1, entry(f1, x ^ 1u), queue);
            } else {
              entry(e1, x)      = f1;
              entry(f1, x ^ 1u) = e1;
            }
          }
        }
      }

      std::size_t                _cols;
      std::vector<Word> const&   _relators;
      std::size_t                _max;
      std::vector<std::uint32_t> _table;
      std::vector<std::uint32_t> _parent;
      std::size_t                _live = 0;
      ToddCoxeterStats           _stats;
    };
  }  // namespace

  CosetTable::CosetTable(std::size_t rank, std::vector<std::uint32_t> table, ToddCoxeterStats stats)
      : _rank(rank), _table(std::move(table)), _stats(stats) {}

  std::size_t CosetTable::act(std::size_t coset, std::span<Letter const> w) const {
    for (Letter x : w) {
      coset = act(coset, x);
    }
    return coset;
  }

  std::string CosetTable::to_csv(Alphabet const& generators) const {
    std::ostringstream out;
    out << "coset";
    for (Letter x = 0; x < 2 * _rank; ++x) {
      out << ',' << generators.letter_name(x);
    }
    out << '\n';
    for (std::size_t c = 0; c < size(); ++c) {
      out << c;
      for (Letter x = 0; x < 2 * _rank; ++x) {
        out << ',' << act(c, x);
      }
      out << '\n';
    }
    return out.str();
  }

  CosetTable todd_coxeter(std::size_t               rank,
                          std::vector<Word> const&  relators,
                          ToddCoxeterOptions const& opts) {
    for (auto const& r : relators) {
      for (Letter x : r) {
        if (pair_index(x) >= rank) {
          fail(ErrorKind::precondition, "relator uses a letter beyond the rank");
        }
      }
      if (!is_reduced(r) || (r.size() > 1 && r.front() == inverse(r.back()))) {
        fail(ErrorKind::precondition, "relators must be cyclically reduced");
      }
    }
    if (rank == 0) {
      return CosetTable(0, {}, {});
    }
    Enumerator e(rank, relators, opts.max_cosets);
    e.run();
    return e.standardise(rank);
  }

}  // namespace trackpow
