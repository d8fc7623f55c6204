#include "trackpow/substitutions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "trackpow/error.hpp"

namespace trackpow {

  Substitution::Substitution(Alphabet alphabet, bool inverse_closed, std::vector<Word> images)
      : _alphabet(std::move(alphabet)),
        _inverse_closed(inverse_closed),
        _images(std::move(images)) {
    for (Letter x = 0; x < _images.size(); ++x) {
      if (!in_domain(x)) {
        continue;
      }
      for (Letter y : _images[x]) {
        if (!in_domain(y)) {
          fail(ErrorKind::precondition,
               "image of " + _alphabet.letter_name(x) + " leaves the alphabet");
        }
      }
    }
  }

  Substitution Substitution::plain(Alphabet alphabet, std::vector<Word> images) {
    if (images.size() != alphabet.rank()) {
      fail(ErrorKind::precondition, "one image per letter expected");
    }
    std::vector<Word> all(alphabet.size());
    for (std::size_t i = 0; i < images.size(); ++i) {
      all[positive_letter(i)] = std::move(images[i]);
    }
    return Substitution(std::move(alphabet), false, std::move(all));
  }

  Substitution Substitution::flip_extended(Alphabet alphabet, std::vector<Word> images) {
    if (images.size() != alphabet.rank()) {
      fail(ErrorKind::precondition, "one image per letter expected");
    }
    std::vector<Word> all(alphabet.size());
    for (std::size_t i = 0; i < images.size(); ++i) {
      all[inverse(positive_letter(i))] = flip(images[i]);
      all[positive_letter(i)]          = std::move(images[i]);
    }
    return Substitution(std::move(alphabet), true, std::move(all));
  }

  Substitution Substitution::inverse_closed(Alphabet alphabet, std::vector<Word> images) {
    if (images.size() != alphabet.size()) {
      fail(ErrorKind::precondition, "one image per letter and inverse expected");
    }
    return Substitution(std::move(alphabet), true, std::move(images));
  }

  bool Substitution::is_flip_equivariant() const {
    if (!_inverse_closed) {
      return false;
    }
    for (std::size_t i = 0; i < _alphabet.rank(); ++i) {
      auto x = positive_letter(i);
      if (_images[inverse(x)] != flip(_images[x])) {
        return false;
      }
    }
    return true;
  }

  std::vector<Letter> Substitution::domain() const {
    std::vector<Letter> out;
    for (Letter x = 0; x < _alphabet.size(); ++x) {
      if (in_domain(x)) {
        out.push_back(x);
      }
    }
    return out;
  }

  Word const& Substitution::image(Letter x) const {
    if (!in_domain(x)) {
      fail(ErrorKind::not_found, "letter outside the substitution's domain");
    }
    return _images[x];
  }

  Word Substitution::apply(std::span<Letter const> w, std::size_t cap) const {
    std::size_t total = 0;
    for (Letter x : w) {
      total += image(x).size();
      if (total > cap) {
        fail(ErrorKind::limit,
             "image length exceeds the cap of " + std::to_string(cap) + " letters");
      }
    }
    Word out;
    out.reserve(total);
    for (Letter x : w) {
      auto const& img = _images[x];
      out.insert(out.end(), img.begin(), img.end());
    }
    return out;
  }

  NonnegIntMatrix transition_matrix(Substitution const& sigma) {
    auto const n = sigma.alphabet().rank();
    IntMatrix  m(n);
    for (std::size_t j = 0; j < n; ++j) {
      for (Letter y : sigma.image(positive_letter(j))) {
        m(pair_index(y), j) += 1;
      }
    }
    return NonnegIntMatrix(std::move(m));
  }

  Substitution compose(Substitution const& outer, Substitution const& inner) {
    if (!(outer.alphabet() == inner.alphabet())
        || outer.is_inverse_closed() != inner.is_inverse_closed()) {
      fail(ErrorKind::mismatch, "substitutions act on different alphabets");
    }
    std::vector<Word> images(outer.alphabet().size());
    for (Letter x : inner.domain()) {
      images[x] = outer.apply(inner.image(x));
    }
    if (inner.is_inverse_closed()) {
      return Substitution::inverse_closed(outer.alphabet(), std::move(images));
    }
    std::vector<Word> positive;
    for (std::size_t i = 0; i < outer.alphabet().rank(); ++i) {
      positive.push_back(std::move(images[positive_letter(i)]));
    }
    return Substitution::plain(outer.alphabet(), std::move(positive));
  }

  Word iterate(Substitution const& sigma,
               std::span<Letter const> w,
               std::size_t             p,
               std::size_t             cap) {
    Word current(w.begin(), w.end());
    for (std::size_t i = 0; i < p; ++i) {
      current = sigma.apply(current, cap);
    }
    return current;
  }

  ////////////////////////////////////////////////////////////////////////
  // Fixed points
  ////////////////////////////////////////////////////////////////////////

  FixedPointStream::FixedPointStream(Substitution sigma, Letter seed)
      : _sigma(std::move(sigma)) {
    auto const& img = _sigma.image(seed);
    if (img.size() < 2 || img.front() != seed) {
      fail(ErrorKind::precondition,
           _sigma.alphabet().letter_name(seed) + " is not a proper prefix of its image");
    }
    _buffer = img;
  }

  // sigma^p(a) = a w sigma(w) ... sigma^(p-1)(w) where sigma(a) = a w, so
  // appending the image of each buffer letter after the first extends the
  // fixed point in place.
  Word const& FixedPointStream::extend(std::size_t length) {
    while (_buffer.size() < length) {
      if (_next >= _buffer.size()) {
        fail(ErrorKind::precondition,
             "fixed point stalls at length " + std::to_string(_buffer.size()));
      }
      auto const& img = _sigma.image(_buffer[_next]);
      _buffer.insert(_buffer.end(), img.begin(), img.end());
      ++_next;
    }
    return _buffer;
  }

  Word FixedPointStream::prefix(std::size_t length) {
    auto const& buf = extend(length);
    return Word(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(length));
  }

  Word fixed_point_prefix(Substitution const& sigma, Letter a, std::size_t length) {
    return FixedPointStream(sigma, a).prefix(length);
  }

  PeriodicityVerdict detect_shift_period(Substitution const& sigma, Letter a, std::size_t bound) {
    FixedPointStream stream(sigma, a);
    for (std::size_t len = 1; len <= bound; ++len) {
      auto const& buf = stream.extend(3 * len);
      std::span<Letter const> u(buf.data(), len);
      if (!is_primitive(u)) {
        continue;
      }
      auto img = sigma.apply(u);
      if (img.size() % len != 0 || img.size() / len < 2) {
        continue;
      }
      auto q = img.size() / len;
      if (img != repeat(u, q)) {
        continue;
      }
      bool agrees = true;
      for (std::size_t i = len; i < 3 * len && agrees; ++i) {
        agrees = buf[i] == buf[i % len];
      }
      if (agrees) {
        return Periodic{Word(u.begin(), u.end()), q};
      }
    }
    return NoPeriodUpTo{bound};
  }

  std::vector<Letter> orbit_letters(Substitution const& sigma, Letter a) {
    std::vector<bool>   seen(sigma.alphabet().size());
    std::vector<Letter> stack{a};
    seen[a] = true;
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      for (Letter y : sigma.image(x)) {
        if (!seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
      }
    }
    std::vector<Letter> out;
    for (Letter x = 0; x < seen.size(); ++x) {
      if (seen[x]) {
        out.push_back(x);
      }
    }
    return out;
  }

  bool certify_aperiodic(Substitution const& sigma, Letter a) {
    auto letters = orbit_letters(sigma, a);
    auto n       = letters.size();
    std::vector<std::size_t> index(sigma.alphabet().size(), n);
    for (std::size_t i = 0; i < n; ++i) {
      index[letters[i]] = i;
    }
    IntMatrix m(n);
    for (std::size_t j = 0; j < n; ++j) {
      for (Letter y : sigma.image(letters[j])) {
        m(index[y], j) += 1;
      }
    }
    NonnegIntMatrix counts(m);
    if (!is_primitive(counts)) {
      return false;
    }
    auto   pf = pf_eigenvalue(counts, {.tol = 1e-10});
    double lo = std::floor(pf.lambda), hi = std::ceil(pf.lambda);
    for (double candidate : {lo, hi}) {
      IntMatrix shifted = m;
      for (std::size_t i = 0; i < n; ++i) {
        shifted(i, i) -= static_cast<long long>(candidate);
      }
      if (shifted.determinant() == 0) {
        return false;
      }
    }
    return true;
  }

  std::size_t orbit_power_index(Substitution const& sigma,
                                Letter              a,
                                std::size_t         depth,
                                std::size_t         cap) {
    auto const& img = sigma.image(a);
    if (img.empty() || img.front() != a) {
      fail(ErrorKind::precondition,
           sigma.alphabet().letter_name(a) + " is not a prefix of its image");
    }
    Word seed{a};
    return max_power_index(iterate(sigma, seed, depth, cap));
  }

  ////////////////////////////////////////////////////////////////////////
  // Orientability
  ////////////////////////////////////////////////////////////////////////

  namespace {
    // chosen[pair] is -1 (open), or the letter picked from that pair.
    class OrientationSolver {
     public:
      explicit OrientationSolver(Substitution const& sigma)
          : _sigma(sigma), _chosen(sigma.alphabet().rank(), -1) {}

      bool choose(Letter x) {
        std::vector<std::size_t> trail;
        std::vector<Letter>      stack{x};
        bool                     ok = true;
        while (ok && !stack.empty()) {
          auto y = stack.back();
          stack.pop_back();
          auto& slot = _chosen[pair_index(y)];
          if (slot == static_cast<long>(y)) {
            continue;
          }
          if (slot != -1) {
            ok = false;
            break;
          }
          slot = y;
          trail.push_back(pair_index(y));
          for (Letter z : _sigma.image(y)) {
            stack.push_back(z);
          }
        }
        if (!ok) {
          for (auto i : trail) {
            _chosen[i] = -1;
          }
        }
        return ok;
      }

      bool open(std::size_t pair) const {
        return _chosen[pair] == -1;
      }

      std::vector<Letter> result() const {
        std::vector<Letter> out;
        for (long c : _chosen) {
          out.push_back(static_cast<Letter>(c));
        }
        return out;
      }

     private:
      Substitution const& _sigma;
      std::vector<long>   _chosen;
    };

    std::string oriented_name(Alphabet const& a, Letter x) {
      auto const& n = a.name(pair_index(x));
      if (is_positive(x)) {
        return n;
      }
      if (n.size() == 1 && std::islower(static_cast<unsigned char>(n[0]))) {
        std::string upper(1, static_cast<char>(std::toupper(static_cast<unsigned char>(n[0]))));
        if (!a.find_name(upper)) {
          return upper;
        }
      }
      return n + "_inv";
    }
  }  // namespace

  Orientability orientability(Substitution const& sigma) {
    if (!sigma.is_flip_equivariant()) {
      fail(ErrorKind::precondition, "orientability needs a flip-equivariant substitution");
    }
    auto const&       alphabet = sigma.alphabet();
    OrientationSolver solver(sigma);
    for (std::size_t i = 0; i < alphabet.rank(); ++i) {
      if (!solver.open(i)) {
        continue;
      }
      auto x = positive_letter(i);
      if (!solver.choose(x) && !solver.choose(inverse(x))) {
        return {};
      }
    }
    Orientability out;
    out.orientable = true;
    out.preferred  = solver.result();

    std::vector<std::string> names;
    std::vector<std::size_t> index(alphabet.size());
    for (std::size_t i = 0; i < out.preferred.size(); ++i) {
      names.push_back(oriented_name(alphabet, out.preferred[i]));
      index[out.preferred[i]] = i;
    }
    std::vector<Word> images;
    for (Letter x : out.preferred) {
      Word img;
      for (Letter y : sigma.image(x)) {
        img.push_back(positive_letter(index[y]));
      }
      images.push_back(std::move(img));
    }
    out.induced = Substitution::plain(Alphabet(std::move(names)), std::move(images));
    return out;
  }

}  // namespace trackpow
