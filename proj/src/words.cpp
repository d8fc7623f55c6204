#include "trackpow/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <unordered_set>

#include "trackpow/error.hpp"

namespace trackpow {

  namespace {
    bool valid_name(std::string const& name) {
      if (name.empty() || name == "1") {
        return false;
      }
      if (std::isdigit(static_cast<unsigned char>(name[0]))) {
        return false;
      }
      return std::none_of(name.begin(), name.end(), [](char c) {
        return std::isspace(static_cast<unsigned char>(c)) || c == '^'
               || c == '(' || c == ')' || c == '#' || c == ',';
      });
    }

    std::optional<long> parse_exponent(std::string_view text) {
      long value = 0;
      auto first = text.data();
      auto last  = text.data() + text.size();
      if (first != last && *first == '+') {
        ++first;
      }
      auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc() || ptr != last || first == last) {
        return std::nullopt;
      }
      return value;
    }

    void append_power(Word& out, Letter x, long k) {
      if (k < 0) {
        x = inverse(x);
        k = -k;
      }
      out.insert(out.end(), static_cast<std::size_t>(k), x);
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Alphabet
  ////////////////////////////////////////////////////////////////////////

  Alphabet::Alphabet(std::vector<std::string> names) : _names(std::move(names)) {
    std::unordered_set<std::string> seen;
    for (auto const& n : _names) {
      if (!valid_name(n)) {
        fail(ErrorKind::parse, "invalid letter name '" + n + "'");
      }
      if (!seen.insert(n).second) {
        fail(ErrorKind::parse, "duplicate letter name '" + n + "'");
      }
      _compact = _compact && n.size() == 1;
    }
  }

  Alphabet Alphabet::standard(std::size_t rank) {
    if (rank > 26) {
      fail(ErrorKind::precondition, "standard alphabets have at most 26 letters");
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < rank; ++i) {
      names.emplace_back(1, static_cast<char>('a' + i));
    }
    return Alphabet(std::move(names));
  }

  std::string Alphabet::letter_name(Letter x) const {
    if (!contains(x)) {
      fail(ErrorKind::not_found, "letter id " + std::to_string(x) + " out of range");
    }
    auto const& n = _names[pair_index(x)];
    return is_positive(x) ? n : n + "^-1";
  }

  std::optional<std::size_t> Alphabet::find_name(std::string_view name) const {
    auto it = std::find(_names.begin(), _names.end(), name);
    if (it == _names.end()) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - _names.begin());
  }

  std::optional<Letter> Alphabet::find_letter(std::string_view token) const {
    Word w;
    if (!parse_token(token, w) || w.size() != 1) {
      return std::nullopt;
    }
    return w[0];
  }

  Letter Alphabet::letter(std::string_view token) const {
    auto x = find_letter(token);
    if (!x) {
      fail(ErrorKind::not_found, "unknown letter '" + std::string(token) + "'");
    }
    return *x;
  }

  // Appends the letters denoted by one whitespace-free token.
  bool Alphabet::parse_token(std::string_view token, Word& out) const {
    if (token == "1") {
      return true;
    }
    if (token.starts_with("inv(") && token.ends_with(")")) {
      auto i = find_name(token.substr(4, token.size() - 5));
      if (!i) {
        return false;
      }
      out.push_back(inverse(positive_letter(*i)));
      return true;
    }
    if (auto i = find_name(token)) {
      out.push_back(positive_letter(*i));
      return true;
    }
    if (auto caret = token.rfind('^'); caret != std::string_view::npos) {
      auto k = parse_exponent(token.substr(caret + 1));
      if (k) {
        Word base;
        if (parse_token(token.substr(0, caret), base) && base.size() == 1) {
          append_power(out, base[0], *k);
          return true;
        }
      }
    }
    if (token.size() == 1) {
      char c = token[0];
      if (std::isupper(static_cast<unsigned char>(c))) {
        auto lower = std::string(
            1, static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        if (auto i = find_name(lower)) {
          out.push_back(inverse(positive_letter(*i)));
          return true;
        }
      }
      return false;
    }
    return _compact && parse_compact(token, out);
  }

  // Token such as "aba^2B" or "ab^-1c" over single-character names.
  bool Alphabet::parse_compact(std::string_view token, Word& out) const {
    Word        w;
    std::size_t i = 0;
    while (i < token.size()) {
      Word one;
      if (token.substr(i).starts_with("inv(")) {
        auto close = token.find(')', i);
        if (close == std::string_view::npos
            || !parse_token(token.substr(i, close - i + 1), one)) {
          return false;
        }
        i = close + 1;
      } else if (!parse_token(token.substr(i, 1), one)) {
        return false;
      } else {
        ++i;
      }
      long k = 1;
      if (i < token.size() && token[i] == '^') {
        auto j = i + 1;
        if (j < token.size() && (token[j] == '-' || token[j] == '+')) {
          ++j;
        }
        while (j < token.size() && std::isdigit(static_cast<unsigned char>(token[j]))) {
          ++j;
        }
        auto e = parse_exponent(token.substr(i + 1, j - i - 1));
        if (!e) {
          return false;
        }
        k = *e;
        i = j;
      }
      append_power(w, one[0], k);
    }
    out.insert(out.end(), w.begin(), w.end());
    return true;
  }

  Word Alphabet::parse(std::string_view text) const {
    Word        out;
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
      }
      auto j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) {
        ++j;
      }
      if (j > i) {
        auto token = text.substr(i, j - i);
        if (!parse_token(token, out)) {
          fail(ErrorKind::parse, "cannot read '" + std::string(token) + "' as letters");
        }
      }
      i = j;
    }
    return out;
  }

  // Inverse of a lowercase one-character letter prints uppercase unless that
  // is itself a name.
  std::string Alphabet::compact_name(Letter x) const {
    auto name = letter_name(x);
    if (is_positive(x)) {
      return name;
    }
    char c = _names[pair_index(x)][0];
    if (std::islower(static_cast<unsigned char>(c))) {
      std::string upper(1, static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
      if (!find_name(upper)) {
        return upper;
      }
    }
    return name;
  }

  std::string Alphabet::format(std::span<Letter const> w) const {
    if (w.empty()) {
      return "1";
    }
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i > 0 && !_compact) {
        out += ' ';
      }
      out += _compact ? compact_name(w[i]) : letter_name(w[i]);
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Free group words
  ////////////////////////////////////////////////////////////////////////

  GroupWord GroupWord::from_reduced(Word w) {
    if (!is_reduced(w)) {
      fail(ErrorKind::precondition, "word is not freely reduced");
    }
    return GroupWord(std::move(w));
  }

  GroupWord reduce(std::span<Letter const> w) {
    Word stack;
    stack.reserve(w.size());
    for (Letter x : w) {
      if (!stack.empty() && stack.back() == inverse(x)) {
        stack.pop_back();
      } else {
        stack.push_back(x);
      }
    }
    return GroupWord(std::move(stack));
  }

  bool is_reduced(std::span<Letter const> w) noexcept {
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (w[i] == inverse(w[i - 1])) {
        return false;
      }
    }
    return true;
  }

  Word flip(std::span<Letter const> w) {
    Word out(w.size());
    std::transform(w.rbegin(), w.rend(), out.begin(), [](Letter x) { return inverse(x); });
    return out;
  }

  GroupWord inverse(GroupWord const& w) {
    return GroupWord::from_reduced(flip(w.letters()));
  }

  GroupWord multiply(GroupWord const& u, GroupWord const& v) {
    Word w = u.letters();
    w.insert(w.end(), v.letters().begin(), v.letters().end());
    return reduce(w);
  }

  GroupWord power(GroupWord const& u, long m) {
    if (m < 0) {
      return power(inverse(u), -m);
    }
    auto core = cyclic_reduce(u);
    // u = p core p^-1, so u^m = p core^m p^-1.
    auto const& full = u.letters();
    auto        pre  = (full.size() - core.size()) / 2;
    Word        w(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(pre));
    auto        body = repeat(core.letters(), static_cast<std::size_t>(m));
    w.insert(w.end(), body.begin(), body.end());
    w.insert(w.end(), full.end() - static_cast<std::ptrdiff_t>(pre), full.end());
    return reduce(w);
  }

  GroupWord cyclic_reduce(GroupWord const& w) {
    auto const& x = w.letters();
    std::size_t i = 0, j = x.size();
    while (j - i >= 2 && x[i] == inverse(x[j - 1])) {
      ++i;
      --j;
    }
    return GroupWord::from_reduced(Word(x.begin() + static_cast<std::ptrdiff_t>(i),
                                        x.begin() + static_cast<std::ptrdiff_t>(j)));
  }

  Word repeat(std::span<Letter const> u, std::size_t m) {
    Word out;
    out.reserve(u.size() * m);
    for (std::size_t i = 0; i < m; ++i) {
      out.insert(out.end(), u.begin(), u.end());
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Periodicity
  ////////////////////////////////////////////////////////////////////////

  std::vector<std::size_t> border_array(std::span<Letter const> w) {
    std::vector<std::size_t> b(w.size(), 0);
    for (std::size_t i = 1; i < w.size(); ++i) {
      std::size_t k = b[i - 1];
      while (k > 0 && w[i] != w[k]) {
        k = b[k - 1];
      }
      if (w[i] == w[k]) {
        ++k;
      }
      b[i] = k;
    }
    return b;
  }

  PrimitiveRoot primitive_root(std::span<Letter const> w) {
    if (w.empty()) {
      fail(ErrorKind::precondition, "primitive root of the empty word");
    }
    auto        n      = w.size();
    auto        period = n - border_array(w).back();
    std::size_t len    = (n % period == 0) ? period : n;
    return {Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(len)), n / len};
  }

  bool is_primitive(std::span<Letter const> w) {
    return !w.empty() && primitive_root(w).exponent == 1;
  }

  // For every start i the border array of the suffix w[i..] gives the
  // smallest period of each prefix w[i, i + L), hence the largest integer
  // power starting at i with that length.
  std::size_t max_power_index(std::span<Letter const> w) {
    std::size_t best = w.empty() ? 0 : 1;
    for (std::size_t i = 0; i < w.size(); ++i) {
      auto rest = w.subspan(i);
      if (rest.size() <= best) {
        break;
      }
      auto b = border_array(rest);
      for (std::size_t len = 1; len <= rest.size(); ++len) {
        auto period = len - b[len - 1];
        best        = std::max(best, len / period);
      }
    }
    return best;
  }

  std::vector<PowerRun> find_power_runs(std::span<Letter const> w,
                                        std::size_t             min_exponent) {
    if (min_exponent < 2) {
      fail(ErrorKind::precondition, "find_power_runs needs min_exponent >= 2");
    }
    std::vector<PowerRun> runs;
    auto const            n = w.size();
    for (std::size_t p = 1; p * min_exponent <= n; ++p) {
      // Maximal intervals [s, t) with w[j] == w[j + p] for s <= j < t - p.
      std::size_t j = 0;
      while (j + p < n) {
        if (w[j] != w[j + p]) {
          ++j;
          continue;
        }
        auto s = j;
        while (j + p < n && w[j] == w[j + p]) {
          ++j;
        }
        auto length = j + p - s;
        if (length >= min_exponent * p) {
          auto period = w.subspan(s, p);
          // A non-primitive period means a shorter period spans the stretch.
          if (is_primitive(period)) {
            runs.push_back({s, Word(period.begin(), period.end()), length / p, length % p});
          }
        }
      }
    }
    std::sort(runs.begin(), runs.end(), [](PowerRun const& x, PowerRun const& y) {
      return x.start != y.start ? x.start < y.start : x.period.size() < y.period.size();
    });
    return runs;
  }

}  // namespace trackpow
