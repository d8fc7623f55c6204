#include "trackpow/session.hpp"

#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "trackpow/error.hpp"

namespace trackpow {

  std::string to_string(SourceLocation const& loc) {
    return loc.source + ":" + std::to_string(loc.line) + ":" + std::to_string(loc.column);
  }

  char const* to_string(ObjectKind k) noexcept {
    switch (k) {
      case ObjectKind::alphabet:
        return "alphabet";
      case ObjectKind::substitution:
        return "subst";
      case ObjectKind::automorphism:
        return "autom";
      case ObjectKind::graph_map:
        return "graphmap";
    }
    return "?";
  }

  namespace {

    struct Token {
      std::string text;
      std::size_t column;  // 1-based
    };

    struct Line {
      std::size_t        number;
      std::string        text;  // comment stripped
      std::vector<Token> tokens;
    };

    std::vector<Token> tokenize(std::string const& text) {
      std::vector<Token> out;
      std::size_t        i = 0;
      while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
          ++i;
        }
        if (i == text.size()) {
          break;
        }
        auto start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
          ++i;
        }
        out.push_back({text.substr(start, i - start), start + 1});
      }
      return out;
    }

    bool is_identifier(std::string_view s) {
      if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
        return false;
      }
      for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) {
          return false;
        }
      }
      return true;
    }

    struct Section {
      Line              header;
      std::string       keyword;
      std::string       name;
      std::vector<Line> body;
    };

    class Parser {
     public:
      Parser(Session& session, std::string source)
          : _session(session), _source(std::move(source)) {}

      void run(std::string_view text) {
        std::vector<Section> sections;
        std::size_t          number = 0;
        std::istringstream   in{std::string(text)};
        std::string          raw;
        while (std::getline(in, raw)) {
          ++number;
          if (!raw.empty() && raw.back() == '\r') {
            raw.pop_back();
          }
          if (auto hash = raw.find('#'); hash != std::string::npos) {
            raw.erase(hash);
          }
          Line line{number, raw, tokenize(raw)};
          if (line.tokens.empty()) {
            continue;
          }
          auto const& head = line.tokens[0].text;
          if (head == "alphabet" || head == "subst" || head == "autom" || head == "graphmap") {
            if (line.tokens.size() < 2) {
              error(line, line.tokens[0], ErrorKind::parse, "missing name after '" + head + "'");
            }
            sections.push_back({line, head, line.tokens[1].text, {}});
          } else if (sections.empty()) {
            error(line, line.tokens[0], ErrorKind::parse,
                  "expected a section ('alphabet', 'subst', 'autom' or 'graphmap')");
          } else {
            sections.back().body.push_back(std::move(line));
          }
        }
        for (auto& s : sections) {
          auto const& name_tok = s.header.tokens[1];
          if (!is_identifier(s.name)) {
            error(s.header, name_tok, ErrorKind::parse, "invalid name '" + s.name + "'");
          }
          if (_session.contains(s.name)) {
            error(s.header, name_tok, ErrorKind::parse, "duplicate name '" + s.name + "'");
          }
          if (s.keyword == "alphabet") {
            parse_alphabet(s);
          } else if (s.keyword == "subst") {
            parse_substitution(s);
          } else if (s.keyword == "autom") {
            parse_automorphism(s);
          } else {
            parse_graph_map(s);
          }
        }
      }

      std::vector<Diagnostic> warnings;
      std::map<std::string, std::string> alphabet_of;
      std::map<std::string, std::size_t> rank_of;

     private:
      SourceLocation at(Line const& line, Token const& tok) const {
        return {_source, line.number, tok.column};
      }

      [[noreturn]] void error(Line const& line, Token const& tok, ErrorKind kind,
                              std::string const& message) const {
        fail(kind, to_string(at(line, tok)) + ": " + message);
      }

      void warn(Line const& line, Token const& tok, std::string message) {
        warnings.push_back({at(line, tok), std::move(message)});
      }

      // Header options after the name: "over NAME" and bare flags.
      struct Options {
        std::optional<std::string> over;
        std::set<std::string>      flags;
      };

      Options header_options(Section const& s, std::set<std::string> const& allowed) const {
        Options     opts;
        auto const& t = s.header.tokens;
        for (std::size_t i = 2; i < t.size(); ++i) {
          if (t[i].text == "over") {
            if (i + 1 == t.size()) {
              error(s.header, t[i], ErrorKind::parse, "missing alphabet name after 'over'");
            }
            opts.over = t[++i].text;
            if (!_session.contains(*opts.over)) {
              error(s.header, t[i], ErrorKind::not_found, "undefined alphabet '" + *opts.over + "'");
            }
            if (_session.kind(*opts.over) != ObjectKind::alphabet) {
              error(s.header, t[i], ErrorKind::parse, "'" + *opts.over + "' is not an alphabet");
            }
          } else if (allowed.count(t[i].text)) {
            opts.flags.insert(t[i].text);
          } else {
            error(s.header, t[i], ErrorKind::parse, "unexpected '" + t[i].text + "'");
          }
        }
        return opts;
      }

      // Rejoins the tokens from index `from` with single spaces.
      static std::string rest(Line const& line, std::size_t from) {
        std::string out;
        for (std::size_t i = from; i < line.tokens.size(); ++i) {
          if (i > from) {
            out += ' ';
          }
          out += line.tokens[i].text;
        }
        return out;
      }

      Word parse_word(Alphabet const& a, Line const& line, std::size_t from) const {
        if (from >= line.tokens.size()) {
          error(line, line.tokens.back(), ErrorKind::parse, "missing word after '->'");
        }
        for (std::size_t i = from; i < line.tokens.size(); ++i) {
          try {
            (void)a.parse(line.tokens[i].text);
          } catch (Error const& e) {
            error(line, line.tokens[i], ErrorKind::not_found, e.what());
          }
        }
        return a.parse(rest(line, from));
      }

      void expect_arrow(Line const& line, std::size_t i) const {
        if (line.tokens.size() <= i || line.tokens[i].text != "->") {
          error(line, line.tokens[std::min(i, line.tokens.size() - 1)], ErrorKind::parse,
                "expected 'x -> word'");
        }
      }

      void parse_alphabet(Section const& s) {
        header_options(s, {});
        std::optional<Alphabet> alphabet;
        for (auto const& line : s.body) {
          if (line.tokens[0].text != "letters:") {
            error(line, line.tokens[0], ErrorKind::parse, "expected 'letters:'");
          }
          if (alphabet) {
            error(line, line.tokens[0], ErrorKind::parse, "letters given twice");
          }
          std::vector<std::string> names;
          for (std::size_t i = 1; i < line.tokens.size(); ++i) {
            names.push_back(line.tokens[i].text);
          }
          try {
            alphabet = Alphabet(std::move(names));
          } catch (Error const& e) {
            error(line, line.tokens[0], ErrorKind::parse, e.what());
          }
        }
        if (!alphabet) {
          error(s.header, s.header.tokens[1], ErrorKind::parse, "alphabet without 'letters:'");
        }
        _session.add(s.name, std::move(*alphabet));
      }

      // Positive letter names on the left of "x -> w", in order, for sections
      // without "over". Inverse forms contribute their base name.
      Alphabet implied_alphabet(Section const& s) const {
        std::vector<std::string> names;
        std::set<std::string>    seen;
        std::vector<std::string> candidates;
        for (auto const& line : s.body) {
          candidates.push_back(line.tokens[0].text);
        }
        std::set<std::string> all(candidates.begin(), candidates.end());
        for (std::size_t k = 0; k < s.body.size(); ++k) {
          std::string n = candidates[k];
          if (n.starts_with("inv(") && n.ends_with(")")) {
            n = n.substr(4, n.size() - 5);
          } else if (n.ends_with("^-1")) {
            n.resize(n.size() - 3);
          } else if (n.size() == 1 && std::isupper(static_cast<unsigned char>(n[0]))) {
            auto lower = std::string(1, static_cast<char>(std::tolower(static_cast<unsigned char>(n[0]))));
            if (all.count(lower)) {
              n = lower;
            }
          }
          if (seen.insert(n).second) {
            names.push_back(n);
          }
        }
        if (names.empty()) {
          error(s.header, s.header.tokens[1], ErrorKind::parse, "section defines no images");
        }
        try {
          return Alphabet(std::move(names));
        } catch (Error const& e) {
          error(s.header, s.header.tokens[1], ErrorKind::parse, e.what());
        }
      }

      // Images keyed by letter id; each line "x -> w".
      std::map<Letter, std::pair<Word, Line const*>> image_lines(Section const& s,
                                                                 Alphabet const& a) const {
        std::map<Letter, std::pair<Word, Line const*>> out;
        for (auto const& line : s.body) {
          expect_arrow(line, 1);
          auto x = a.find_letter(line.tokens[0].text);
          if (!x) {
            error(line, line.tokens[0], ErrorKind::not_found,
                  "'" + line.tokens[0].text + "' is not a letter of the alphabet");
          }
          if (out.count(*x)) {
            error(line, line.tokens[0], ErrorKind::parse,
                  "second image for '" + line.tokens[0].text + "'");
          }
          out.emplace(*x, std::make_pair(parse_word(a, line, 2), &line));
        }
        return out;
      }

      // "rank N" as the first body line selects the standard alphabet a, b, ...
      // and is removed from the body.
      std::optional<std::size_t> take_rank(Section& s) const {
        if (s.body.empty() || s.body.front().tokens[0].text != "rank") {
          return std::nullopt;
        }
        auto const& line = s.body.front();
        std::size_t r    = 0;
        try {
          std::size_t used = 0;
          if (line.tokens.size() != 2) {
            throw std::invalid_argument("rank");
          }
          r = std::stoul(line.tokens[1].text, &used);
          if (used != line.tokens[1].text.size() || r == 0 || r > 26) {
            throw std::invalid_argument("rank");
          }
        } catch (std::logic_error const&) {
          error(line, line.tokens[0], ErrorKind::parse, "expected 'rank N' with 1 <= N <= 26");
        }
        s.body.erase(s.body.begin());
        return r;
      }

      Alphabet section_alphabet(Section& s, Options const& opts) {
        if (auto r = take_rank(s)) {
          if (opts.over) {
            error(s.header, s.header.tokens[1], ErrorKind::parse, "both 'over' and 'rank' given");
          }
          rank_of[s.name] = *r;
          return Alphabet::standard(*r);
        }
        if (opts.over) {
          alphabet_of[s.name] = *opts.over;
          return _session.alphabet(*opts.over);
        }
        return implied_alphabet(s);
      }

      void parse_substitution(Section& s) {
        auto opts           = header_options(s, {"inverse-closed"});
        bool inverse_closed = opts.flags.count("inverse-closed") > 0;
        auto a              = section_alphabet(s, opts);
        auto lines          = image_lines(s, a);
        std::vector<Word> positive(a.rank());
        std::size_t       inverses = 0;
        for (auto const& [x, entry] : lines) {
          if (!is_positive(x)) {
            if (!inverse_closed) {
              error(*entry.second, entry.second->tokens[0], ErrorKind::parse,
                    "inverse letters need an 'inverse-closed' substitution");
            }
            ++inverses;
          } else {
            for (Letter y : entry.first) {
              if (!inverse_closed && !is_positive(y)) {
                error(*entry.second, entry.second->tokens[2], ErrorKind::parse,
                      "inverse letters in the image of a plain substitution");
              }
            }
          }
        }
        for (std::size_t i = 0; i < a.rank(); ++i) {
          auto it = lines.find(positive_letter(i));
          if (it == lines.end()) {
            error(s.header, s.header.tokens[1], ErrorKind::parse,
                  "no image for '" + a.name(i) + "'");
          }
          positive[i] = it->second.first;
        }
        if (!inverse_closed) {
          _session.add(s.name, Substitution::plain(a, std::move(positive)));
          return;
        }
        if (inverses == 0) {
          _session.add(s.name, Substitution::flip_extended(a, std::move(positive)));
          return;
        }
        if (inverses != a.rank()) {
          error(s.header, s.header.tokens[1], ErrorKind::parse,
                "give images for all inverse letters or for none");
        }
        std::vector<Word> all(a.size());
        for (auto const& [x, entry] : lines) {
          all[x] = entry.first;
        }
        _session.add(s.name, Substitution::inverse_closed(a, std::move(all)));
      }

      void parse_automorphism(Section& s) {
        auto opts  = header_options(s, {});
        auto a     = section_alphabet(s, opts);
        auto lines = image_lines(s, a);
        std::vector<GroupWord> images(a.rank());
        for (std::size_t i = 0; i < a.rank(); ++i) {
          auto it = lines.find(positive_letter(i));
          if (it == lines.end()) {
            error(s.header, s.header.tokens[1], ErrorKind::parse,
                  "no image for '" + a.name(i) + "'");
          }
          auto const& [w, line] = it->second;
          if (!is_reduced(w)) {
            warn(*line, line->tokens[2], "image of '" + a.name(i) + "' freely reduced");
          }
          images[i] = reduce(w);
        }
        for (auto const& [x, entry] : lines) {
          if (!is_positive(x)) {
            error(*entry.second, entry.second->tokens[0], ErrorKind::parse,
                  "images are given for positive letters only");
          }
        }
        _session.add(s.name, BasisMap(a, std::move(images)));
      }

      void parse_graph_map(Section const& s) {
        header_options(s, {});
        std::vector<std::string>               vertices;
        std::vector<EdgeSpec>                  edges;
        std::vector<unsigned>                  heights;
        std::vector<Line const*>               vmap_lines, map_lines;
        std::optional<Line const*>             vertices_line;
        for (auto const& line : s.body) {
          auto const& head = line.tokens[0].text;
          if (head == "vertices:") {
            if (vertices_line) {
              error(line, line.tokens[0], ErrorKind::parse, "vertices given twice");
            }
            vertices_line = &line;
            std::set<std::string> seen;
            for (std::size_t i = 1; i < line.tokens.size(); ++i) {
              if (!seen.insert(line.tokens[i].text).second) {
                error(line, line.tokens[i], ErrorKind::parse,
                      "duplicate vertex '" + line.tokens[i].text + "'");
              }
              vertices.push_back(line.tokens[i].text);
            }
          } else if (head == "edge") {
            if (!vertices_line) {
              error(line, line.tokens[0], ErrorKind::parse, "'vertices:' must come before edges");
            }
            if (line.tokens.size() != 6 || line.tokens[4].text != "height") {
              error(line, line.tokens[0], ErrorKind::parse,
                    "expected 'edge NAME FROM TO height H'");
            }
            auto from = vertex(vertices, line, line.tokens[2]);
            auto to   = vertex(vertices, line, line.tokens[3]);
            unsigned h = 0;
            try {
              std::size_t used = 0;
              auto        v    = std::stoul(line.tokens[5].text, &used);
              if (used != line.tokens[5].text.size() || v == 0 || v > 1'000'000) {
                throw std::invalid_argument("height");
              }
              h = static_cast<unsigned>(v);
            } catch (std::logic_error const&) {
              error(line, line.tokens[5], ErrorKind::parse, "height must be a positive integer");
            }
            edges.push_back({line.tokens[1].text, from, to});
            heights.push_back(h);
          } else if (head == "vmap") {
            vmap_lines.push_back(&line);
          } else if (head == "map") {
            map_lines.push_back(&line);
          } else {
            error(line, line.tokens[0], ErrorKind::parse,
                  "expected 'vertices:', 'edge', 'vmap' or 'map'");
          }
        }
        if (!vertices_line || vertices.empty()) {
          error(s.header, s.header.tokens[1], ErrorKind::parse, "graph map without vertices");
        }
        if (edges.empty()) {
          error(s.header, s.header.tokens[1], ErrorKind::parse, "graph map without edges");
        }
        Graph graph;
        try {
          std::vector<std::string> names;
          for (auto const& e : edges) {
            names.push_back(e.name);
          }
          (void)Alphabet(names);
          graph = Graph(vertices, edges);
        } catch (Error const& e) {
          error(s.header, s.header.tokens[1], ErrorKind::parse, e.what());
        }

        std::vector<std::size_t>                vmap(vertices.size());
        std::vector<bool>                       vseen(vertices.size());
        for (auto const* line : vmap_lines) {
          if (line->tokens.size() != 4 || line->tokens[2].text != "->") {
            error(*line, line->tokens[0], ErrorKind::parse, "expected 'vmap V -> W'");
          }
          auto v = vertex(vertices, *line, line->tokens[1]);
          if (vseen[v]) {
            error(*line, line->tokens[1], ErrorKind::parse, "vertex mapped twice");
          }
          vseen[v] = true;
          vmap[v]  = vertex(vertices, *line, line->tokens[3]);
        }
        for (std::size_t v = 0; v < vertices.size(); ++v) {
          if (!vseen[v]) {
            vmap[v] = v;
          }
        }

        auto const&                     alphabet = graph.edges();
        std::vector<std::optional<Word>> images(alphabet.rank());
        for (auto const* line : map_lines) {
          expect_arrow(*line, 2);
          auto e = alphabet.find_name(line->tokens[1].text);
          if (!e) {
            error(*line, line->tokens[1], ErrorKind::not_found,
                  "undefined edge '" + line->tokens[1].text + "'");
          }
          if (images[*e]) {
            error(*line, line->tokens[1], ErrorKind::parse, "edge mapped twice");
          }
          images[*e] = parse_word(alphabet, *line, 3);
          if (!is_reduced(*images[*e])) {
            warn(*line, line->tokens[3], "image of '" + line->tokens[1].text + "' tightened");
            images[*e] = reduce(*images[*e]).letters();
          }
        }
        std::vector<Word> plain(alphabet.rank());
        for (std::size_t i = 0; i < alphabet.rank(); ++i) {
          if (!images[i]) {
            error(s.header, s.header.tokens[1], ErrorKind::parse,
                  "no image for edge '" + alphabet.name(i) + "'");
          }
          plain[i] = *images[i];
        }
        try {
          _session.add(s.name, StratifiedGraphMap(graph, heights, vmap, std::move(plain)));
        } catch (Error const& e) {
          error(s.header, s.header.tokens[1], ErrorKind::parse, e.what());
        }
      }

      std::size_t vertex(std::vector<std::string> const& vertices, Line const& line,
                         Token const& tok) const {
        for (std::size_t v = 0; v < vertices.size(); ++v) {
          if (vertices[v] == tok.text) {
            return v;
          }
        }
        error(line, tok, ErrorKind::not_found, "undefined vertex '" + tok.text + "'");
      }

      Session&    _session;
      std::string _source;
    };

  }  // namespace

  Session Session::parse(std::string_view text, std::string source) {
    Session s;
    Parser  p(s, std::move(source));
    p.run(text);
    s._warnings    = std::move(p.warnings);
    s._alphabet_of = std::move(p.alphabet_of);
    s._rank_of     = std::move(p.rank_of);
    return s;
  }

  Session Session::load(std::filesystem::path const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      fail(ErrorKind::not_found, "cannot open session file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path.string());
  }

  bool Session::contains(std::string const& name) const {
    return _objects.count(name) > 0;
  }

  ObjectKind Session::kind(std::string const& name) const {
    auto it = _objects.find(name);
    if (it == _objects.end()) {
      fail(ErrorKind::not_found, "no object named '" + name + "' in the session");
    }
    return static_cast<ObjectKind>(it->second.index());
  }

  template <typename T>
  T const& Session::get(std::string const& name, ObjectKind k) const {
    if (kind(name) != k) {
      fail(ErrorKind::precondition, "'" + name + "' is a " + to_string(kind(name)) + ", not a "
                                        + to_string(k));
    }
    return std::get<T>(_objects.at(name));
  }

  Alphabet const& Session::alphabet(std::string const& name) const {
    return get<Alphabet>(name, ObjectKind::alphabet);
  }

  Substitution const& Session::substitution(std::string const& name) const {
    return get<Substitution>(name, ObjectKind::substitution);
  }

  BasisMap const& Session::automorphism(std::string const& name) const {
    return get<BasisMap>(name, ObjectKind::automorphism);
  }

  StratifiedGraphMap const& Session::graph_map(std::string const& name) const {
    return get<StratifiedGraphMap>(name, ObjectKind::graph_map);
  }

  void Session::insert(std::string const& name, Object obj) {
    if (contains(name)) {
      fail(ErrorKind::precondition, "duplicate name '" + name + "'");
    }
    _objects.emplace(name, std::move(obj));
    _order.push_back(name);
  }

  void Session::add(std::string const& name, Alphabet a) {
    insert(name, std::move(a));
  }

  void Session::add(std::string const& name, Substitution s) {
    insert(name, std::move(s));
  }

  void Session::add(std::string const& name, BasisMap phi) {
    insert(name, std::move(phi));
  }

  void Session::add(std::string const& name, StratifiedGraphMap f) {
    insert(name, std::move(f));
  }

  std::string Session::dump() const {
    std::ostringstream out;
    bool               first = true;
    for (auto const& name : _order) {
      if (!first) {
        out << '\n';
      }
      first         = false;
      auto const& o = _objects.at(name);
      auto over     = [&] {
        auto it = _alphabet_of.find(name);
        return it == _alphabet_of.end() ? std::string() : " over " + it->second;
      };
      auto rank = [&] {
        auto it = _rank_of.find(name);
        return it == _rank_of.end() ? std::string() : "rank " + std::to_string(it->second) + "\n";
      };
      switch (kind(name)) {
        case ObjectKind::alphabet: {
          auto const& a = std::get<Alphabet>(o);
          out << "alphabet " << name << "\nletters:";
          for (auto const& n : a.names()) {
            out << ' ' << n;
          }
          out << '\n';
          break;
        }
        case ObjectKind::substitution: {
          auto const& s = std::get<Substitution>(o);
          auto const& a = s.alphabet();
          out << "subst " << name << over() << (s.is_inverse_closed() ? " inverse-closed" : "")
              << '\n' << rank();
          bool all = s.is_inverse_closed() && !s.is_flip_equivariant();
          for (Letter x = 0; x < a.size(); ++x) {
            if (is_positive(x) || all) {
              out << a.letter_name(x) << " -> " << a.format(s.image(x)) << '\n';
            }
          }
          break;
        }
        case ObjectKind::automorphism: {
          auto const& phi = std::get<BasisMap>(o);
          auto const& a   = phi.basis();
          out << "autom " << name << over() << '\n' << rank();
          for (std::size_t i = 0; i < a.rank(); ++i) {
            out << a.name(i) << " -> " << a.format(phi.images()[i].letters()) << '\n';
          }
          break;
        }
        case ObjectKind::graph_map: {
          auto const& f = std::get<StratifiedGraphMap>(o);
          auto const& g = f.graph();
          auto const& e = g.edges();
          out << "graphmap " << name << "\nvertices:";
          for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            out << ' ' << g.vertex_name(v);
          }
          out << '\n';
          for (std::size_t i = 0; i < e.rank(); ++i) {
            auto x = positive_letter(i);
            out << "edge " << e.name(i) << ' ' << g.vertex_name(g.initial(x)) << ' '
                << g.vertex_name(g.terminal(x)) << " height " << f.height(x) << '\n';
          }
          for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            out << "vmap " << g.vertex_name(v) << " -> " << g.vertex_name(f.vertex_image(v))
                << '\n';
          }
          for (std::size_t i = 0; i < e.rank(); ++i) {
            out << "map " << e.name(i) << " -> " << e.format(f.image(positive_letter(i))) << '\n';
          }
          break;
        }
      }
    }
    return out.str();
  }

}  // namespace trackpow
