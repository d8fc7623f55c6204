#include "trackpow/commands.hpp"

#include <cstdio>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "trackpow/burnside.hpp"
#include "trackpow/error.hpp"

namespace trackpow {

  namespace {

    using Json = nlohmann::ordered_json;

    // A number rendered once; the JSON value is read back from the text so
    // both views carry the same digits.
    struct Num {
      std::string text;
      double      value;
    };

    Num fixed(double x, int digits = 6) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.*f", digits, x);
      return {buf, std::stod(buf)};
    }

    Num sci(double x) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3e", x);
      return {buf, std::stod(buf)};
    }

    constexpr std::size_t shown_letters = 120;

    // Long words are shown as a prefix and their length.
    std::string abbreviate(std::string const& s) {
      if (s.size() <= shown_letters) {
        return s;
      }
      return s.substr(0, shown_letters) + "... (" + std::to_string(s.size()) + " chars)";
    }

    Report finish(std::ostringstream& text, Json const& json, Outcome outcome = Outcome::definite) {
      return {text.str(), json.dump(2), {}, outcome};
    }

    std::string join(std::vector<std::string> const& parts, std::string const& sep = " ") {
      std::string out;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        out += (i ? sep : "") + parts[i];
      }
      return out;
    }

    void matrix_block(std::ostringstream& text, Json& json, char const* key, IntMatrix const& m) {
      auto rows = m.to_strings();
      json[key] = Json::array();
      text << key << ":\n";
      for (auto const& row : rows) {
        text << "  " << join(row) << '\n';
        Json jrow = Json::array();
        for (auto const& cell : row) {
          jrow.push_back(Json::parse(cell));
        }
        json[key].push_back(jrow);
      }
    }

    void pf_block(std::ostringstream& text, Json& json, PFResult const& pf) {
      auto lambda   = fixed(pf.lambda);
      auto residual = sci(pf.residual);
      text << "lambda = " << lambda.text << '\n';
      std::vector<std::string> parts;
      Json                     vec = Json::array();
      for (double v : pf.eigvec) {
        auto n = fixed(v);
        parts.push_back(n.text);
        vec.push_back(n.value);
      }
      text << "eigenvector: " << join(parts) << '\n';
      text << "residual = " << residual.text << '\n';
      text << "iterations: " << pf.iterations << '\n';
      json["lambda"]      = lambda.value;
      json["eigenvector"] = vec;
      json["residual"]    = residual.value;
      json["iterations"]  = pf.iterations;
    }

    // Iterating map of any kind, with its word alphabet.
    struct MapView {
      std::string                                         kind;
      Alphabet const*                                     alphabet;
      std::function<Word(Word const&, std::size_t cap)>   step;
    };

    MapView view(Session const& s, std::string const& name) {
      switch (s.kind(name)) {
        case ObjectKind::substitution: {
          auto const* sigma = &s.substitution(name);
          return {"subst", &sigma->alphabet(),
                  [sigma](Word const& w, std::size_t cap) { return sigma->apply(w, cap); }};
        }
        case ObjectKind::automorphism: {
          auto const* phi = &s.automorphism(name);
          return {"autom", &phi->basis(), [phi](Word const& w, std::size_t cap) {
                    return phi->apply(w, cap).letters();
                  }};
        }
        case ObjectKind::graph_map: {
          auto const* f = &s.graph_map(name);
          return {"graphmap", &f->graph().edges(),
                  [f](Word const& w, std::size_t cap) { return f_sharp(*f, w, 1, cap); }};
        }
        case ObjectKind::alphabet:
          break;
      }
      fail(ErrorKind::precondition, "'" + name + "' is an alphabet, not a map");
    }

    Word parse_seed(MapView const& m, std::string const& word) {
      auto w = m.alphabet->parse(word);
      if (m.kind == "autom") {
        w = reduce(w).letters();
      }
      return w;
    }

    Json word_list(std::vector<std::string> const& v) {
      Json out = Json::array();
      for (auto const& s : v) {
        out.push_back(s);
      }
      return out;
    }

  }  // namespace

  Report cmd_dump(Session const& s) {
    std::ostringstream text;
    text << s.dump();
    Json json;
    json["command"] = "dump";
    json["session"] = s.dump();
    Json names      = Json::array();
    for (auto const& n : s.names()) {
      names.push_back({{"name", n}, {"kind", to_string(s.kind(n))}});
    }
    json["objects"] = names;
    return finish(text, json);
  }

  Report cmd_orbit(Session const&        s,
                   std::string const&    name,
                   std::string const&    word,
                   std::size_t           depth,
                   CommandOptions const& opts) {
    auto m    = view(s, name);
    auto w    = parse_seed(m, word);
    if (m.kind == "graphmap") {
      w = f_sharp(s.graph_map(name), w, 0, opts.length_cap);
    }
    std::ostringstream text;
    Json               json;
    json["command"] = "orbit";
    json["map"]     = name;
    json["seed"]    = m.alphabet->format(w);
    json["depth"]   = depth;
    Json iterates   = Json::array();
    for (std::size_t p = 1; p <= depth; ++p) {
      w         = m.step(w, opts.length_cap);
      auto form = m.alphabet->format(w);
      text << name << '^' << p << '(' << word << ") = " << form << '\n';
      iterates.push_back({{"p", p}, {"length", w.size()}, {"word", form}});
    }
    json["iterates"] = iterates;
    return finish(text, json);
  }

  Report cmd_power_index(Session const&        s,
                         std::string const&    name,
                         std::string const&    seed,
                         std::size_t           depth,
                         CommandOptions const& opts) {
    auto m = view(s, name);
    auto w = parse_seed(m, seed);
    if (m.kind == "graphmap") {
      w = f_sharp(s.graph_map(name), w, 0, opts.length_cap);
    }
    std::ostringstream text;
    Json               json;
    json["command"] = "power-index";
    json["map"]     = name;
    json["seed"]    = m.alphabet->format(w);
    json["depth"]   = depth;
    Json        rows = Json::array();
    std::size_t best = 0;
    text << "p  length  index\n";
    for (std::size_t p = 1; p <= depth; ++p) {
      w          = m.step(w, opts.length_cap);
      auto index = max_power_index(w);
      best       = std::max(best, index);
      text << p << "  " << w.size() << "  " << index << '\n';
      rows.push_back({{"p", p}, {"length", w.size()}, {"index", index}});
    }
    text << "max index: " << best << '\n';
    json["iterates"]  = rows;
    json["max_index"] = best;
    return finish(text, json);
  }

  Report cmd_pf(Session const& s, std::string const& name) {
    std::ostringstream text;
    Json               json;
    json["command"] = "pf";
    json["object"]  = name;
    if (s.kind(name) == ObjectKind::substitution) {
      auto const& sigma = s.substitution(name);
      auto        m     = transition_matrix(sigma);
      matrix_block(text, json, "matrix", m.matrix());
      bool irreducible = is_irreducible(m);
      auto exponent    = primitivity_exponent(m);
      text << "irreducible: " << (irreducible ? "yes" : "no") << '\n';
      text << "primitive: " << (exponent ? "yes (M^" + std::to_string(*exponent) + " > 0)" : "no")
           << '\n';
      json["irreducible"] = irreducible;
      json["primitive"]   = exponent.has_value();
      if (exponent) {
        json["primitivity_exponent"] = *exponent;
      }
      if (!irreducible) {
        fail(ErrorKind::precondition,
             "transition matrix of '" + name + "' is reducible; no PF eigenvalue");
      }
      pf_block(text, json, pf_eigenvalue(m));
      return finish(text, json);
    }
    auto const& f       = s.graph_map(name);
    auto        strata  = classify_strata(f);
    auto const& edges   = f.graph().edges();
    Json        jstrata = Json::array();
    for (auto const& st : strata) {
      if (st.kind != StratumKind::exponential) {
        continue;
      }
      std::ostringstream block;
      Json               js;
      std::vector<std::string> names;
      for (Letter e : st.edges) {
        names.push_back(edges.letter_name(e));
      }
      text << "stratum " << st.height << " (" << join(names) << "):\n";
      js["height"] = st.height;
      js["edges"]  = word_list(names);
      matrix_block(text, js, "matrix", st.matrix.matrix());
      pf_block(text, js, *st.pf);
      std::vector<std::string> parts;
      Json                     lengths = Json::array();
      for (double l : *st.edge_lengths) {
        auto n = fixed(l);
        parts.push_back(n.text);
        lengths.push_back(n.value);
      }
      text << "edge lengths: " << join(parts) << '\n';
      js["edge_lengths"] = lengths;
      jstrata.push_back(js);
    }
    if (jstrata.empty()) {
      text << "no exponential stratum\n";
    }
    json["strata"] = jstrata;
    return finish(text, json);
  }

  Report cmd_classify(Session const& s, std::string const& name, CommandOptions const&) {
    std::ostringstream text;
    Json               json;
    json["command"] = "classify";
    json["object"]  = name;
    if (s.kind(name) == ObjectKind::automorphism) {
      auto const& phi = s.automorphism(name);
      auto        m   = abelianization(phi);
      json["kind"]    = "autom";
      json["rank"]    = phi.rank();
      text << "object: " << name << " (autom, rank " << phi.rank() << ")\n";
      matrix_block(text, json, "abelianization", m);
      auto det   = m.determinant();
      auto trace = m.trace();
      text << "determinant: " << det << "\ntrace: " << trace << '\n';
      json["determinant"] = Json::parse(det.str());
      json["trace"]       = Json::parse(trace.str());
      if (phi.rank() != 2 || abs(det) != 1) {
        text << "growth: undecided (the trace criterion needs rank 2 and |det| = 1)\n";
        json["growth"] = "undecided";
        return finish(text, json, Outcome::undecided);
      }
      auto g = growth_rank2(phi);
      text << "growth: " << to_string(g) << '\n';
      json["growth"] = to_string(g);
      return finish(text, json);
    }

    auto const& f     = s.graph_map(name);
    auto const& edges = f.graph().edges();
    check_filtration(f);
    auto strata   = classify_strata(f);
    json["kind"]  = "graphmap";
    text << "object: " << name << " (graphmap, " << f.graph().vertex_count()
         << (f.graph().vertex_count() == 1 ? " vertex, " : " vertices, ") << f.graph().edge_count()
         << (f.graph().edge_count() == 1 ? " edge)\n" : " edges)\n");
    text << "strata:\n";
    Json jstrata    = Json::array();
    bool refinement = false;
    for (auto const& st : strata) {
      std::vector<std::string> names;
      for (Letter e : st.edges) {
        names.push_back(edges.letter_name(e));
      }
      Json js;
      js["height"] = st.height;
      js["kind"]   = to_string(st.kind);
      js["edges"]  = word_list(names);
      text << "  " << st.height << "  " << to_string(st.kind) << "  " << join(names);
      if (st.pf) {
        auto l = fixed(st.pf->lambda);
        text << "  lambda = " << l.text;
        js["lambda"] = l.value;
      }
      text << '\n';
      refinement = refinement || st.kind == StratumKind::requires_refinement;
      jstrata.push_back(js);
    }
    json["strata"] = jstrata;
    if (refinement) {
      text << "growth: undecided (a stratum requires refinement)\n";
      json["growth"] = "undecided";
      return finish(text, json, Outcome::undecided);
    }
    auto rtt = check_rtt(f);
    text << "rtt: " << (rtt.passed ? "passed" : "failed") << " (" << rtt.checked.size()
         << " checks)\n";
    for (auto const& w : rtt.failures) {
      text << "  " << w << '\n';
    }
    json["rtt"] = {{"passed", rtt.passed}, {"checks", rtt.checked.size()},
                   {"failures", word_list(rtt.failures)}};
    if (!rtt.passed) {
      text << "growth: undecided (not a relative train track map)\n";
      json["growth"] = "undecided";
      return finish(text, json, Outcome::error);
    }
    auto g = growth_classify(f);
    text << "growth: " << to_string(g) << '\n';
    json["growth"] = to_string(g);
    return finish(text, json);
  }

  Report cmd_period(Session const&        s,
                    std::string const&    name,
                    std::string const&    letter,
                    std::size_t           bound,
                    CommandOptions const&) {
    auto const& sigma = s.substitution(name);
    auto const& a     = sigma.alphabet();
    auto        x     = a.letter(letter);
    if (!sigma.in_domain(x)) {
      fail(ErrorKind::precondition, "'" + letter + "' is outside the domain of '" + name + "'");
    }
    std::ostringstream text;
    Json               json;
    json["command"] = "period";
    json["subst"]   = name;
    json["letter"]  = a.letter_name(x);
    json["bound"]   = bound;
    auto verdict    = detect_shift_period(sigma, x, bound);
    text << "letter " << a.letter_name(x) << ", periods up to length " << bound << '\n';
    if (auto const* p = std::get_if<Periodic>(&verdict)) {
      text << "periodic: u = " << a.format(p->period) << ", q = " << p->q << '\n';
      json["verdict"] = "periodic";
      json["period"]  = a.format(p->period);
      json["q"]       = p->q;
      return finish(text, json);
    }
    text << "no period of length <= " << bound << '\n';
    if (certify_aperiodic(sigma, x)) {
      text << "aperiodic: certified (non-integer PF eigenvalue on the orbit letters)\n";
      json["verdict"] = "aperiodic";
      return finish(text, json);
    }
    json["verdict"] = "undecided";
    return finish(text, json, Outcome::undecided);
  }

  Report cmd_red(Session const&        s,
                 std::string const&    name,
                 std::string const&    word,
                 std::size_t           depth,
                 CommandOptions const& opts) {
    auto const& f     = s.graph_map(name);
    auto const& edges = f.graph().edges();
    auto        k     = single_exponential_height(f);
    auto        sigma = induced_substitution(f);
    auto        red   = red_alphabet(f, k);
    auto        alpha = edges.parse(word);

    std::ostringstream text;
    Json               json;
    json["command"] = "red";
    json["map"]     = name;
    json["word"]    = edges.format(alpha);
    json["height"]  = k;
    text << "top stratum: " << k << '\n';
    text << "sigma:";
    Json jsigma = Json::object();
    for (std::size_t i = 0; i < red.rank(); ++i) {
      auto img = red.format(sigma.image(positive_letter(i)));
      text << ' ' << red.name(i) << " -> " << img << (i + 1 < red.rank() ? "," : "");
      jsigma[red.name(i)] = img;
    }
    text << '\n';
    json["sigma"] = jsigma;

    // Validates red-legality once, with the library's message.
    (void)red_commutation_check(f, alpha, 0);
    Word path    = f_sharp(f, alpha, 0, opts.length_cap);
    Word red_rhs = red_projection(f, path, k);
    Json rows    = Json::array();
    bool all     = true;
    for (std::size_t p = 0; p <= depth; ++p) {
      if (p > 0) {
        path    = f_sharp(f, path, 1, opts.length_cap);
        red_rhs = sigma.apply(red_rhs, opts.length_cap);
      }
      auto lhs   = red_projection(f, path, k);
      bool equal = lhs == red_rhs;
      all        = all && equal;
      auto shown = abbreviate(red.format(lhs));
      text << "p=" << p << "  |f#^p| = " << path.size() << "  Red = " << shown << "  "
           << (equal ? "equal" : "DIFFERENT: sigma^p(Red) = " + abbreviate(red.format(red_rhs)))
           << '\n';
      rows.push_back({{"p", p}, {"path_length", path.size()}, {"red", shown}, {"equal", equal}});
    }
    text << "commutation: " << (all ? "holds" : "fails") << '\n';
    json["iterates"]    = rows;
    json["commutation"] = all;
    return finish(text, json);
  }

  Report cmd_audit_yellow(Session const&     s,
                          std::string const& name,
                          std::string const& edge,
                          std::size_t        depth) {
    auto const& f     = s.graph_map(name);
    auto const& edges = f.graph().edges();
    auto        e     = edges.letter(edge);
    auto        audit = yellow_loop_audit(f, e, depth);

    std::ostringstream text;
    Json               json;
    json["command"] = "audit-yellow";
    json["map"]     = name;
    json["edge"]    = edges.letter_name(e);
    json["depth"]   = depth;
    Json rows       = Json::array();
    for (auto const& y : audit.subpaths) {
      auto w = edges.format(y.path);
      text << "p=" << y.iterate << "  offset " << y.offset << "  " << w
           << (y.loop ? "  loop" : "") << '\n';
      rows.push_back({{"p", y.iterate}, {"offset", y.offset}, {"path", w}, {"loop", y.loop}});
    }
    text << "audit: " << (audit.passed ? "PASS" : "FAIL") << '\n';
    json["subpaths"] = rows;
    json["passed"]   = audit.passed;
    return finish(text, json);
  }

  Report cmd_moves(MovesQuery const& q) {
    auto alphabet = Alphabet::standard(q.rank);
    auto params   = MoveParams::parse(q.n, q.xi);
    if (q.min_exponent) {
      params = params.with_min_exponent(*q.min_exponent);
    }
    auto w = reduce(alphabet.parse(q.word));

    std::ostringstream text, trace;
    Json               json;
    json["command"]      = "moves";
    json["word"]         = alphabet.format(w.letters());
    json["n"]            = params.n();
    json["xi"]           = params.xi_string();
    json["min_exponent"] = params.min_exponent();
    text << "word: " << alphabet.format(w.letters()) << '\n';
    text << "n = " << params.n() << ", xi = " << params.xi_string() << ", min exponent "
         << params.min_exponent() << '\n';

    auto step_json = [&](MoveStep const& m) {
      return Json{{"position", m.position},
                  {"period", alphabet.format(m.period)},
                  {"m", m.exponent},
                  {"length", m.result.size()}};
    };
    auto step_line = [&](MoveStep const& m) {
      return std::to_string(m.position) + " " + alphabet.format(m.period) + " "
             + std::to_string(m.exponent) + " " + std::to_string(m.result.size());
    };

    if (!q.join) {
      auto moves = find_elementary_moves(w, params);
      text << "moves: " << moves.size() << '\n';
      Json rows = Json::array();
      for (auto const& m : moves) {
        auto result = alphabet.format(m.result.letters());
        text << "  at " << m.run.start << ": (" << alphabet.format(m.run.period) << ")^"
             << m.run.exponent << " -> " << result << '\n';
        rows.push_back({{"position", m.run.start},
                        {"period", alphabet.format(m.run.period)},
                        {"m", m.run.exponent},
                        {"result", result}});
      }
      json["moves"] = rows;
      return finish(text, json);
    }

    auto w2 = reduce(alphabet.parse(*q.join));
    json["join"]   = alphabet.format(w2.letters());
    json["budget"] = q.budget;
    auto result    = common_descendant_search(w, w2, params, {.max_states = q.budget});
    if (auto const* j = std::get_if<Joined>(&result)) {
      text << "joined: " << alphabet.format(j->witness.letters()) << '\n';
      text << "steps: " << j->from_first.size() << " + " << j->from_second.size() << '\n';
      Json first = Json::array(), second = Json::array();
      trace << "# position period m length\n# from first\n";
      for (auto const& m : j->from_first) {
        first.push_back(step_json(m));
        trace << step_line(m) << '\n';
      }
      trace << "# from second\n";
      for (auto const& m : j->from_second) {
        second.push_back(step_json(m));
        trace << step_line(m) << '\n';
      }
      json["verdict"]     = "joined";
      json["witness"]     = alphabet.format(j->witness.letters());
      json["from_first"]  = first;
      json["from_second"] = second;
      auto r              = finish(text, json);
      r.trace             = trace.str();
      return r;
    }
    auto const& u = std::get<Undecided>(result);
    text << "undecided: explored " << u.explored_first << " + " << u.explored_second << " words"
         << (u.budget_exhausted ? " (budget exhausted)" : " (no further moves)") << '\n';
    json["verdict"]          = "undecided";
    json["explored_first"]   = u.explored_first;
    json["explored_second"]  = u.explored_second;
    json["budget_exhausted"] = u.budget_exhausted;
    return finish(text, json, Outcome::undecided);
  }

  Report cmd_burnside_order(Session const&     s,
                            std::string const& name,
                            std::size_t        rank,
                            unsigned           exponent,
                            std::size_t        max_k) {
    auto const& phi = s.automorphism(name);
    if (phi.rank() != rank) {
      fail(ErrorKind::mismatch, "'" + name + "' has rank " + std::to_string(phi.rank())
                                    + ", not " + std::to_string(rank));
    }
    auto q     = burnside_oracle(rank, exponent);
    auto order = induced_order(phi, q, max_k);
    auto bound = polynomial_order_bound(static_cast<unsigned>(rank), exponent);

    std::ostringstream text;
    Json               json;
    json["command"]  = "burnside-order";
    json["autom"]    = name;
    json["rank"]     = rank;
    json["exponent"] = exponent;
    json["quotient"] = {{"order", q.order()},
                        {"exponent_certified", q.exponent_certified()},
                        {"relator_length", q.relator_length()}};
    text << "quotient: B(" << rank << "," << exponent << "), order " << q.order()
         << ", exponent certified, relators up to length " << q.relator_length() << '\n';
    if (auto const* k = std::get_if<std::size_t>(&order)) {
      text << "induced order: " << *k << '\n';
      text << "divides p(" << rank << "," << exponent << ") = " << bound << ": "
           << (bound % *k == 0 ? "yes" : "no") << '\n';
      json["order"]              = *k;
      json["bound"]              = Json::parse(bound.str());
      json["divides_bound"]      = bound % *k == 0;
      return finish(text, json);
    }
    text << "induced order: > " << max_k << '\n';
    json["order"]    = nullptr;
    json["exceeds"]  = max_k;
    json["bound"]    = Json::parse(bound.str());
    return finish(text, json, Outcome::undecided);
  }

  Report cmd_todd_coxeter(std::string const& relators_text,
                          std::size_t        rank,
                          bool               csv,
                          std::size_t        max_cosets) {
    auto               alphabet = Alphabet::standard(rank);
    std::vector<Word>  relators;
    std::istringstream in(relators_text);
    std::string        line;
    std::size_t        number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (auto hash = line.find('#'); hash != std::string::npos) {
        line.erase(hash);
      }
      if (line.find_first_not_of(" \t\r") == std::string::npos) {
        continue;
      }
      try {
        auto w = alphabet.parse(line);
        if (!is_reduced(w) || (w.size() > 1 && w.front() == inverse(w.back()))) {
          fail(ErrorKind::parse, "relator is not cyclically reduced");
        }
        relators.push_back(std::move(w));
      } catch (Error const& e) {
        fail(e.kind(), "relators:" + std::to_string(number) + ": " + e.what());
      }
    }
    auto table = todd_coxeter(rank, relators, {.max_cosets = max_cosets});

    std::ostringstream text;
    Json               json;
    json["command"]   = "tc";
    json["rank"]      = rank;
    json["relators"]  = relators.size();
    json["order"]     = table.size();
    json["stats"]     = {{"defined", table.stats().defined},
                         {"max_live", table.stats().max_live},
                         {"coincidences", table.stats().coincidences}};
    if (csv) {
      text << table.to_csv(alphabet);
      json["csv"] = table.to_csv(alphabet);
    } else {
      text << "order: " << table.size() << '\n';
      text << "rank " << rank << ", " << relators.size() << " relators\n";
      text << "cosets defined: " << table.stats().defined << ", max live "
           << table.stats().max_live << ", coincidences " << table.stats().coincidences << '\n';
    }
    return finish(text, json);
  }

}  // namespace trackpow
