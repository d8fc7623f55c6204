#include "trackpow/graphmap.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "trackpow/error.hpp"

namespace trackpow {

  ////////////////////////////////////////////////////////////////////////
  // Graph
  ////////////////////////////////////////////////////////////////////////

  Graph::Graph(std::vector<std::string> vertices, std::vector<EdgeSpec> edges)
      : _vertices(std::move(vertices)) {
    if (_vertices.empty()) {
      fail(ErrorKind::precondition, "graph without vertices");
    }
    std::set<std::string> seen(_vertices.begin(), _vertices.end());
    if (seen.size() != _vertices.size()) {
      fail(ErrorKind::parse, "duplicate vertex name");
    }
    std::vector<std::string> names;
    for (auto const& e : edges) {
      if (e.from >= _vertices.size() || e.to >= _vertices.size()) {
        fail(ErrorKind::not_found, "edge " + e.name + " has an unknown endpoint");
      }
      names.push_back(e.name);
      _from.push_back(e.from);
      _to.push_back(e.to);
    }
    _edges = Alphabet(std::move(names));
  }

  std::optional<std::size_t> Graph::find_vertex(std::string_view name) const {
    auto it = std::find(_vertices.begin(), _vertices.end(), name);
    if (it == _vertices.end()) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - _vertices.begin());
  }

  std::size_t Graph::initial(Letter e) const {
    auto i = pair_index(e);
    return is_positive(e) ? _from.at(i) : _to.at(i);
  }

  std::size_t Graph::terminal(Letter e) const {
    return initial(inverse(e));
  }

  bool Graph::is_path(std::span<Letter const> w) const {
    for (Letter e : w) {
      if (!_edges.contains(e)) {
        return false;
      }
    }
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (terminal(w[i - 1]) != initial(w[i])) {
        return false;
      }
    }
    return true;
  }

  bool Graph::is_loop(std::span<Letter const> w) const {
    return !w.empty() && initial(w.front()) == terminal(w.back());
  }

  ////////////////////////////////////////////////////////////////////////
  // StratifiedGraphMap
  ////////////////////////////////////////////////////////////////////////

  StratifiedGraphMap::StratifiedGraphMap(Graph                    graph,
                                         std::vector<unsigned>    heights,
                                         std::vector<std::size_t> vertex_map,
                                         std::vector<Word>        images)
      : _graph(std::move(graph)),
        _heights(std::move(heights)),
        _vertex_map(std::move(vertex_map)) {
    auto const& edges = _graph.edges();
    if (_heights.size() != edges.rank() || images.size() != edges.rank()) {
      fail(ErrorKind::precondition, "one height and one image per edge expected");
    }
    if (_vertex_map.size() != _graph.vertex_count()) {
      fail(ErrorKind::precondition, "one vertex image per vertex expected");
    }
    for (auto v : _vertex_map) {
      if (v >= _graph.vertex_count()) {
        fail(ErrorKind::not_found, "vertex image out of range");
      }
    }
    std::set<unsigned> used(_heights.begin(), _heights.end());
    _top = used.empty() ? 0 : *used.rbegin();
    if (used.count(0) || used.size() != _top) {
      fail(ErrorKind::precondition, "heights must cover 1..m without gaps");
    }
    _images.resize(edges.size());
    for (std::size_t i = 0; i < images.size(); ++i) {
      auto        e    = positive_letter(i);
      auto const& img  = images[i];
      auto const  name = edges.name(i);
      if (img.empty()) {
        fail(ErrorKind::precondition, "image of " + name + " is trivial");
      }
      if (!_graph.is_path(img)) {
        fail(ErrorKind::precondition, "image of " + name + " is not a path");
      }
      if (!is_reduced(img)) {
        fail(ErrorKind::precondition, "image of " + name + " is not tight");
      }
      if (_graph.initial(img.front()) != _vertex_map[_graph.initial(e)]
          || _graph.terminal(img.back()) != _vertex_map[_graph.terminal(e)]) {
        fail(ErrorKind::precondition,
             "image of " + name + " does not join the images of its endpoints");
      }
      _images[inverse(e)] = flip(img);
      _images[e]          = img;
    }
  }

  StratifiedGraphMap StratifiedGraphMap::rose(Alphabet                 petals,
                                              std::vector<unsigned>    heights,
                                              std::vector<Word> const& images) {
    std::vector<EdgeSpec> edges;
    for (auto const& n : petals.names()) {
      edges.push_back({n, 0, 0});
    }
    return StratifiedGraphMap(Graph({"v"}, std::move(edges)), std::move(heights), {0}, images);
  }

  Word StratifiedGraphMap::apply(std::span<Letter const> w, std::size_t cap) const {
    Word out;
    for (Letter e : w) {
      auto const& img = _images.at(e);
      if (out.size() + img.size() > cap) {
        fail(ErrorKind::limit,
             "image length exceeds the cap of " + std::to_string(cap) + " letters");
      }
      out.insert(out.end(), img.begin(), img.end());
    }
    return out;
  }

  std::vector<Letter> StratifiedGraphMap::stratum_edges(unsigned k) const {
    std::vector<Letter> out;
    for (std::size_t i = 0; i < _heights.size(); ++i) {
      if (_heights[i] == k) {
        out.push_back(positive_letter(i));
      }
    }
    return out;
  }

  Word f_sharp(StratifiedGraphMap const& f,
               std::span<Letter const>   alpha,
               std::size_t               p,
               std::size_t               cap) {
    if (!f.graph().is_path(alpha) || !is_reduced(alpha)) {
      fail(ErrorKind::precondition, "f_sharp needs a tight edge path");
    }
    Word current(alpha.begin(), alpha.end());
    for (std::size_t i = 0; i < p; ++i) {
      current = reduce(f.apply(current, cap)).letters();
    }
    return current;
  }

  ////////////////////////////////////////////////////////////////////////
  // Strata
  ////////////////////////////////////////////////////////////////////////

  char const* to_string(StratumKind k) noexcept {
    switch (k) {
      case StratumKind::zero:
        return "zero";
      case StratumKind::non_exponential:
        return "non-exponential";
      case StratumKind::exponential:
        return "exponential";
      case StratumKind::requires_refinement:
        return "requires-refinement";
    }
    return "?";
  }

  void check_filtration(StratifiedGraphMap const& f) {
    auto const& edges = f.graph().edges();
    for (std::size_t i = 0; i < edges.rank(); ++i) {
      auto e = positive_letter(i);
      for (Letter x : f.image(e)) {
        if (f.height(x) > f.height(e)) {
          fail(ErrorKind::precondition,
               "filtration violated: f(" + edges.name(i) + ") crosses " + edges.letter_name(x)
                   + " of height " + std::to_string(f.height(x)) + " > "
                   + std::to_string(f.height(e)));
        }
      }
    }
  }

  std::vector<StratumReport> classify_strata(StratifiedGraphMap const& f) {
    check_filtration(f);
    std::vector<StratumReport> reports;
    for (unsigned k = 1; k <= f.top_height(); ++k) {
      StratumReport r{};
      r.height = k;
      r.edges  = f.stratum_edges(k);
      auto n   = r.edges.size();
      std::vector<std::size_t> index(f.graph().edges().rank(), n);
      for (std::size_t i = 0; i < n; ++i) {
        index[pair_index(r.edges[i])] = i;
      }
      IntMatrix m(n);
      for (std::size_t j = 0; j < n; ++j) {
        for (Letter x : f.image(r.edges[j])) {
          if (index[pair_index(x)] < n) {
            m(index[pair_index(x)], j) += 1;
          }
        }
      }
      r.matrix      = NonnegIntMatrix(std::move(m));
      r.single_edge = n == 1;
      if (r.matrix.matrix().is_zero()) {
        r.kind = StratumKind::zero;
      } else if (!is_irreducible(r.matrix)) {
        r.kind = StratumKind::requires_refinement;
      } else if (is_transitive_permutation(r.matrix)) {
        r.kind = StratumKind::non_exponential;
        if (r.single_edge) {
          auto const& img = f.image(r.edges[0]);
          if (img.front() == r.edges[0]) {
            r.loop_word = Word(img.begin() + 1, img.end());
          }
        }
      } else {
        r.kind         = StratumKind::exponential;
        r.aperiodic    = is_primitive(r.matrix);
        PFOptions opts{.tol = 1e-12};
        r.pf           = pf_eigenvalue(r.matrix, opts);
        r.edge_lengths = pf_eigenvalue(r.matrix.transpose(), opts).eigvec;
      }
      reports.push_back(std::move(r));
    }
    return reports;
  }

  ////////////////////////////////////////////////////////////////////////
  // Turns
  ////////////////////////////////////////////////////////////////////////

  TurnTable::TurnTable(StratifiedGraphMap const& f)
      : _graph(&f.graph()), _size(f.graph().edges().size()) {
    _derivative.resize(_size);
    for (Letter e = 0; e < _size; ++e) {
      _derivative[e] = f.image(e).front();
    }
    _legal.assign(_size * _size, true);
    auto const bound = _size * _size;
    for (Letter e1 = 0; e1 < _size; ++e1) {
      for (Letter e2 = 0; e2 < _size; ++e2) {
        Letter x = e1, y = e2;
        for (std::size_t step = 0; step <= bound; ++step) {
          if (x == y) {
            _legal[e1 * _size + e2] = false;
            break;
          }
          x = _derivative[x];
          y = _derivative[y];
        }
      }
    }
  }

  bool TurnTable::is_turn(Letter e1, Letter e2) const {
    return e1 != e2 && _graph->initial(e1) == _graph->initial(e2);
  }

  bool TurnTable::legal(Letter e1, Letter e2) const {
    return _legal.at(e1 * _size + e2);
  }

  std::vector<TurnTable::Entry> TurnTable::entries() const {
    std::vector<Entry> out;
    for (std::size_t v = 0; v < _graph->vertex_count(); ++v) {
      for (Letter e1 = 0; e1 < _size; ++e1) {
        for (Letter e2 = e1 + 1; e2 < _size; ++e2) {
          if (_graph->initial(e1) == v && is_turn(e1, e2)) {
            out.push_back({v, e1, e2, legal(e1, e2)});
          }
        }
      }
    }
    return out;
  }

  bool is_k_legal(StratifiedGraphMap const& f,
                  TurnTable const&          turns,
                  std::span<Letter const>   alpha,
                  unsigned                  k) {
    for (Letter e : alpha) {
      if (f.height(e) > k) {
        return false;
      }
    }
    for (std::size_t i = 1; i < alpha.size(); ++i) {
      if (f.height(alpha[i - 1]) == k && f.height(alpha[i]) == k
          && !turns.legal(inverse(alpha[i - 1]), alpha[i])) {
        return false;
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Train-track conditions
  ////////////////////////////////////////////////////////////////////////

  namespace {
    // [begin, end) ranges of maximal runs of letters below height k.
    std::vector<std::pair<std::size_t, std::size_t>>
    yellow_ranges(StratifiedGraphMap const& f, std::span<Letter const> w, unsigned k) {
      std::vector<std::pair<std::size_t, std::size_t>> out;
      std::size_t                                      i = 0;
      while (i < w.size()) {
        if (f.height(w[i]) >= k) {
          ++i;
          continue;
        }
        auto j = i;
        while (j < w.size() && f.height(w[j]) < k) {
          ++j;
        }
        out.emplace_back(i, j);
        i = j;
      }
      return out;
    }
  }  // namespace

  RttReport check_rtt(StratifiedGraphMap const& f, std::size_t depth) {
    RttReport   report;
    auto const& edges  = f.graph().edges();
    auto const  strata = classify_strata(f);
    TurnTable   turns(f);
    auto        failure = [&](std::string what) {
      report.passed = false;
      report.failures.push_back(std::move(what));
    };

    for (auto const& s : strata) {
      if (s.kind != StratumKind::exponential) {
        continue;
      }
      auto const k  = s.height;
      auto const hk = std::to_string(k);

      // Vertices of H_k that also meet G_(k-1).
      std::vector<bool> red_vertex(f.graph().vertex_count()),
          lower_vertex(f.graph().vertex_count());
      for (Letter e = 0; e < edges.size(); ++e) {
        auto v = f.graph().initial(e);
        if (f.height(e) == k) {
          red_vertex[v] = true;
        } else if (f.height(e) < k) {
          lower_vertex[v] = true;
        }
      }
      auto in_intersection = [&](std::size_t v) { return red_vertex[v] && lower_vertex[v]; };

      std::size_t oriented = 0;
      for (Letter e0 : s.edges) {
        for (Letter e : {e0, inverse(e0)}) {
          ++oriented;
          auto d = turns.derivative(e);
          if (f.height(d) != k) {
            failure("RTT-i: D f(" + edges.letter_name(e) + ") = " + edges.letter_name(d)
                    + " has height " + std::to_string(f.height(d)));
          }
        }
      }
      report.checked.push_back("RTT-i on stratum " + hk + ": Df maps its "
                               + std::to_string(oriented) + " oriented edges into it");

      std::size_t connecting = 0;
      for (Letter e0 : s.edges) {
        for (Letter e : {e0, inverse(e0)}) {
          Word w{e};
          for (std::size_t p = 1; p <= depth; ++p) {
            w = f_sharp(f, w, 1);
            if (!is_k_legal(f, turns, w, k)) {
              failure("RTT-iii: f_#^" + std::to_string(p) + "(" + edges.letter_name(e)
                      + ") = " + edges.format(w) + " is not " + hk + "-legal");
            }
            for (auto [b, t] : yellow_ranges(f, w, k)) {
              std::span<Letter const> beta(w.data() + b, t - b);
              auto from = f.graph().initial(beta.front());
              auto to   = f.graph().terminal(beta.back());
              if (!in_intersection(from) || !in_intersection(to)) {
                continue;
              }
              ++connecting;
              auto image = f_sharp(f, beta, 1);
              if (image.empty()) {
                failure("RTT-ii: f_#(" + edges.format(beta) + ") is trivial");
              } else if (!in_intersection(f.graph().initial(image.front()))
                         || !in_intersection(f.graph().terminal(image.back()))) {
                failure("RTT-ii: f_#(" + edges.format(beta) + ") = " + edges.format(image)
                        + " leaves the vertices of H_" + hk + " in G_" + std::to_string(k - 1));
              }
            }
          }
        }
      }
      report.checked.push_back("RTT-iii on stratum " + hk + ": f_#^p(e) is " + hk
                               + "-legal for every edge e of the stratum and p <= "
                               + std::to_string(depth));
      report.checked.push_back("RTT-ii on stratum " + hk + ": " + std::to_string(connecting)
                               + " connecting paths in G_" + std::to_string(k - 1)
                               + " found in those iterates");
    }
    if (report.checked.empty()) {
      report.checked.push_back("no exponential stratum; conditions hold vacuously");
    }
    // Reported, not required: a power of f may be needed to fix the vertices.
    std::size_t fixed = 0;
    for (std::size_t v = 0; v < f.graph().vertex_count(); ++v) {
      fixed += f.vertex_image(v) == v ? 1 : 0;
    }
    report.checked.push_back("vertex map fixes " + std::to_string(fixed) + " of "
                             + std::to_string(f.graph().vertex_count()) + " vertices");
    return report;
  }

  ////////////////////////////////////////////////////////////////////////
  // Yellow and red
  ////////////////////////////////////////////////////////////////////////

  std::vector<Piece> yellow_red_split(StratifiedGraphMap const& f,
                                      std::span<Letter const>   alpha,
                                      unsigned                  k) {
    TurnTable turns(f);
    if (!is_k_legal(f, turns, alpha, k)) {
      fail(ErrorKind::precondition, "path is not " + std::to_string(k) + "-legal");
    }
    std::vector<Piece> pieces;
    for (Letter e : alpha) {
      auto c = f.height(e) == k ? Color::red : Color::yellow;
      if (pieces.empty() || pieces.back().color != c) {
        pieces.push_back({c, {}});
      }
      pieces.back().path.push_back(e);
    }
    return pieces;
  }

  Alphabet red_alphabet(StratifiedGraphMap const& f, unsigned k) {
    std::vector<std::string> names;
    for (Letter e : f.stratum_edges(k)) {
      names.push_back(f.graph().edges().name(pair_index(e)));
    }
    return Alphabet(std::move(names));
  }

  Word red_projection(StratifiedGraphMap const& f, std::span<Letter const> alpha, unsigned k) {
    std::vector<Letter> index(f.graph().edges().rank(), 0);
    Letter              next = 0;
    for (Letter e : f.stratum_edges(k)) {
      index[pair_index(e)] = positive_letter(next++);
    }
    Word out;
    for (Letter e : alpha) {
      if (f.height(e) == k) {
        out.push_back(is_positive(e) ? index[pair_index(e)] : inverse(index[pair_index(e)]));
      }
    }
    return out;
  }

  unsigned single_exponential_height(StratifiedGraphMap const& f) {
    std::vector<unsigned> exponential;
    for (auto const& s : classify_strata(f)) {
      if (s.kind == StratumKind::exponential) {
        exponential.push_back(s.height);
      }
    }
    if (exponential.size() != 1) {
      fail(ErrorKind::precondition,
           "expected exactly one exponential stratum, found "
               + std::to_string(exponential.size()));
    }
    if (exponential[0] != f.top_height()) {
      fail(ErrorKind::precondition, "the exponential stratum is not the top stratum");
    }
    return exponential[0];
  }

  Substitution induced_substitution(StratifiedGraphMap const& f) {
    auto const        k = single_exponential_height(f);
    std::vector<Word> images;
    for (Letter e : f.stratum_edges(k)) {
      images.push_back(red_projection(f, f.image(e), k));
    }
    return Substitution::flip_extended(red_alphabet(f, k), std::move(images));
  }

  RedCommutation::RedCommutation(StratifiedGraphMap const& f)
      : _f(&f),
        _k(single_exponential_height(f)),
        _turns(f),
        _sigma(induced_substitution(f)) {}

  bool RedCommutation::red_legal(std::span<Letter const> alpha) const {
    return _f->graph().is_path(alpha) && is_reduced(alpha) && is_k_legal(*_f, _turns, alpha, _k);
  }

  std::optional<std::size_t> RedCommutation::first_failure(std::span<Letter const> alpha,
                                                           std::size_t max_p) const {
    if (!red_legal(alpha)) {
      fail(ErrorKind::precondition, "path is not red-legal");
    }
    Word path(alpha.begin(), alpha.end());
    auto red = red_projection(*_f, alpha, _k);
    for (std::size_t p = 0;; ++p) {
      if (red_projection(*_f, path, _k) != red) {
        return p;
      }
      if (p == max_p) {
        return std::nullopt;
      }
      path = f_sharp(*_f, path, 1);
      red  = _sigma.apply(red);
    }
  }

  bool RedCommutation::check(std::span<Letter const> alpha, std::size_t p) const {
    if (!red_legal(alpha)) {
      fail(ErrorKind::precondition, "path is not red-legal");
    }
    auto lhs = red_projection(*_f, f_sharp(*_f, alpha, p), _k);
    auto rhs = iterate(_sigma, red_projection(*_f, alpha, _k), p);
    return lhs == rhs;
  }

  bool red_commutation_check(StratifiedGraphMap const& f,
                             std::span<Letter const>   alpha,
                             std::size_t               p) {
    return RedCommutation(f).check(alpha, p);
  }

  YellowLoopAudit yellow_loop_audit(StratifiedGraphMap const& f, Letter e, std::size_t depth) {
    auto const k = single_exponential_height(f);
    if (f.height(e) != k) {
      fail(ErrorKind::precondition, "yellow_loop_audit needs a red edge");
    }
    YellowLoopAudit audit;
    Word            w{e};
    for (std::size_t p = 0; p <= depth; ++p) {
      if (p > 0) {
        w = f_sharp(f, w, 1);
      }
      for (auto [b, t] : yellow_ranges(f, w, k)) {
        Word piece(w.begin() + static_cast<std::ptrdiff_t>(b),
                   w.begin() + static_cast<std::ptrdiff_t>(t));
        bool loop = f.graph().is_loop(piece);
        audit.passed = audit.passed && !loop;
        audit.subpaths.push_back({p, b, std::move(piece), loop});
      }
    }
    return audit;
  }

  double pf_length(StratifiedGraphMap const& f, std::span<Letter const> alpha) {
    auto const strata = classify_strata(f);
    auto const& top   = strata.back();
    if (top.kind != StratumKind::exponential || !top.edge_lengths) {
      fail(ErrorKind::precondition, "top stratum has no PF eigendata");
    }
    std::vector<double> weight(f.graph().edges().rank(), 0.0);
    for (std::size_t i = 0; i < top.edges.size(); ++i) {
      weight[pair_index(top.edges[i])] = (*top.edge_lengths)[i];
    }
    double total = 0;
    for (Letter e : alpha) {
      total += weight[pair_index(e)];
    }
    return total;
  }

  Growth growth_classify(StratifiedGraphMap const& f) {
    auto rtt = check_rtt(f);
    if (!rtt.passed) {
      fail(ErrorKind::precondition, "not a relative train track: " + rtt.failures.front());
    }
    bool exponential = false;
    for (auto const& s : classify_strata(f)) {
      if (s.kind == StratumKind::requires_refinement) {
        fail(ErrorKind::precondition,
             "growth is indeterminate: stratum " + std::to_string(s.height)
                 + " is reducible; refine the filtration");
      }
      exponential = exponential || s.kind == StratumKind::exponential;
    }
    return exponential ? Growth::exponential : Growth::polynomial;
  }

  IntMatrix homology_matrix(StratifiedGraphMap const& f) {
    auto const& g = f.graph();
    auto const  n = g.vertex_count();
    // Breadth-first spanning tree from vertex 0; tree_path[v] runs 0 -> v.
    std::vector<std::optional<Word>> tree_path(n);
    std::vector<bool>                tree_edge(g.edge_count());
    tree_path[0] = Word{};
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      for (Letter e = 0; e < g.edges().size(); ++e) {
        if (g.initial(e) != v || tree_path[g.terminal(e)]) {
          continue;
        }
        auto w = *tree_path[v];
        w.push_back(e);
        tree_path[g.terminal(e)] = std::move(w);
        tree_edge[pair_index(e)] = true;
        queue.push_back(g.terminal(e));
      }
    }
    if (std::any_of(tree_path.begin(), tree_path.end(), [](auto const& p) { return !p; })) {
      fail(ErrorKind::precondition, "graph is not connected");
    }
    std::vector<std::size_t> basis_index(g.edge_count(), g.edge_count());
    std::vector<Letter>      basis;
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
      if (!tree_edge[i]) {
        basis_index[i] = basis.size();
        basis.push_back(positive_letter(i));
      }
    }
    IntMatrix m(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
      auto e    = basis[j];
      Word loop = *tree_path[g.initial(e)];
      loop.push_back(e);
      auto back = flip(*tree_path[g.terminal(e)]);
      loop.insert(loop.end(), back.begin(), back.end());
      for (Letter x : f.apply(loop)) {
        auto i = basis_index[pair_index(x)];
        if (i < basis.size()) {
          m(i, j) += is_positive(x) ? 1 : -1;
        }
      }
    }
    return m;
  }

}  // namespace trackpow
