#ifndef TRACKPOW_GRAPHMAP_HPP_
#define TRACKPOW_GRAPHMAP_HPP_

// Stratified topological representatives: a finite graph, a filtration given
// by edge heights, and a graph map sending vertices to vertices and edges to
// tight edge paths. Relative train-track maps are supplied by the caller and
// validated here, never constructed.
//
// Oriented edges are the letters of an Alphabet of edge names, so an edge
// path is a Word and tightening a path is free reduction of its label.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "trackpow/automorphisms.hpp"
#include "trackpow/matrices.hpp"
#include "trackpow/substitutions.hpp"
#include "trackpow/words.hpp"

namespace trackpow {

  struct EdgeSpec {
    std::string name;
    std::size_t from;
    std::size_t to;
  };

  class Graph {
   public:
    Graph() = default;
    Graph(std::vector<std::string> vertices, std::vector<EdgeSpec> edges);

    std::size_t vertex_count() const noexcept {
      return _vertices.size();
    }

    std::string const& vertex_name(std::size_t v) const {
      return _vertices.at(v);
    }

    std::optional<std::size_t> find_vertex(std::string_view name) const;

    Alphabet const& edges() const noexcept {
      return _edges;
    }

    std::size_t edge_count() const noexcept {
      return _edges.rank();
    }

    std::size_t initial(Letter e) const;
    std::size_t terminal(Letter e) const;

    // Consecutive edges compose; says nothing about tightness.
    bool is_path(std::span<Letter const> w) const;

    // Nonempty path whose endpoints coincide.
    bool is_loop(std::span<Letter const> w) const;

   private:
    std::vector<std::string> _vertices;
    Alphabet                 _edges;
    std::vector<std::size_t> _from, _to;  // per edge pair
  };

  class StratifiedGraphMap {
   public:
    StratifiedGraphMap() = default;

    // heights and images are indexed by edge pair; images are the paths
    // f(e) of the positive orientations. Throws precondition unless every
    // image is a nonempty tight path from f(initial e) to f(terminal e), and
    // the heights cover 1..m without gaps.
    StratifiedGraphMap(Graph                    graph,
                       std::vector<unsigned>    heights,
                       std::vector<std::size_t> vertex_map,
                       std::vector<Word>        images);

    // One-vertex graph with one petal per letter of `petals`.
    static StratifiedGraphMap rose(Alphabet                   petals,
                                   std::vector<unsigned>      heights,
                                   std::vector<Word> const&   images);

    Graph const& graph() const noexcept {
      return _graph;
    }

    unsigned height(Letter e) const {
      return _heights.at(pair_index(e));
    }

    std::vector<unsigned> const& heights() const noexcept {
      return _heights;
    }

    unsigned top_height() const noexcept {
      return _top;
    }

    std::size_t vertex_image(std::size_t v) const {
      return _vertex_map.at(v);
    }

    Word const& image(Letter e) const {
      return _images.at(e);
    }

    // Untightened image of an edge path.
    Word apply(std::span<Letter const> w, std::size_t cap = default_length_cap) const;

    // Positive orientations of the edges of height k, in graph order.
    std::vector<Letter> stratum_edges(unsigned k) const;

   private:
    Graph                    _graph;
    std::vector<unsigned>    _heights;
    std::vector<std::size_t> _vertex_map;
    std::vector<Word>        _images;  // indexed by letter id
    unsigned                 _top = 0;
  };

  // f_#^p(alpha): apply the edge images and tighten, p times. Throws
  // precondition if alpha is not a tight path.
  Word f_sharp(StratifiedGraphMap const& f,
               std::span<Letter const>   alpha,
               std::size_t               p,
               std::size_t               cap = default_length_cap);

  enum class StratumKind { zero, non_exponential, exponential, requires_refinement };

  char const* to_string(StratumKind k) noexcept;

  struct StratumReport {
    unsigned            height;
    StratumKind         kind;
    std::vector<Letter> edges;   // preferred (positive) orientation
    NonnegIntMatrix     matrix;  // (i, j) counts e_i or inv(e_i) in f(e_j)
    bool                aperiodic = false;
    // Exponential strata: PF data of the matrix, and the PF eigenvector of its
    // transpose, which gives edge lengths scaling by lambda under f_#.
    std::optional<PFResult>            pf;
    std::optional<std::vector<double>> edge_lengths;
    bool                               single_edge = false;
    // Non-exponential single edge with f(e) = e u: the loop u.
    std::optional<Word> loop_word;
  };

  // Throws precondition naming the first edge e whose image uses an edge of
  // height greater than height(e).
  void check_filtration(StratifiedGraphMap const& f);

  std::vector<StratumReport> classify_strata(StratifiedGraphMap const& f);

  // Legality of turns (e1, e2): pairs of distinct oriented edges with the same
  // initial vertex. A turn is illegal when iterating Df on both sides reaches
  // a degenerate pair; the pair sequence repeats within |E|^2 steps.
  class TurnTable {
   public:
    explicit TurnTable(StratifiedGraphMap const& f);

    bool is_turn(Letter e1, Letter e2) const;
    bool legal(Letter e1, Letter e2) const;

    // Df: first edge of f(e).
    Letter derivative(Letter e) const {
      return _derivative.at(e);
    }

    struct Entry {
      std::size_t vertex;
      Letter      first;
      Letter      second;
      bool        legal;
    };

    // Each unordered nondegenerate turn once, grouped by vertex.
    std::vector<Entry> entries() const;

   private:
    Graph const*        _graph;
    std::vector<Letter> _derivative;
    std::vector<bool>   _legal;  // _legal[e1 * size + e2]
    std::size_t         _size;
  };

  // alpha lies in G_k and every factor e1 e2 with both edges of height k has
  // a legal turn (inv(e1), e2).
  bool is_k_legal(StratifiedGraphMap const& f,
                  TurnTable const&          turns,
                  std::span<Letter const>   alpha,
                  unsigned                  k);

  struct RttReport {
    bool                     passed = true;
    std::vector<std::string> checked;   // what was verified, one line each
    std::vector<std::string> failures;  // witnesses
  };

  // RTT-i exactly for every exponential stratum; RTT-iii on edges (each
  // f_#^p(e) is k-legal for p <= depth); RTT-ii on the connecting paths in
  // G_(k-1) met inside those iterates.
  RttReport check_rtt(StratifiedGraphMap const& f, std::size_t depth = 3);

  struct Piece {
    Color color;
    Word  path;
  };

  // Maximal subpaths in H_k (red) or G_(k-1) (yellow). Throws precondition if
  // alpha is not k-legal.
  std::vector<Piece> yellow_red_split(StratifiedGraphMap const& f,
                                      std::span<Letter const>   alpha,
                                      unsigned                  k);

  // Alphabet of the height-k edges, in graph order.
  Alphabet red_alphabet(StratifiedGraphMap const& f, unsigned k);

  // Label of alpha with every edge below height k deleted, over
  // red_alphabet(f, k). Not reduced in general.
  Word red_projection(StratifiedGraphMap const& f, std::span<Letter const> alpha, unsigned k);

  // Height of the unique exponential stratum; throws precondition unless
  // there is exactly one and it is the top stratum.
  unsigned single_exponential_height(StratifiedGraphMap const& f);

  // sigma(e) = Red(f(e)) on the top stratum, flip-extended.
  Substitution induced_substitution(StratifiedGraphMap const& f);

  // Red(f_#^p(alpha)) == sigma^p(Red(alpha)). Throws precondition unless
  // alpha is red-legal.
  bool red_commutation_check(StratifiedGraphMap const& f,
                             std::span<Letter const>   alpha,
                             std::size_t               p);

  // The same check with the strata, turns and sigma computed once.
  class RedCommutation {
   public:
    explicit RedCommutation(StratifiedGraphMap const& f);

    bool red_legal(std::span<Letter const> alpha) const;

    bool check(std::span<Letter const> alpha, std::size_t p) const;

    // Smallest p <= max_p where the two sides differ, if any.
    std::optional<std::size_t> first_failure(std::span<Letter const> alpha,
                                             std::size_t             max_p) const;

   private:
    StratifiedGraphMap const* _f;
    unsigned                  _k;
    TurnTable                 _turns;
    Substitution              _sigma;
  };

  struct YellowSubpath {
    std::size_t iterate;  // p
    std::size_t offset;   // position inside f_#^p(e)
    Word        path;
    bool        loop;
  };

  struct YellowLoopAudit {
    bool                       passed = true;
    std::vector<YellowSubpath> subpaths;
  };

  // Maximal yellow subpaths of f_#^p(e) for p = 0 .. depth, each flagged if
  // it closes up. Passes iff none does. On a one-vertex graph every
  // nontrivial yellow subpath is a loop, so such maps always fail.
  YellowLoopAudit yellow_loop_audit(StratifiedGraphMap const& f, Letter e, std::size_t depth);

  // Sum of the top-stratum edge lengths over the red letters of alpha;
  // yellow edges weigh 0.
  double pf_length(StratifiedGraphMap const& f, std::span<Letter const> alpha);

  // Exponential iff some stratum is exponential. Throws precondition if
  // check_rtt fails or a stratum needs refinement.
  Growth growth_classify(StratifiedGraphMap const& f);

  // Action on H_1 in the basis of non-tree edges of a breadth-first spanning
  // tree. |det| == 1 is necessary for f to be a homotopy equivalence.
  IntMatrix homology_matrix(StratifiedGraphMap const& f);

}  // namespace trackpow

#endif  // TRACKPOW_GRAPHMAP_HPP_
