#ifndef TRACKPOW_SESSION_HPP_
#define TRACKPOW_SESSION_HPP_

// Session files: named alphabets, substitutions, basis maps and graph maps in
// a line-oriented text format. The grammar is documented in
// docs/session-format.md.

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "trackpow/automorphisms.hpp"
#include "trackpow/graphmap.hpp"
#include "trackpow/substitutions.hpp"
#include "trackpow/words.hpp"

namespace trackpow {

  struct SourceLocation {
    std::string source;
    std::size_t line   = 0;
    std::size_t column = 0;
  };

  std::string to_string(SourceLocation const& loc);

  struct Diagnostic {
    SourceLocation where;
    std::string    message;
  };

  enum class ObjectKind { alphabet, substitution, automorphism, graph_map };

  char const* to_string(ObjectKind k) noexcept;

  class Session {
   public:
    // Throws parse (syntax, duplicate names) or not_found (undefined
    // references); the message starts with "source:line:column:".
    static Session parse(std::string_view text, std::string source = "<input>");
    static Session load(std::filesystem::path const& path);

    std::vector<Diagnostic> const& warnings() const noexcept {
      return _warnings;
    }

    // Names in definition order.
    std::vector<std::string> const& names() const noexcept {
      return _order;
    }

    bool        contains(std::string const& name) const;
    ObjectKind  kind(std::string const& name) const;

    Alphabet const&           alphabet(std::string const& name) const;
    Substitution const&       substitution(std::string const& name) const;
    BasisMap const&           automorphism(std::string const& name) const;
    StratifiedGraphMap const& graph_map(std::string const& name) const;

    // Canonical text: comments dropped, one blank line between sections.
    std::string dump() const;

    void add(std::string const& name, Alphabet a);
    void add(std::string const& name, Substitution s);
    void add(std::string const& name, BasisMap phi);
    void add(std::string const& name, StratifiedGraphMap f);

   private:
    using Object = std::variant<Alphabet, Substitution, BasisMap, StratifiedGraphMap>;

    template <typename T>
    T const& get(std::string const& name, ObjectKind k) const;

    void insert(std::string const& name, Object obj);

    std::map<std::string, Object>              _objects;
    std::vector<std::string>                   _order;
    std::map<std::string, std::string>         _alphabet_of;  // map name -> alphabet name
    std::map<std::string, std::size_t>         _rank_of;      // map name -> "rank N"
    std::vector<Diagnostic>                    _warnings;
  };

}  // namespace trackpow

#endif  // TRACKPOW_SESSION_HPP_
