#ifndef TRACKPOW_COMMANDS_HPP_
#define TRACKPOW_COMMANDS_HPP_

// Queries over session objects, each producing a text report and an
// equivalent JSON object. These back both the C API and the CLI.

#include <cstddef>
#include <optional>
#include <string>

#include "trackpow/session.hpp"

namespace trackpow {

  enum class Outcome { definite = 0, error = 1, undecided = 2 };

  struct Report {
    std::string text;   // newline-terminated lines
    std::string json;   // one JSON object, no trailing newline
    std::string trace;  // verbose-only diagnostics
    Outcome     outcome = Outcome::definite;
  };

  struct CommandOptions {
    std::size_t length_cap = default_length_cap;
  };

  Report cmd_dump(Session const& s);

  Report cmd_classify(Session const& s, std::string const& name, CommandOptions const& opts = {});

  Report cmd_orbit(Session const&        s,
                   std::string const&    name,
                   std::string const&    word,
                   std::size_t           depth,
                   CommandOptions const& opts = {});

  Report cmd_power_index(Session const&        s,
                         std::string const&    name,
                         std::string const&    seed,
                         std::size_t           depth,
                         CommandOptions const& opts = {});

  Report cmd_pf(Session const& s, std::string const& name);

  Report cmd_period(Session const&        s,
                    std::string const&    name,
                    std::string const&    letter,
                    std::size_t           bound,
                    CommandOptions const& opts = {});

  Report cmd_red(Session const&        s,
                 std::string const&    name,
                 std::string const&    word,
                 std::size_t           depth,
                 CommandOptions const& opts = {});

  Report cmd_audit_yellow(Session const&     s,
                          std::string const& name,
                          std::string const& edge,
                          std::size_t        depth);

  struct MovesQuery {
    std::string                word;
    long                       n  = 3;
    std::string                xi = "0";
    std::optional<std::size_t> min_exponent;  // overrides the threshold
    std::optional<std::string> join;
    std::size_t                budget = 200'000;
    std::size_t                rank   = 26;  // words over a, b, ... of this rank
  };

  Report cmd_moves(MovesQuery const& q);

  Report cmd_burnside_order(Session const&     s,
                            std::string const& name,
                            std::size_t        rank,
                            unsigned           exponent,
                            std::size_t        max_k = 100'000);

  // One relator per line over a, b, ... (rank letters); '#' comments.
  Report cmd_todd_coxeter(std::string const& relators_text,
                          std::size_t        rank,
                          bool               csv,
                          std::size_t        max_cosets = std::size_t(1) << 22);

}  // namespace trackpow

#endif  // TRACKPOW_COMMANDS_HPP_
