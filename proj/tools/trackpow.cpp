// trackpow command-line driver. Results go to stdout, diagnostics to stderr.
// Exit status: 0 definite answer, 2 undecided or bound exceeded, 1 error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "trackpow/trackpow.h"

namespace {

  struct Globals {
    std::string session_path;
    bool        json    = false;
    bool        verbose = false;
  };

  int report_error(tp_status status) {
    std::cerr << "trackpow: " << tp_status_string(status) << ": " << tp_last_error() << '\n';
    return 1;
  }

  // Loads the session named by --session, printing its warnings.
  tp_session* open_session(Globals const& g) {
    if (g.session_path.empty()) {
      std::cerr << "trackpow: this command needs --session FILE\n";
      return nullptr;
    }
    tp_session* s      = nullptr;
    auto        status = tp_session_load(g.session_path.c_str(), &s);
    if (status != TP_OK) {
      report_error(status);
      return nullptr;
    }
    for (size_t i = 0; i < tp_session_warning_count(s); ++i) {
      std::cerr << "warning: " << tp_session_warning(s, i) << '\n';
    }
    return s;
  }

  int emit(Globals const& g, tp_status status, tp_report* r) {
    if (status != TP_OK) {
      return report_error(status);
    }
    if (g.json) {
      std::cout << tp_report_json(r) << '\n';
    } else {
      std::cout << tp_report_text(r);
    }
    if (g.verbose && *tp_report_trace(r)) {
      std::cerr << tp_report_trace(r);
    }
    int outcome = tp_report_outcome(r);
    tp_report_free(r);
    return outcome;
  }

  // Runs f(session, &report) with a freshly loaded session.
  template <typename F>
  int with_session(Globals const& g, F&& f) {
    tp_session* s = open_session(g);
    if (!s) {
      return 1;
    }
    tp_report* r      = nullptr;
    auto       status = f(s, &r);
    int        code   = emit(g, status, r);
    tp_session_free(s);
    return code;
  }

  bool read_file(std::string const& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      return false;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    out = buf.str();
    return true;
  }

}  // namespace

int main(int argc, char** argv) {
  if (char const* cap = std::getenv("TRACKPOW_LENGTH_CAP")) {
    char* end = nullptr;
    auto  v   = std::strtoull(cap, &end, 10);
    if (end == cap || *end != '\0') {
      std::cerr << "trackpow: ignoring malformed TRACKPOW_LENGTH_CAP='" << cap << "'\n";
    } else {
      tp_set_length_cap(static_cast<size_t>(v));
    }
  }

  CLI::App app{"Substitutions, train-track maps and Burnside quotients"};
  app.set_version_flag("--version", tp_version());
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--session", g.session_path, "Session file defining named objects");
  app.add_flag("--json", g.json, "Print one JSON object instead of text");
  app.add_flag("--verbose", g.verbose, "Print search traces to stderr");

  int code = 1;

  std::string name, word, word2, xi = "0", relators_path;
  size_t      depth = 0, bound = 64, budget = 200'000, rank = 2, max_k = 100'000;
  size_t      min_exponent = 0, max_cosets = size_t(1) << 22;
  long        n        = 3;
  unsigned    exponent = 3;
  bool        csv      = false;

  auto* dump = app.add_subcommand("dump", "Print the session in canonical form");
  dump->callback([&] { code = with_session(g, [&](auto s, auto r) { return tp_dump(s, r); }); });

  auto* classify = app.add_subcommand("classify", "Growth verdict and strata of a map");
  classify->add_option("name", name, "autom or graphmap")->required();
  classify->callback([&] {
    code = with_session(g, [&](auto s, auto r) { return tp_classify(s, name.c_str(), r); });
  });

  auto* orbit = app.add_subcommand("orbit", "Iterates of a word under a map");
  orbit->add_option("map", name)->required();
  orbit->add_option("word", word)->required();
  orbit->add_option("--depth", depth, "Number of iterates")->required();
  orbit->callback([&] {
    code = with_session(
        g, [&](auto s, auto r) { return tp_orbit(s, name.c_str(), word.c_str(), depth, r); });
  });

  auto* pidx = app.add_subcommand("power-index", "Largest power in each iterate");
  pidx->add_option("map", name)->required();
  pidx->add_option("seed", word)->required();
  pidx->add_option("--depth", depth)->required();
  pidx->callback([&] {
    code = with_session(g, [&](auto s, auto r) {
      return tp_power_index(s, name.c_str(), word.c_str(), depth, r);
    });
  });

  auto* pf = app.add_subcommand("pf", "Perron-Frobenius data of a substitution or graph map");
  pf->add_option("name", name)->required();
  pf->callback(
      [&] { code = with_session(g, [&](auto s, auto r) { return tp_pf(s, name.c_str(), r); }); });

  auto* period = app.add_subcommand("period", "Shift-periodicity of a fixed point");
  period->add_option("subst", name)->required();
  period->add_option("letter", word)->required();
  period->add_option("--bound", bound, "Longest period tried")->capture_default_str();
  period->callback([&] {
    code = with_session(
        g, [&](auto s, auto r) { return tp_period(s, name.c_str(), word.c_str(), bound, r); });
  });

  auto* red = app.add_subcommand("red", "Red projection against the induced substitution");
  red->add_option("graphmap", name)->required();
  red->add_option("word", word)->required();
  red->add_option("--depth", depth)->required();
  red->callback([&] {
    code = with_session(
        g, [&](auto s, auto r) { return tp_red(s, name.c_str(), word.c_str(), depth, r); });
  });

  auto* audit = app.add_subcommand("audit-yellow", "Look for yellow loops in edge iterates");
  audit->add_option("graphmap", name)->required();
  audit->add_option("edge", word)->required();
  audit->add_option("--depth", depth)->required();
  audit->callback([&] {
    code = with_session(g, [&](auto s, auto r) {
      return tp_audit_yellow(s, name.c_str(), word.c_str(), depth, r);
    });
  });

  auto* moves = app.add_subcommand("moves", "Elementary moves, or a common descendant search");
  moves->add_option("word", word)->required();
  moves->add_option("--n", n, "Exponent")->required();
  moves->add_option("--xi", xi, "Slack: 1, 0.5 or 3/2")->capture_default_str();
  moves->add_option("--min-exponent", min_exponent, "Override the exponent threshold");
  auto* join_opt = moves->add_option("--join", word2, "Second word for the search");
  moves->add_option("--budget", budget, "Maximum number of words explored")
      ->capture_default_str();
  moves->add_option("--rank", rank, "Words use the first RANK letters a, b, ...")
      ->capture_default_str();
  moves->callback([&] {
    tp_report* r      = nullptr;
    auto       status = tp_moves(word.c_str(), n, xi.c_str(), min_exponent,
                                 join_opt->count() ? word2.c_str() : nullptr, budget, rank, &r);
    code              = emit(g, status, r);
  });

  auto* border = app.add_subcommand("burnside-order", "Order of an automorphism on B(r,n)");
  border->add_option("autom", name)->required();
  border->add_option("--rank", rank)->required();
  border->add_option("--exp", exponent)->required()->check(CLI::IsMember({2u, 3u}));
  border->add_option("--max-k", max_k, "Largest order tried")->capture_default_str();
  border->callback([&] {
    code = with_session(g, [&](auto s, auto r) {
      return tp_burnside_order(s, name.c_str(), rank, exponent, max_k, r);
    });
  });

  auto* tc = app.add_subcommand("tc", "Todd-Coxeter enumeration of a finite presentation");
  tc->add_option("--rank", rank)->required();
  tc->add_option("--relators", relators_path, "File with one relator per line")->required();
  tc->add_flag("--csv", csv, "Print the coset table as CSV");
  tc->add_option("--max-cosets", max_cosets)->capture_default_str();
  tc->callback([&] {
    std::string text;
    if (!read_file(relators_path, text)) {
      std::cerr << "trackpow: cannot read relators file '" << relators_path << "'\n";
      code = 1;
      return;
    }
    tp_report* r      = nullptr;
    auto       status = tp_todd_coxeter(text.c_str(), rank, csv ? 1 : 0, max_cosets, &r);
    code              = emit(g, status, r);
  });

  try {
    app.parse(argc, argv);
  } catch (CLI::Success const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return 1;
  }
  return code;
}
