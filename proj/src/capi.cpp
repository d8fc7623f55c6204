#include "trackpow/trackpow.h"

#include <atomic>
#include <new>
#include <string>

#include "trackpow/commands.hpp"
#include "trackpow/error.hpp"
#include "trackpow/session.hpp"

struct tp_session {
  trackpow::Session        session;
  std::vector<std::string> warnings;
};

struct tp_report {
  trackpow::Report report;
};

namespace {

  thread_local std::string last_error;
  std::atomic<std::size_t> length_cap{trackpow::default_length_cap};

  tp_status status_of(trackpow::ErrorKind kind) {
    using trackpow::ErrorKind;
    switch (kind) {
      case ErrorKind::parse:
        return TP_ERR_PARSE;
      case ErrorKind::precondition:
        return TP_ERR_PRECONDITION;
      case ErrorKind::not_found:
        return TP_ERR_NOT_FOUND;
      case ErrorKind::limit:
        return TP_ERR_LIMIT;
      case ErrorKind::convergence:
        return TP_ERR_CONVERGENCE;
      case ErrorKind::mismatch:
        return TP_ERR_MISMATCH;
    }
    return TP_ERR_INTERNAL;
  }

  tp_status set_error(tp_status status, std::string message) {
    last_error = std::move(message);
    return status;
  }

  // Runs f, translating exceptions into status codes.
  template <typename F>
  tp_status guarded(F&& f) {
    try {
      f();
      return TP_OK;
    } catch (trackpow::Error const& e) {
      return set_error(status_of(e.kind()), e.what());
    } catch (std::bad_alloc const&) {
      return set_error(TP_ERR_INTERNAL, "out of memory");
    } catch (std::exception const& e) {
      return set_error(TP_ERR_INTERNAL, e.what());
    }
  }

  template <typename F>
  tp_status make_report(tp_report** out, F&& f) {
    if (!out) {
      return set_error(TP_ERR_NULL_ARGUMENT, "output pointer is NULL");
    }
    *out = nullptr;
    return guarded([&] { *out = new tp_report{f()}; });
  }

  trackpow::CommandOptions options() {
    return {length_cap.load()};
  }

  template <typename... P>
  bool any_null(P const*... p) {
    return ((p == nullptr) || ...);
  }

}  // namespace

#define TP_REQUIRE(...)                                                        \
  do {                                                                         \
    if (any_null(__VA_ARGS__)) {                                               \
      return set_error(TP_ERR_NULL_ARGUMENT, "required argument is NULL");     \
    }                                                                          \
  } while (0)

extern "C" {

char const* tp_version(void) {
  return "0.1.0";
}

char const* tp_status_string(tp_status status) {
  switch (status) {
    case TP_OK:
      return "ok";
    case TP_ERR_PARSE:
      return "parse error";
    case TP_ERR_PRECONDITION:
      return "precondition violated";
    case TP_ERR_NOT_FOUND:
      return "not found";
    case TP_ERR_LIMIT:
      return "limit exceeded";
    case TP_ERR_CONVERGENCE:
      return "no convergence";
    case TP_ERR_MISMATCH:
      return "mismatch";
    case TP_ERR_NULL_ARGUMENT:
      return "null argument";
    case TP_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

char const* tp_last_error(void) {
  return last_error.c_str();
}

void tp_set_length_cap(size_t cap) {
  length_cap = cap == 0 ? trackpow::default_length_cap : cap;
}

size_t tp_length_cap(void) {
  return length_cap.load();
}

tp_status tp_session_load(char const* path, tp_session** out) {
  TP_REQUIRE(path, out);
  *out = nullptr;
  return guarded([&] {
    auto s = trackpow::Session::load(path);
    *out   = new tp_session{std::move(s), {}};
    for (auto const& w : (*out)->session.warnings()) {
      (*out)->warnings.push_back(to_string(w.where) + ": " + w.message);
    }
  });
}

tp_status tp_session_parse(char const* text, char const* source_name, tp_session** out) {
  TP_REQUIRE(text, out);
  *out = nullptr;
  return guarded([&] {
    auto s = trackpow::Session::parse(text, source_name ? source_name : "<input>");
    *out   = new tp_session{std::move(s), {}};
    for (auto const& w : (*out)->session.warnings()) {
      (*out)->warnings.push_back(to_string(w.where) + ": " + w.message);
    }
  });
}

void tp_session_free(tp_session* session) {
  delete session;
}

size_t tp_session_warning_count(tp_session const* session) {
  return session ? session->warnings.size() : 0;
}

char const* tp_session_warning(tp_session const* session, size_t index) {
  if (!session || index >= session->warnings.size()) {
    return nullptr;
  }
  return session->warnings[index].c_str();
}

char const* tp_report_text(tp_report const* report) {
  return report ? report->report.text.c_str() : "";
}

char const* tp_report_json(tp_report const* report) {
  return report ? report->report.json.c_str() : "";
}

char const* tp_report_trace(tp_report const* report) {
  return report ? report->report.trace.c_str() : "";
}

int tp_report_outcome(tp_report const* report) {
  return report ? static_cast<int>(report->report.outcome) : 1;
}

void tp_report_free(tp_report* report) {
  delete report;
}

tp_status tp_dump(tp_session const* s, tp_report** out) {
  TP_REQUIRE(s);
  return make_report(out, [&] { return trackpow::cmd_dump(s->session); });
}

tp_status tp_classify(tp_session const* s, char const* name, tp_report** out) {
  TP_REQUIRE(s, name);
  return make_report(out, [&] { return trackpow::cmd_classify(s->session, name, options()); });
}

tp_status tp_orbit(tp_session const* s, char const* name, char const* word, size_t depth,
                   tp_report** out) {
  TP_REQUIRE(s, name, word);
  return make_report(
      out, [&] { return trackpow::cmd_orbit(s->session, name, word, depth, options()); });
}

tp_status tp_power_index(tp_session const* s, char const* name, char const* seed, size_t depth,
                         tp_report** out) {
  TP_REQUIRE(s, name, seed);
  return make_report(
      out, [&] { return trackpow::cmd_power_index(s->session, name, seed, depth, options()); });
}

tp_status tp_pf(tp_session const* s, char const* name, tp_report** out) {
  TP_REQUIRE(s, name);
  return make_report(out, [&] { return trackpow::cmd_pf(s->session, name); });
}

tp_status tp_period(tp_session const* s, char const* name, char const* letter, size_t bound,
                    tp_report** out) {
  TP_REQUIRE(s, name, letter);
  return make_report(
      out, [&] { return trackpow::cmd_period(s->session, name, letter, bound, options()); });
}

tp_status tp_red(tp_session const* s, char const* name, char const* word, size_t depth,
                 tp_report** out) {
  TP_REQUIRE(s, name, word);
  return make_report(
      out, [&] { return trackpow::cmd_red(s->session, name, word, depth, options()); });
}

tp_status tp_audit_yellow(tp_session const* s, char const* name, char const* edge, size_t depth,
                          tp_report** out) {
  TP_REQUIRE(s, name, edge);
  return make_report(
      out, [&] { return trackpow::cmd_audit_yellow(s->session, name, edge, depth); });
}

tp_status tp_moves(char const* word, long n, char const* xi, size_t min_exponent,
                   char const* join, size_t budget, size_t rank, tp_report** out) {
  TP_REQUIRE(word, xi);
  return make_report(out, [&] {
    trackpow::MovesQuery q;
    q.word = word;
    q.n    = n;
    q.xi   = xi;
    if (min_exponent) {
      q.min_exponent = min_exponent;
    }
    if (join) {
      q.join = join;
    }
    q.budget = budget;
    q.rank   = rank;
    return trackpow::cmd_moves(q);
  });
}

tp_status tp_burnside_order(tp_session const* s, char const* name, size_t rank, unsigned exponent,
                            size_t max_k, tp_report** out) {
  TP_REQUIRE(s, name);
  return make_report(out, [&] {
    return trackpow::cmd_burnside_order(s->session, name, rank, exponent, max_k);
  });
}

tp_status tp_todd_coxeter(char const* relators_text, size_t rank, int csv, size_t max_cosets,
                          tp_report** out) {
  TP_REQUIRE(relators_text);
  return make_report(out, [&] {
    return trackpow::cmd_todd_coxeter(relators_text, rank, csv != 0, max_cosets);
  });
}

}  // extern "C"
