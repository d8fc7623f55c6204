#include <doctest.h>

#include <string>

#include "trackpow/trackpow.h"

extern "C" int trackpow_c_smoke(char const* session_path);

namespace {
  std::string const fib_text =
      "autom fib\n"
      "a -> ab\n"
      "b -> a\n"
      "subst fibsub\n"
      "a -> ab\n"
      "b -> a\n";

  struct SessionHandle {
    tp_session* s = nullptr;
    ~SessionHandle() {
      tp_session_free(s);
    }
  };

  struct ReportHandle {
    tp_report* r = nullptr;
    ~ReportHandle() {
      tp_report_free(r);
    }
  };
}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::string(tp_version()) == "0.1.0");
  CHECK(std::string(tp_status_string(TP_OK)) == "ok");
  CHECK(std::string(tp_status_string(TP_ERR_PARSE)) == "parse error");
  CHECK(std::string(tp_status_string(TP_ERR_NULL_ARGUMENT)) == "null argument");
}

TEST_CASE("parse, run and free") {
  SessionHandle h;
  REQUIRE(tp_session_parse(fib_text.c_str(), "fib", &h.s) == TP_OK);
  CHECK(tp_session_warning_count(h.s) == 0);
  CHECK(tp_session_warning(h.s, 0) == nullptr);

  ReportHandle orbit;
  REQUIRE(tp_orbit(h.s, "fib", "b", 3, &orbit.r) == TP_OK);
  CHECK(std::string(tp_report_text(orbit.r)) == "fib^1(b) = a\nfib^2(b) = ab\nfib^3(b) = aba\n");
  CHECK(std::string(tp_report_json(orbit.r)).find("\"word\": \"aba\"") != std::string::npos);
  CHECK(tp_report_outcome(orbit.r) == 0);
  CHECK(std::string(tp_report_trace(orbit.r)).empty());

  ReportHandle cls;
  REQUIRE(tp_classify(h.s, "fib", &cls.r) == TP_OK);
  CHECK(std::string(tp_report_text(cls.r)).find("exponential") != std::string::npos);

  ReportHandle dump;
  REQUIRE(tp_dump(h.s, &dump.r) == TP_OK);
  CHECK(std::string(tp_report_text(dump.r)) == "autom fib\na -> ab\nb -> a\n\nsubst fibsub\na -> ab\nb -> a\n");
}

TEST_CASE("errors become status codes") {
  tp_session* s = nullptr;
  CHECK(tp_session_parse("autom x over nowhere\na -> a\n", "bad.tps", &s) == TP_ERR_NOT_FOUND);
  CHECK(s == nullptr);
  CHECK(std::string(tp_last_error()).rfind("bad.tps:1:", 0) == 0);
  CHECK(tp_session_parse("autom x\na a\n", "bad.tps", &s) == TP_ERR_PARSE);
  CHECK(tp_session_load("/nonexistent.tps", &s) == TP_ERR_NOT_FOUND);
  CHECK(tp_session_parse(nullptr, "x", &s) == TP_ERR_NULL_ARGUMENT);

  SessionHandle h;
  REQUIRE(tp_session_parse(fib_text.c_str(), "fib", &h.s) == TP_OK);
  tp_report* r = nullptr;
  CHECK(tp_orbit(h.s, "nope", "b", 3, &r) == TP_ERR_NOT_FOUND);
  CHECK(r == nullptr);
  CHECK(tp_orbit(h.s, "fib", "b", 3, nullptr) == TP_ERR_NULL_ARGUMENT);
  CHECK(tp_pf(h.s, "fib", &r) == TP_ERR_PRECONDITION);
  CHECK(tp_burnside_order(h.s, "fib", 2, 5, 100, &r) == TP_ERR_PRECONDITION);
  tp_session_free(nullptr);
  tp_report_free(nullptr);
}

TEST_CASE("length cap") {
  SessionHandle h;
  REQUIRE(tp_session_parse(fib_text.c_str(), "fib", &h.s) == TP_OK);
  auto before = tp_length_cap();
  tp_set_length_cap(40);
  CHECK(tp_length_cap() == 40);
  tp_report* r = nullptr;
  CHECK(tp_orbit(h.s, "fib", "b", 12, &r) == TP_ERR_LIMIT);
  tp_set_length_cap(0);
  CHECK(tp_length_cap() == before);
  ReportHandle ok;
  CHECK(tp_orbit(h.s, "fib", "b", 12, &ok.r) == TP_OK);
}

TEST_CASE("undecided outcomes and Burnside orders") {
  ReportHandle moves;
  REQUIRE(tp_moves("a", 3, "0", 0, "b", 1000, 2, &moves.r) == TP_OK);
  CHECK(tp_report_outcome(moves.r) == 2);

  SessionHandle h;
  REQUIRE(tp_session_parse("autom dehn\nrank 2\na -> a\nb -> ba\n", "d", &h.s) == TP_OK);
  ReportHandle order;
  REQUIRE(tp_burnside_order(h.s, "dehn", 2, 3, 100, &order.r) == TP_OK);
  CHECK(std::string(tp_report_text(order.r)).find("induced order: 3") != std::string::npos);

  ReportHandle tc;
  REQUIRE(tp_todd_coxeter("aa\nbbb\nabab\n", 2, 0, 1000, &tc.r) == TP_OK);
  CHECK(std::string(tp_report_text(tc.r)).rfind("order: 6\n", 0) == 0);
}

TEST_CASE("the header is usable from C") {
  CHECK(trackpow_c_smoke(TRACKPOW_SESSIONS "/fib.tps") == 0);
}
