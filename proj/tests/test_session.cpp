#include <doctest.h>

#include "trackpow/error.hpp"
#include "trackpow/session.hpp"

using namespace trackpow;

namespace {
  std::string error_of(std::string_view text, ErrorKind expected) {
    try {
      (void)Session::parse(text, "t.tps");
    } catch (Error const& e) {
      CHECK(e.kind() == expected);
      return e.what();
    }
    FAIL("expected an error");
    return {};
  }
}  // namespace

TEST_CASE("a Fibonacci session parses and dumps canonically") {
  std::string text =
      "# comment\n"
      "alphabet ab\n"
      "letters: a b\n"
      "\n"
      "autom fib over ab   # trailing comment\n"
      "a -> ab\n"
      "b -> a\n"
      "\n"
      "subst fibsub over ab\n"
      "a -> ab\n"
      "b -> a\n";
  auto s = Session::parse(text);
  CHECK(s.names() == std::vector<std::string>{"ab", "fib", "fibsub"});
  CHECK(s.kind("fib") == ObjectKind::automorphism);
  CHECK(s.automorphism("fib").images()[0] == reduce(s.alphabet("ab").parse("ab")));
  CHECK(s.substitution("fibsub").image(2) == s.alphabet("ab").parse("a"));
  CHECK(s.warnings().empty());
  auto dumped = s.dump();
  CHECK(dumped
        == "alphabet ab\nletters: a b\n\nautom fib over ab\na -> ab\nb -> a\n\n"
           "subst fibsub over ab\na -> ab\nb -> a\n");
  CHECK(Session::parse(dumped).dump() == dumped);
}

TEST_CASE("implied alphabets and rank lines") {
  auto s = Session::parse("autom phi\nb -> ba\na -> a\n");
  CHECK(s.automorphism("phi").basis().names() == std::vector<std::string>{"b", "a"});

  auto r = Session::parse("autom dehn\nrank 2\na -> a\nb -> ba\n");
  CHECK(r.automorphism("dehn").basis().names() == std::vector<std::string>{"a", "b"});
  CHECK(r.dump() == "autom dehn\nrank 2\na -> a\nb -> ba\n");
  error_of("autom x\nrank 0\na -> a\n", ErrorKind::parse);
  error_of("autom x\nrank 2\na -> a\n", ErrorKind::parse);
}

TEST_CASE("images are reduced or tightened with a warning") {
  auto s = Session::parse("autom phi\na -> a inv(a) a b\nb -> b\n", "w.tps");
  REQUIRE(s.warnings().size() == 1);
  CHECK(to_string(s.warnings()[0].where) == "w.tps:2:6");
  auto const& phi = s.automorphism("phi");
  CHECK(phi.basis().format(phi.images()[0].letters()) == "ab");

  auto g = Session::parse(
      "graphmap r\nvertices: v\nedge a v v height 1\nmap a -> a b B\nedge b v v height 1\n"
      "map b -> b\n");
  CHECK(g.warnings().size() == 1);
  CHECK(g.graph_map("r").image(0) == Word{0});
}

TEST_CASE("graph maps") {
  auto s = Session::parse(
      "graphmap cover\n"
      "vertices: v0 v1\n"
      "edge y v0 v1 height 1\n"
      "edge c v1 v0 height 2\n"
      "edge d v1 v0 height 2\n"
      "map y -> y\n"
      "map c -> cyd\n"
      "map d -> c\n");
  auto const& f = s.graph_map("cover");
  CHECK(f.graph().vertex_count() == 2);
  CHECK(f.vertex_image(1) == 1);
  CHECK(f.top_height() == 2);
  auto dumped = s.dump();
  CHECK(dumped.find("vmap v1 -> v1\n") != std::string::npos);
  CHECK(Session::parse(dumped).dump() == dumped);
}

TEST_CASE("inverse-closed substitutions") {
  auto s = Session::parse("subst t inverse-closed\na -> aB\nb -> b\n");
  CHECK(s.substitution("t").is_flip_equivariant());
  auto full = Session::parse("subst u inverse-closed\na -> a\nA -> a\nb -> b\nB -> b\n");
  CHECK_FALSE(full.substitution("u").is_flip_equivariant());
  CHECK(Session::parse(full.dump()).dump() == full.dump());
  error_of("subst p\na -> aB\nb -> b\n", ErrorKind::parse);
}

TEST_CASE("diagnostics carry the line and column") {
  auto undefined = error_of("autom fib over nowhere\na -> ab\nb -> a\n", ErrorKind::not_found);
  CHECK(undefined.rfind("t.tps:1:16:", 0) == 0);
  CHECK(undefined.find("nowhere") != std::string::npos);

  auto dup = error_of("autom x\na -> a\n\nautom x\na -> a\n", ErrorKind::parse);
  CHECK(dup.rfind("t.tps:4:7:", 0) == 0);

  auto stray = error_of("a -> b\n", ErrorKind::parse);
  CHECK(stray.rfind("t.tps:1:1:", 0) == 0);

  auto arrow = error_of("autom x\na ab\n", ErrorKind::parse);
  CHECK(arrow.rfind("t.tps:2:", 0) == 0);

  auto letter = error_of("alphabet ab\nletters: a b\nautom x over ab\na -> ac\nb -> b\n",
                         ErrorKind::not_found);
  CHECK(letter.rfind("t.tps:4:6:", 0) == 0);

  error_of("graphmap g\nvertices: v\nedge a v w height 1\nmap a -> a\n", ErrorKind::not_found);
  error_of("graphmap g\nvertices: v\nedge a v v height 0\nmap a -> a\n", ErrorKind::parse);
  error_of("graphmap g\nvertices: v\nedge a v v height 1\n", ErrorKind::parse);
  error_of("alphabet x\nletters: a a\n", ErrorKind::parse);
}

TEST_CASE("lookups") {
  auto s = Session::parse("autom x\na -> a\n");
  CHECK(s.contains("x"));
  CHECK_FALSE(s.contains("y"));
  CHECK_THROWS_AS(s.substitution("x"), Error);
  try {
    (void)s.kind("y");
    FAIL("expected an error");
  } catch (Error const& e) {
    CHECK(e.kind() == ErrorKind::not_found);
  }
  CHECK_THROWS_AS(Session::load("/nonexistent/file.tps"), Error);
}

TEST_CASE("programmatic objects dump like parsed ones") {
  Session s;
  s.add("ab", Alphabet::standard(2));
  s.add("id", BasisMap::identity(Alphabet::standard(2)));
  CHECK(s.dump() == "alphabet ab\nletters: a b\n\nautom id\na -> a\nb -> b\n");
  CHECK_THROWS_AS(s.add("id", Alphabet::standard(1)), Error);
}
