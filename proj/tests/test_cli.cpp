#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

namespace {
  namespace fs = std::filesystem;

  struct Run {
    int         exit_code;
    std::string out;
    std::string err;
  };

  std::string slurp(fs::path const& p) {
    std::ifstream      in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path scratch(std::string const& name) {
    auto dir = fs::temp_directory_path() / "trackpow-cli-test";
    fs::create_directories(dir);
    return dir / name;
  }

  std::string session(std::string const& file) {
    return std::string(TRACKPOW_SESSIONS) + "/" + file;
  }

  Run run(std::string const& args, std::string const& env = "") {
    auto        err_file = scratch("stderr.txt");
    std::string cmd = env + " '" TRACKPOW_CLI "' " + args + " 2>'" + err_file.string() + "'";
    FILE*       pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char        buf[4096];
    while (auto n = std::fread(buf, 1, sizeof buf, pipe)) {
      out.append(buf, n);
    }
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, slurp(err_file)};
  }

  std::vector<double> numbers_in(std::string const& text) {
    std::vector<double> out;
    std::regex          num(R"([-+]?\d+(\.\d+)?(e[-+]?\d+)?)");
    for (std::sregex_iterator it(text.begin(), text.end(), num), end; it != end; ++it) {
      out.push_back(std::stod(it->str()));
    }
    return out;
  }

  void numeric_leaves(nlohmann::json const& j, std::vector<double>& out) {
    if (j.is_number()) {
      out.push_back(j.get<double>());
    } else if (j.is_structured()) {
      for (auto const& v : j) {
        numeric_leaves(v, out);
      }
    }
  }

  // Every number in the JSON report also appears in the text report.
  void check_agreement(std::string const& args) {
    auto text = run(args);
    auto json = run("--json " + args);
    CHECK(text.exit_code == json.exit_code);
    auto                j = nlohmann::json::parse(json.out);
    std::vector<double> leaves;
    numeric_leaves(j, leaves);
    auto shown = numbers_in(text.out);
    for (double v : leaves) {
      bool found = std::find(shown.begin(), shown.end(), v) != shown.end();
      INFO(args << ": " << v);
      CHECK(found);
    }
  }
}  // namespace

TEST_CASE("orbit reproduces the Fibonacci table") {
  auto r = run("--session " + session("fib.tps") + " orbit fib b --depth 7");
  CHECK(r.exit_code == 0);
  CHECK(r.out
        == "fib^1(b) = a\n"
           "fib^2(b) = ab\n"
           "fib^3(b) = aba\n"
           "fib^4(b) = abaab\n"
           "fib^5(b) = abaababa\n"
           "fib^6(b) = abaababaabaab\n"
           "fib^7(b) = abaababaabaababaababa\n");
  CHECK(r.err.empty());
}

TEST_CASE("burnside order of the Dehn twist") {
  auto r = run("--session " + session("dehn.tps") + " burnside-order dehn --rank 2 --exp 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("induced order: 3\n") != std::string::npos);
}

TEST_CASE("pf of the shift-periodic substitution") {
  auto r = run("--session " + session("remark3.tps") + " pf remark3");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("lambda = 2.000000\n") != std::string::npos);
  std::smatch m;
  REQUIRE(std::regex_search(r.out, m, std::regex(R"(residual = (\S+))")));
  CHECK(std::stod(m[1]) < 1e-9);
}

TEST_CASE("exit codes") {
  CHECK(run("--session " + session("psi.tps") + " classify psi").exit_code == 2);
  CHECK(run("--session " + session("psi.tps") + " classify psirose").exit_code == 0);
  CHECK(run("moves a --n 3 --join b").exit_code == 2);
  CHECK(run("moves aa --n 3 --join A").exit_code == 0);

  auto missing = run("--session " + session("fib.tps") + " classify nope");
  CHECK(missing.exit_code == 1);
  CHECK(missing.out.empty());
  CHECK(missing.err.find("nope") != std::string::npos);

  CHECK(run("--session /nonexistent.tps dump").exit_code == 1);
  CHECK(run("--session " + session("fib.tps") + " orbit fib q --depth 2").exit_code == 1);
  CHECK(run("no-such-command").exit_code == 1);
  CHECK(run("burnside-order dehn --rank 2 --exp 3").exit_code == 1);
}

TEST_CASE("length cap from the environment") {
  auto capped = run("--session " + session("fib.tps") + " orbit fib b --depth 20",
                    "TRACKPOW_LENGTH_CAP=50");
  CHECK(capped.exit_code == 1);
  CHECK(capped.err.find("50") != std::string::npos);
  CHECK(run("--session " + session("fib.tps") + " orbit fib b --depth 20").exit_code == 0);
}

TEST_CASE("dump round-trips byte for byte") {
  for (auto const* file : {"fib.tps", "psi.tps", "cover.tps", "remark3.tps", "dehn.tps"}) {
    auto original = slurp(session(file));
    // Canonical files: dumping only drops the comment lines.
    std::string expected;
    std::istringstream in(original);
    for (std::string line; std::getline(in, line);) {
      if (!line.starts_with("#")) {
        expected += line + "\n";
      }
    }
    auto first = run("--session " + session(file) + " dump");
    CHECK(first.exit_code == 0);
    CHECK(first.out == expected);
    auto copy = scratch(file);
    std::ofstream(copy, std::ios::binary) << first.out;
    CHECK(run("--session '" + copy.string() + "' dump").out == first.out);
  }
}

TEST_CASE("json and text agree on every number") {
  check_agreement("--session " + session("remark3.tps") + " pf remark3");
  check_agreement("--session " + session("psi.tps") + " classify psirose");
  check_agreement("--session " + session("psi.tps") + " pf psirose");
  check_agreement("--session " + session("cover.tps") + " classify cover");
  check_agreement("--session " + session("fib.tps") + " power-index fibsub b --depth 10");
  check_agreement("--session " + session("psi.tps") + " red psirose d --depth 5");
  check_agreement("--session " + session("psi.tps") + " audit-yellow psirose d --depth 3");
  check_agreement("--session " + session("dehn.tps") + " burnside-order dehn --rank 2 --exp 3");
  check_agreement("--session " + session("remark3.tps") + " period remark3 a");
  check_agreement("moves aaabab --n 3");
  check_agreement("tc --rank 2 --relators " + session("s3.rel"));
}

TEST_CASE("output is deterministic and traces stay on stderr") {
  auto args = "--session " + session("psi.tps") + " classify psirose";
  CHECK(run(args).out == run(args).out);
  auto quiet = run("moves aaab --n 3 --join b");
  auto loud  = run("--verbose moves aaab --n 3 --join b");
  CHECK(quiet.exit_code == 0);
  CHECK(loud.out == quiet.out);
  CHECK(quiet.err.empty());
  CHECK_FALSE(loud.err.empty());
}
