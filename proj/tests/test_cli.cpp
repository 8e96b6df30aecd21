#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "rmt/errors.hpp"
#include "rmt/io.hpp"

using namespace rmt;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const char* cli = std::getenv("RMT_CLI");
  REQUIRE_MESSAGE(cli != nullptr, "RMT_CLI must point at the rmt_cli binary");
  const std::string cmd = std::string(cli) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  while (fgets(buf.data(), buf.size(), p)) r.out += buf.data();
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string line(const std::string& s, int k) {
  std::istringstream is(s);
  std::string l;
  for (int i = 0; i <= k; ++i) std::getline(is, l);
  return l;
}

}  // namespace

TEST_CASE("parsers") {
  CHECK(parse_polynomial("x") == std::vector<double>{0, 1});
  CHECK(parse_polynomial("x^2+0.5x") == std::vector<double>{0, 0.5, 1});
  CHECK(parse_polynomial("3x^3 - x + 1") == std::vector<double>{1, -1, 0, 3});
  CHECK_THROWS(parse_polynomial("x^"));
  CHECK(parse_int_list("16,32,64") == std::vector<int>{16, 32, 64});
  CHECK(parse_int_list("1..4") == std::vector<int>{1, 2, 3, 4});
  CHECK(parse_double_list("0.5,-1") == std::vector<double>{0.5, -1});
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1e-20) == "1e-20");
}

TEST_CASE("manifest hash is canonical") {
  RunManifest a{"gap", {{"beta", 2}, {"alpha", 0.5}}};
  RunManifest b{"gap", {{"alpha", 0.5}, {"beta", 2}}};
  RunManifest c{"gap", {{"alpha", 0.5}, {"beta", 4}}};
  CHECK(a.hash() == b.hash());
  CHECK(a.hash() != c.hash());
  CHECK(a.hash().size() == 16);
  std::ostringstream os;
  write_csv(os, a, {"x", "y"}, {{"1", "2"}});
  CHECK(line(os.str(), 0).rfind("# manifest_hash=" + a.hash(), 0) == 0);
  CHECK(line(os.str(), 1) == "x,y");
  CHECK(line(os.str(), 2) == "1,2");
}

TEST_CASE("svg plot") {
  const std::string s = loglog_svg("t", "n", "err", {{"a", {16, 32, 64}, {0.1, 0.05, 0.0}}}, RunManifest{"x", {}});
  CHECK(s.rfind("<svg", 0) == 0);
  CHECK(s.find("</svg>") != std::string::npos);
}

TEST_CASE("recurrence subcommand") {
  const Run r = run("recurrence --alpha 0 --V x --n 4");
  CHECK(r.code == 0);
  CHECK(line(r.out, 0).rfind("# manifest_hash=", 0) == 0);
  CHECK(line(r.out, 1) == "k,a_k,b_k,log_gamma_k");
  CHECK(line(r.out, 2).rfind("0,1,1,", 0) == 0);
  CHECK(run("recurrence --alpha 0 --V x --n 4").out == r.out);
}

TEST_CASE("gap at the hard edge") {
  const Run r = run("gap --regime hard --beta 2 --alpha 0 --s 4 --limit");
  CHECK(r.code == 0);
  CHECK(r.out.find("0.63212055882") != std::string::npos);
}

TEST_CASE("tm-verify and widom --verify succeed") {
  CHECK(run("tm-verify --m 1..4 --q-max 20").code == 0);
  CHECK(run("widom --alpha 1 --V x^2 --n 8 --verify").code == 0);
}

TEST_CASE("sampling is reproducible") {
  const std::string args = "sample --alpha 1 --V x --beta 1 --n 6 --samples 20 --seed 3";
  const Run a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(run("sample --alpha 1 --V x --beta 1 --n 6 --samples 20 --seed 4").out != a.out);
}

TEST_CASE("usage and domain errors exit with 1") {
  CHECK(run("").code == 1);
  CHECK(run("no-such-command").code == 1);
  CHECK(run("gap --regime edge --limit").code == 1);
  CHECK(run("recurrence --alpha -2").code == 1);
  CHECK(run("widom --n 9").code == 1);
  CHECK(run("sample --V x^2").code == 1);
}
