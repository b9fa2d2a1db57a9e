#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dqw/cli.hpp"
#include "dqw/io.hpp"

using namespace dqw;

namespace {

int run(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("angle grammar") {
  ThetaExpr a = parse_theta("2pi/3");
  CHECK(a.symbolic);
  CHECK(a.num == 2);
  CHECK(a.den == 3);
  CHECK(a.radians == 2.0 * pi / 3.0);  // bit-exact match with the dispatch constant

  ThetaExpr b = parse_theta("pi");
  CHECK(b.symbolic);
  CHECK(b.num == 1);
  CHECK(b.den == 1);
  CHECK(b.radians == pi);

  ThetaExpr c = parse_theta("-pi");
  CHECK(c.num == -1);
  CHECK(c.radians == -pi);

  ThetaExpr d = parse_theta("pi/3");
  CHECK(d.num == 1);
  CHECK(d.den == 3);

  ThetaExpr e = parse_theta("-2pi/3");
  CHECK(e.num == -2);
  CHECK(e.radians == -2.0 * pi / 3.0);

  ThetaExpr f = parse_theta("0.5");
  CHECK(!f.symbolic);
  CHECK(f.radians == 0.5);

  ThetaExpr g = parse_theta("-1.25e-1");
  CHECK(g.radians == -0.125);

  CHECK_THROWS_AS(parse_theta("banana"), InputError);
  CHECK_THROWS_AS(parse_theta("2pi/0"), InputError);
  CHECK_THROWS_AS(parse_theta(""), InputError);
  CHECK_THROWS_AS(parse_theta("pi/"), InputError);
  CHECK_THROWS_AS(parse_theta("2.5pi"), InputError);
}

TEST_CASE("initial condition grammar") {
  InitialCondition dflt = parse_init("s=1,r=0,coin=uniform");
  CHECK(dflt == make_init_uniform(1, 0));

  InitialCondition basis = parse_init("s=0,r=3,coin=1");
  CHECK(basis == make_init_basis(1, 0, 3));

  InitialCondition cplx = parse_init("s=1,r=2,coin=0.6:0+0.8i:0");
  CHECK(cplx.s0 == 1);
  CHECK(cplx.r0 == 2);
  CHECK(std::abs(cplx.coin_amplitudes[0] - cd(0.6, 0)) <= 1e-15);
  CHECK(std::abs(cplx.coin_amplitudes[1] - cd(0, 0.8)) <= 1e-15);
  CHECK(std::abs(cplx.coin_amplitudes[2]) <= 1e-15);

  CHECK_THROWS_AS(parse_init("s=1,flavor=mint"), InputError);
  CHECK_THROWS_AS(parse_init(""), InputError);
  CHECK_THROWS_AS(parse_init("s=3,r=0,coin=0"), InputError);
}

TEST_CASE("vertex list grammar") {
  auto v = parse_vertices("1,0;0,3", 5);
  REQUIRE(v.size() == 2);
  CHECK(v[0] == DihedralVertex{1, 0});
  CHECK(v[1] == DihedralVertex{0, 3});
  CHECK_THROWS_AS(parse_vertices("1,7", 5), InputError);
  CHECK_THROWS_AS(parse_vertices("", 5), InputError);
  CHECK_THROWS_AS(parse_vertices("5", 5), InputError);
}

TEST_CASE("config parsing") {
  RunConfig c = parse_config({"period", "--class", "X", "--theta", "2pi/3", "--n", "7"});
  CHECK(c.subcommand == "period");
  REQUIRE(c.cls.has_value());
  CHECK(*c.cls == CoinClass::X);
  REQUIRE(c.theta.has_value());
  CHECK(c.theta->num == 2);
  CHECK(c.n == 7);
  CHECK(c.method.empty());

  RunConfig l = parse_config({"localize", "--class", "Y", "--theta", "0.4", "--n", "10",
                              "--T", "120", "--method", "direct", "--format", "csv"});
  CHECK(l.T == 120);
  CHECK(l.method == "direct");
  CHECK(l.format == "csv");

  RunConfig s = parse_config({"spectrum", "--class", "Z", "--x", "0.1",
                              "--y", "0.9908326913195984", "--n", "5"});
  REQUIRE(s.xy.has_value());
  CHECK(!s.theta.has_value());

  CHECK_THROWS_AS(parse_config({"period", "--theta", "banana", "--n", "4", "--class", "X"}),
                  InputError);
  CHECK_THROWS_AS(parse_config({"period", "--n", "4"}), InputError);           // class missing
  CHECK_THROWS_AS(parse_config({"period", "--class", "Q", "--theta", "pi"}), InputError);
  CHECK_THROWS_AS(parse_config({"frobnicate"}), InputError);
  CHECK_THROWS_AS(parse_config({}), InputError);
  CHECK_THROWS_AS(parse_config({"spectrum", "--class", "X", "--x", "0.5"}), InputError);
  CHECK_THROWS_AS(parse_config({"localize", "--class", "X", "--theta", "pi",
                                "--method", "brute"}),
                  InputError);
  CHECK_THROWS_AS(parse_config({"period", "--class", "X", "--theta", "pi",
                                "--format", "csv"}),
                  InputError);
  CHECK_THROWS_AS(parse_config({"sweep-n", "--class", "X", "--theta", "pi"}), InputError);
}

TEST_CASE("config round trip through the canonical token list") {
  std::vector<RunConfig> cases;
  cases.push_back(parse_config({"period", "--class", "X", "--theta", "2pi/3", "--n", "9",
                                "--method", "spectral", "--q-max", "500"}));
  cases.push_back(parse_config({"localize", "--class", "W", "--theta", "-pi/3", "--n", "12",
                                "--T", "77", "--init", "s=0,r=1,coin=2", "--method", "limit",
                                "--format", "json"}));
  cases.push_back(parse_config({"sweep-theta", "--class", "Z", "--n", "8", "--grid", "15",
                                "--vertices", "0,0;1,4", "--parallel"}));
  cases.push_back(parse_config({"sweep-n", "--class", "Y", "--theta", "pi", "--ns", "6,8,10"}));
  cases.push_back(parse_config({"spectrum", "--class", "X", "--x", "-0.33333333333333331",
                                "--y", "0.66666666666666663", "--n", "4", "--out", "eigs.csv"}));
  cases.push_back(parse_config({"evolve", "--class", "X", "--theta", "pi", "--n", "6", "--T", "9"}));
  cases.push_back(parse_config({"graph", "--n", "11", "--format", "json"}));
  cases.push_back(parse_config({"period", "--class", "X", "--theta", "pi", "--n", "3",
                                "--method", "brute", "--t-max", "50", "--eigenvalue-power"}));
  for (const RunConfig& c : cases) {
    RunConfig back = parse_config(render_config(c));
    CHECK(back == c);
  }
}

TEST_CASE("exit codes") {
  std::string out, err;
  CHECK(run({"period", "--class", "X", "--theta", "2pi/3", "--n", "7"}, &out) == 0);
  CHECK(out.find("\"tau\": 6") != std::string::npos);

  CHECK(run({"period", "--theta", "banana", "--n", "4", "--class", "X"}, &out, &err) == 2);
  CHECK(err.find("usage error") != std::string::npos);
  CHECK(run({"period", "--class", "Q", "--theta", "pi"}, &out, &err) == 2);
  CHECK(run({"nonsense"}, &out, &err) == 2);
  CHECK(run({}, &out, &err) == 2);

  CHECK(run({"coin", "--class", "X", "--theta", "pi",
             "--out", "/nonexistent-dir/x.json"}, &out, &err) == 3);

  CHECK(run({"--help"}, &out, &err) == 0);
  CHECK(run({"period", "--help"}, &out, &err) == 0);
}

TEST_CASE("coin subcommand emits the matrix") {
  std::string out;
  CHECK(run({"coin", "--class", "X", "--theta", "pi"}, &out) == 0);
  CHECK(out.find("\"class\": \"X\"") != std::string::npos);
  CHECK(out.find("-0.33333333333333") != std::string::npos);
}

TEST_CASE("graph subcommand formats") {
  std::string edges, js;
  CHECK(run({"graph", "--n", "4"}, &edges) == 0);
  CHECK(count_lines(edges) == 12);
  CHECK(edges.find("D 0 0 0 1") != std::string::npos);
  CHECK(run({"graph", "--n", "4", "--format", "json"}, &js) == 0);
  CHECK(js.find("\"directed\"") != std::string::npos);
  CHECK(js.find("\"undirected\"") != std::string::npos);
}

TEST_CASE("spectrum subcommand row count") {
  std::string out;
  CHECK(run({"spectrum", "--class", "X", "--theta", "pi", "--n", "5"}, &out) == 0);
  CHECK(count_lines(out) == 31);  // header + 6n rows
  CHECK(out.rfind("k,j,re,im,phase,residual\n", 0) == 0);
}

TEST_CASE("evolve subcommand emits the state snapshot") {
  std::string out;
  CHECK(run({"evolve", "--class", "X", "--theta", "pi", "--n", "4", "--T", "3"}, &out) == 0);
  CHECK(count_lines(out) == 25);  // header + 6n amplitude rows
  CHECK(out.rfind("l,s,r,re,im\n", 0) == 0);
}

TEST_CASE("localize subcommand csv shape") {
  std::string out;
  CHECK(run({"localize", "--class", "X", "--theta", "pi", "--n", "4", "--T", "20",
             "--format", "csv"}, &out) == 0);
  CHECK(count_lines(out) == 9);  // header + 2n vertex rows
  CHECK(out.rfind("theta_or_n,s,r,pbar\n", 0) == 0);
}

TEST_CASE("csv output is byte-stable across runs") {
  std::string a, b;
  std::vector<std::string> args{"sweep-theta", "--class", "X", "--n", "6", "--grid", "7",
                                "--T", "40", "--format", "csv", "--parallel"};
  CHECK(run(args, &a) == 0);
  CHECK(run(args, &b) == 0);
  CHECK(a == b);
  CHECK(!a.empty());
}

TEST_CASE("17-digit float rendering round-trips") {
  CHECK(fmt_g17(1.0 / 3.0) == "0.33333333333333331");
  CHECK(fmt_g17(0.0) == "0");
  CHECK(fmt_g17(-2.5) == "-2.5");
}

}  // TEST_SUITE
