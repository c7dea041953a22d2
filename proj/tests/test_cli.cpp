#include "fhnx/commands.hpp"
#include "fhnx/config.hpp"
#include "fhnx/report.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace fhnx;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("fhnx_test_" + name);
  fs::remove_all(dir);
  return dir;
}

ErrorKind config_kind(const std::string& text, std::vector<std::string> ov = {}) {
  try {
    parse_config(text, ov);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("accepted: " << text);
  return ErrorKind::Unsupported;
}

}  // namespace

TEST_CASE("config grammar") {
  const RunConfig cfg = parse_config(R"(# comment
; another
[params]
D = 2.5
beta=3

[family]
tag = TanhFrontMinus
x0 = -0.5
[grid]
nx = 11
[simulate]
dt = auto
)", {});
  CHECK(cfg.params.D == 2.5);
  CHECK(cfg.params.beta == 3.0);
  CHECK(cfg.params.epsilon == 0.3);
  CHECK(cfg.family_tag == FamilyTag::TanhFrontMinus);
  CHECK(cfg.family.x0 == -0.5);
  CHECK(cfg.grid.nx == 11);
  CHECK_FALSE(cfg.dt.has_value());
  CHECK(cfg.is_explicit("grid.nx"));
  CHECK_FALSE(cfg.is_explicit("grid.nt"));

  CHECK(config_kind("[nope]\n") == ErrorKind::ConfigError);
  CHECK(config_kind("[params]\nfoo = 1\n") == ErrorKind::ConfigError);
  CHECK(config_kind("[params]\nD = 1\nD = 2\n") == ErrorKind::ConfigError);
  CHECK(config_kind("D = 1\n") == ErrorKind::ConfigError);
  CHECK(config_kind("[params]\nD = abc\n") == ErrorKind::ConfigError);
  CHECK(config_kind("[params\n") == ErrorKind::ConfigError);
  CHECK(config_kind("[grid]\nnx = 2.5\n") == ErrorKind::ConfigError);
  CHECK(config_kind("[params]\nD = 0\n") == ErrorKind::NonPositiveParameter);
  CHECK(config_kind("", {"x_max=-10"}) == ErrorKind::ConfigError);
}

TEST_CASE("config overrides") {
  const RunConfig cfg = parse_config("[params]\nD = 2\n", {"params.D=3", "beta=4", "seed=9"});
  CHECK(cfg.params.D == 3.0);
  CHECK(cfg.params.beta == 4.0);
  CHECK(cfg.seed == 9u);
  CHECK(config_kind("", {"nosuch=1"}) == ErrorKind::ConfigError);
  CHECK(config_kind("", {"D"}) == ErrorKind::ConfigError);
}

TEST_CASE("config round trip") {
  RunConfig cfg = parse_config("", {"D=0.7", "epsilon=0.1", "family.tag=JacobiSnSteady",
                                    "c2=0.25", "simulate.dt=0.001", "ansatz.A=-0.5"});
  const RunConfig back = parse_config(to_config_text(cfg), {});
  CHECK(echo_config(back) == echo_config(cfg));
  CHECK(known_config_keys().size() == echo_config(cfg).size());
}

TEST_CASE("csv quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  std::ostringstream out;
  CsvWriter w(out, {"a", "b"});
  w.row({"1", "x,y"});
  CHECK(out.str() == "a,b\n1,\"x,y\"\n");
  CHECK_THROWS_AS(w.row({"1"}), Error);
}

TEST_CASE("list") {
  const Outcome o = cli({"list"});
  CHECK(o.code == 0);
  for (const FamilyInfo& info : family_catalog()) {
    CHECK(o.out.find(std::string(info.name)) != std::string::npos);
  }
  const Outcome one = cli({"list", "--family", "TanhFrontPlus"});
  CHECK(one.out.find("beta > 1") != std::string::npos);
  const Outcome js = cli({"list", "--json"});
  const auto doc = nlohmann::json::parse(js.out);
  REQUIRE(doc["families"].size() == 9);
  for (const auto& fam : doc["families"]) {
    const RunConfig cfg = parse_config(fam["config"].get<std::string>(), {});
    CHECK(to_string(cfg.family_tag) == fam["tag"].get<std::string>());
  }
  CHECK(cli({"list", "--family", "Bogus"}).code == 2);
}

TEST_CASE("verify") {
  const Outcome ok = cli({"verify"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("# params.D = 1.03") != std::string::npos);
  CHECK(ok.out.find("# verdict: PASS") != std::string::npos);
  CHECK(cli({"verify"}).out == ok.out);

  const Outcome js = cli({"verify", "--json"});
  const auto doc = nlohmann::json::parse(js.out);
  CHECK(doc["pass"] == true);
  for (const auto& row : doc["checks"]) {
    if (row["check"] == "system" && row["method"] == "analytic") CHECK(row["linf"] < 1e-10);
  }

  const Outcome zero = cli({"verify", "--param", "family.tag=FixedPointZero", "--json"});
  for (const auto& row : nlohmann::json::parse(zero.out)["checks"]) {
    if (row["check"] != "derivatives") CHECK(row["linf"] == 0.0);
  }
  const Outcome dom = cli({"verify", "--param", "tag=TanhFrontPlus", "--param", "beta=0.5"});
  CHECK(dom.code == 3);
  CHECK(dom.err.find("beta <= 1") != std::string::npos);
  CHECK(cli({"verify", "--param", "tolerances.analytic=1e-30"}).code == 1);
  CHECK(cli({"verify", "--param", "D=0"}).code == 2);
  CHECK(cli({"verify", "--config", "/nonexistent/file.cfg"}).code == 2);

  const fs::path dir = scratch("verify");
  CHECK(cli({"verify", "--out", dir.string()}).code == 0);
  const std::string csv = slurp(dir / "verify.csv");
  CHECK(csv.rfind("family,check,equation,method,linf,l2,worst_t,worst_x,samples,tolerance,pass\n", 0) == 0);
  CHECK(csv.find('#') == std::string::npos);
}

TEST_CASE("output does not depend on the worker count") {
  setenv("FHNX_THREADS", "1", 1);
  const Outcome one = cli({"verify", "--param", "tag=JacobiSnSteady"});
  setenv("FHNX_THREADS", "3", 1);
  const Outcome three = cli({"verify", "--param", "tag=JacobiSnSteady"});
  unsetenv("FHNX_THREADS");
  CHECK(one.out == three.out);
}

TEST_CASE("stability") {
  const Outcome o = cli({"stability", "--param", "u_star=0"});
  CHECK(o.code == 0);
  CHECK(o.out.find("saddle") != std::string::npos);
  const fs::path dir = scratch("stability");
  CHECK(cli({"stability", "--out", dir.string()}).code == 0);
  std::istringstream summary(slurp(dir / "stability.csv"));
  int rows = -1;
  for (std::string line; std::getline(summary, line);) ++rows;
  CHECK(rows == 3);
  std::istringstream disp(slurp(dir / "dispersion.csv"));
  rows = -1;
  for (std::string line; std::getline(disp, line);) ++rows;
  CHECK(rows == 3 * 101);
  CHECK(cli({"stability", "--param", "u_star=0.5"}).code == 3);
}

TEST_CASE("simulate") {
  const std::vector<std::string> small = {"--param", "grid.nx=41", "--param", "grid.nt=6",
                                          "--param", "grid.t_max=0.5"};
  auto with = [&](std::vector<std::string> extra) {
    std::vector<std::string> args = {"simulate"};
    args.insert(args.end(), small.begin(), small.end());
    args.insert(args.end(), extra.begin(), extra.end());
    return cli(args);
  };
  const fs::path dir = scratch("simulate");
  const Outcome o = with({"--param", "refinements=3", "--out", dir.string()});
  CHECK(o.code == 0);
  for (const char* f : {"trajectory.csv", "trajectory.fhn", "errors.csv", "convergence.csv"}) {
    CHECK(fs::exists(dir / f));
  }
  std::istringstream conv(slurp(dir / "convergence.csv"));
  std::string line;
  std::getline(conv, line);
  double prev = 1e300;
  while (std::getline(conv, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    const double err = std::stod(cells.at(3));
    CHECK(err < prev);
    prev = err;
  }
  CHECK(with({"--scheme", "rk4", "--cfl", "0.5", "--dt", "0.01"}).code == 2);
  CHECK(with({"--scheme", "semi-implicit", "--dt", "0.001"}).code == 0);
  const Outcome zero = with({"--param", "tag=FixedPointZero", "--json"});
  CHECK(zero.code == 0);
  for (const auto& e : nlohmann::json::parse(zero.out)["errors"]) CHECK(e["linf_u"] == 0.0);
  const Outcome nosignal = with({"--param", "tag=FixedPointZero", "--param", "refinements=2"});
  CHECK(nosignal.code == 0);
  CHECK(nosignal.out.find("convergence order unavailable") != std::string::npos);
}

TEST_CASE("figure") {
  const fs::path dir = scratch("figure");
  for (int n : {1, 2}) {
    const Outcome o = cli({"figure", std::to_string(n), "--out", dir.string(), "--json"});
    CHECK(o.code == 0);
    const auto doc = nlohmann::json::parse(o.out);
    CHECK(doc["origin_value"].get<double>() ==
          doctest::Approx(n == 1 ? 2.0 : -7.0 / 6.0).epsilon(1e-14));
    CHECK(doc["decay_ratio"].get<double>() == doctest::Approx(std::exp(-0.2)).epsilon(1e-14));
    const std::string data = slurp(dir / ("figure" + std::to_string(n) + ".csv"));
    CHECK(data.find(n == 1 ? "\n0,0,2\n" : "\n0,0,-1.1666666666666667\n") != std::string::npos);
    CHECK(fs::exists(dir / ("figure" + std::to_string(n) + ".gp")));
  }
  const std::string first = slurp(dir / "figure1.csv");
  CHECK(cli({"figure", "1", "--out", dir.string()}).code == 0);
  CHECK(slurp(dir / "figure1.csv") == first);
  CHECK(cli({"figure", "3"}).code == 2);
  CHECK(cli({"figure"}).code == 2);
}

TEST_CASE("constraints") {
  const Outcome o = cli({"constraints", "--json"});
  CHECK(o.code == 0);
  const auto doc = nlohmann::json::parse(o.out);
  CHECK(doc["pass"] == true);
  CHECK(doc["constraints"].size() == 4);
  CHECK(cli({"constraints", "--param", "ansatz.A=-0.3"}).code == 1);
}

TEST_CASE("parse errors and help") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"verify", "--no-such-flag"}).code == 2);
  const Outcome h = cli({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("modulus") != std::string::npos);
  CHECK(exit_code_for(ErrorKind::OutOfDomain) == 3);
  CHECK(exit_code_for(ErrorKind::ConfigError) == 2);
  CHECK(exit_code_for(ErrorKind::BlowUp) == 1);
}
