#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "quasigap/density.hpp"
#include "quasigap/gaps.hpp"
#include "quasigap/io.hpp"

using namespace quasigap;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int rc = -1;
  std::string out;
};

CliResult run(const std::string& args) {
  const std::string cmd = std::string(QUASIGAP_CLI) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.rc = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("quasigap_cli_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d / name;
}

std::size_t data_rows(const std::vector<std::string>& ls) {
  std::size_t n = 0;
  for (const auto& l : ls)
    if (!l.empty() && l[0] != '#') ++n;
  return n - 1;  // column header
}

}  // namespace

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("generate --family A --window octagon_ab --T 3").rc, 0);
  EXPECT_EQ(run("").rc, 2);
  EXPECT_EQ(run("bogus").rc, 2);
  EXPECT_EQ(run("generate --family A --window octagon_ab").rc, 2);
  EXPECT_EQ(run("generate --family Q --T 3").rc, 2);
  EXPECT_EQ(run("generate --family A --window nope --T 3").rc, 2);
  EXPECT_EQ(run("generate --family A --window octagon_ab --T -3").rc, 2);
  EXPECT_EQ(run("generate --family P --gamma 1,2,3 --T 3").rc, 2);
  EXPECT_EQ(run("generate --family P --gamma 1/3,1/3,-1/3,-1/3,0 --T 3").rc, 2);
  // admissible shape, |eps| too large for the visibility criterion
  EXPECT_EQ(run("density --family P --gamma 1/3,1/3,-1/3,-1/2,1/6").rc, 2);
  EXPECT_EQ(run("generate --family A --window octagon_ab_457 --visibility predicate --T 5").rc, 2);
  EXPECT_EQ(run("validate-gamma --gamma 2/101,1/101,-2/101,-2/101,1/101").rc, 0);
  EXPECT_EQ(run("validate-gamma --gamma 0,0,0,0,0").rc, 2);
  EXPECT_EQ(run("zd --d 9 --T 10").rc, 2);
}

TEST(Cli, GenerateCsvMatchesLibrary) {
  const CliResult r = run("generate --family T --window decagon_t --T 12");
  ASSERT_EQ(r.rc, 0);
  const auto ls = lines(r.out);
  ASSERT_GE(ls.size(), 3u);
  EXPECT_EQ(ls[0].rfind("# quasigap " QUASIGAP_VERSION " config=", 0), 0u);
  EXPECT_EQ(ls[1], "a,b,c,d,re,im,visible");
  PointSample s = generate(FamilySpec::T(make_decagon_T()), 12, {1});
  classify_visibility(s, 1);
  EXPECT_EQ(data_rows(ls), s.size());
  std::size_t vis = 0;
  for (std::size_t i = 2; i < ls.size(); ++i) vis += ls[i].back() == '1';
  EXPECT_EQ(vis, s.visible_count());
}

TEST(Cli, DeterministicAcrossThreads) {
  for (const std::string cmd : {"generate --family P --T 25", "gaps --family A --window octagon_ab_457 --T 25", "series --family T --window decagon_t --T-list 10:30:5"}) {
    const CliResult a = run(cmd + " --threads 1"), b = run(cmd + " --threads 3");
    ASSERT_EQ(a.rc, 0) << cmd;
    EXPECT_EQ(a.out, b.out) << cmd;
  }
  // the hash follows the configuration, not the output target
  const auto h1 = lines(run("generate --family P --T 25").out)[0];
  const auto h2 = lines(run("generate --family P --T 26").out)[0];
  EXPECT_NE(h1, h2);
  const fs::path p = scratch("gen.csv");
  ASSERT_EQ(run("generate --family P --T 25 --out " + p.string()).rc, 0);
  EXPECT_EQ(slurp(p), run("generate --family P --T 25").out);
}

TEST(Cli, DensityAndMingapJson) {
  const json d = json::parse(run("density --family A --window octagon_ab").out);
  EXPECT_DOUBLE_EQ(d["theta_visible"].get<double>(), density_visible_A(make_octagon_AB()).theta_visible);
  EXPECT_TRUE(d["meta"].contains("config_hash"));
  const json e = json::parse(run("density --family A --window octagon_ab_457").out);
  EXPECT_EQ(e["method"], "extended_sum");
  EXPECT_NEAR(e["theta_visible"].get<double>(), density_visible_octagon_translate().theta_visible, 1e-15);
  const json m = json::parse(run("mingap --family P").out);
  const MinGapResult mp = min_gap_P(penrose_eps(gamma_eps0()));
  EXPECT_EQ(m["exponent"].get<int>(), mp.exponent);
  EXPECT_DOUBLE_EQ(m["m_hat"].get<double>(), mp.m_hat);
  const json z = json::parse(run("zd --d 2 --T 60").out);
  EXPECT_EQ(z["visible"].get<std::uint64_t>(), zd_visible(2, 60, 1).visible);
}

TEST(Cli, WindowFromJsonFile) {
  const fs::path p = scratch("oct.json");
  std::ofstream(p) << io::window_to_json(make_octagon_AB()).dump();
  const auto a = lines(run("generate --family A --window " + p.string() + " --T 20").out);
  const auto b = lines(run("generate --family A --window octagon_ab --T 20").out);
  ASSERT_GT(a.size(), 2u);
  EXPECT_EQ(std::vector<std::string>(a.begin() + 1, a.end()), std::vector<std::string>(b.begin() + 1, b.end()));
  std::ofstream(scratch("bad.json")) << R"({"ring":"sqrt2","vertices":[[["0"],["0"]]]})";
  EXPECT_EQ(run("generate --family A --window " + scratch("bad.json").string() + " --T 5").rc, 2);
  EXPECT_EQ(run("generate --family A --window /nonexistent/w.json --T 5").rc, 2);
}

TEST(Cli, HistogramSeriesAndTables) {
  const fs::path svg = scratch("h.svg");
  const CliResult h = run("hist --family A --window octagon_ab --T 40 --bin-width 0.1 --max 3 --overlay-z2 --svg " + svg.string());
  ASSERT_EQ(h.rc, 0);
  EXPECT_EQ(slurp(svg).rfind("<!-- quasigap ", 0), 0u);
  EXPECT_NE(slurp(svg).find("<svg xmlns"), std::string::npos);
  EXPECT_NE(slurp(svg).find("polyline"), std::string::npos);
  EXPECT_EQ(data_rows(lines(h.out)), 30u);

  const CliResult s = run("series --family A --window octagon_ab --T-list 20,40,60");
  ASSERT_EQ(s.rc, 0);
  const auto sl = lines(s.out);
  EXPECT_EQ(data_rows(sl), 3u);
  const auto want = delta_series(FamilySpec::A(make_octagon_AB()), {20, 40, 60}, 1);
  EXPECT_NE(s.out.find(std::to_string(want[2].second).substr(0, 6)), std::string::npos);

  const CliResult t1 = run("table1 --T 60");
  ASSERT_EQ(t1.rc, 0);
  const auto l1 = lines(t1.out);
  EXPECT_EQ(data_rows(l1), 1u);
  PointSample o = generate(FamilySpec::A(make_octagon_AB()), 60, {1});
  classify_visibility(o, 1);
  EXPECT_EQ(l1.back().rfind("60.000," + std::to_string(o.visible_count()) + ",", 0), 0u) << l1.back();

  const CliResult t2 = run("table2 --T-list 30,40");
  ASSERT_EQ(t2.rc, 0);
  EXPECT_EQ(data_rows(lines(t2.out)), 2u);
}
