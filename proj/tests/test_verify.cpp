#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <set>
#include <string>

#include "alcoves/verify.hpp"
#include "toml_mini.hpp"

using namespace alcoves;
using namespace alcoves::verify;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(ALCOVES_CLI_PATH) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string temp_dir() {
  char tmpl[] = "/tmp/alcoves_test_XXXXXX";
  char* d = mkdtemp(tmpl);
  REQUIRE(d != nullptr);
  return d;
}

size_t count_sub(const std::string& hay, const std::string& needle) {
  size_t n = 0;
  for (size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + needle.size()))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("dominant cocharacter sweeps") {
  Affine a1(RootDatum::preset("A1-sc"));
  std::vector<VecI> m1 = dominant_mus(a1, 8);
  CHECK(m1 == std::vector<VecI>{{0}, {1}, {2}, {3}, {4}});

  Affine a2(RootDatum::preset("A2-sc"));
  std::vector<VecI> m2 = dominant_mus(a2, 8);
  std::set<VecI> got(m2.begin(), m2.end());
  std::set<VecI> expect{{0, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 2}};
  CHECK(got == expect);
  CHECK(m2.front() == VecI{0, 0});

  Affine g2(RootDatum::preset("G2"));
  std::vector<VecI> mg = dominant_mus(g2, 8);
  CHECK(mg == std::vector<VecI>{{0, 0}, {1, 2}});

  Affine gl(RootDatum::preset("A1-gl"));
  std::vector<VecI> mgl = dominant_mus(gl, 8);
  CHECK(mgl.size() == 9);
  for (const VecI& mu : mgl) {
    CHECK(mu[1] == 0);
    CHECK(gl.rd().is_dominant(mu));
    CHECK(gl.length(gl.translation(mu)) <= 8);
  }

  for (const VecI& mu : dominant_mus(a2, 6)) {
    CHECK(a2.rd().is_dominant(mu));
    CHECK(a2.length(a2.translation(mu)) <= 6);
  }
}

TEST_CASE("finite wall subsets") {
  Affine a1(RootDatum::preset("A1-sc"));
  CHECK(finite_wallsets(a1, false).size() == 3);
  Affine a2(RootDatum::preset("A2-sc"));
  std::vector<WallSet> all = finite_wallsets(a2, false);
  CHECK(all.size() == 7);
  CHECK(all.front() == WallSet::none());
  for (size_t i = 1; i < all.size(); ++i)
    CHECK(all[i - 1].count() <= all[i].count());
  CHECK(finite_wallsets(a2, true).size() == 4);

  Affine d2(RootDatum::preset("D2-sc"));
  std::vector<WallSet> dall = finite_wallsets(d2, false);
  CHECK(dall.size() == 9);
  for (const WallSet& j : dall) CHECK(d2.parahoric_finite(j));
  CHECK(finite_wallsets(d2, true).size() == 5);
}

TEST_CASE("single checks pass and are deterministic") {
  Affine a2(RootDatum::preset("A2-sc"));
  EnumCache cache;
  VecI mu{1, 1};
  WallSet j = WallSet::of({0});

  CheckReport m1 = check_main(a2, mu, j, &cache);
  CheckReport m2 = check_main(a2, mu, j, &cache);
  CHECK(m1.pass);
  CHECK(m1.check == "main");
  CHECK(m1.details.empty());
  CHECK(m2.pass == m1.pass);
  CHECK(m2.key == m1.key);
  CHECK(m2.details == m1.details);

  CHECK(check_additivity(a2, mu, mu, j, &cache).pass);
  CHECK(check_compatibility(a2, mu, j, &cache).pass);
  CHECK(check_cone_corollary(a2, mu, &cache).pass);
  CHECK(check_hull_identities(a2, mu, &cache).pass);
  std::vector<WallSet> fam{a2.all_walls().without(0), a2.all_walls().without(1)};
  CheckReport v = check_vertexwise(a2, mu, fam, &cache);
  CHECK(v.pass);
  CHECK(v.key.find("family=") != std::string::npos);
}

TEST_CASE("enumeration cache returns stable copies") {
  Affine af(RootDatum::preset("A2-sc"));
  EnumCache cache;
  std::vector<AffElt> a = cache.adm(af, {1, 1});
  std::vector<AffElt> b = cache.adm(af, {1, 1});
  CHECK(a == b);
  CHECK(a == admsets::enumerate_adm(af, {1, 1}));
  CHECK(cache.adm_J(af, {1, 1}, WallSet::of({1})) ==
        admsets::enumerate_adm_J(af, {1, 1}, WallSet::of({1})));
}

TEST_CASE("report lines") {
  CheckReport ok{"main", "A1-sc mu=[1] J={}", true, false, 0.126, ""};
  CHECK(report_line(ok) == "[PASS] main A1-sc mu=[1] J={} (0.13s)");
  CheckReport hit = ok;
  hit.cached = true;
  CHECK(report_line(hit) == "[PASS] main A1-sc mu=[1] J={} (0.13s, cached)");
  CheckReport bad{"main", "k", false, false, 0.0, "witness x\nchain broken"};
  std::string line = report_line(bad);
  CHECK(line.find("[FAIL] main k") == 0);
  CHECK(line.find("\n    witness x") != std::string::npos);
  CHECK(line.find("\n    chain broken") != std::string::npos);
}

TEST_CASE("grid runs, caches, and survives a corrupt cache") {
  std::string dir = temp_dir();
  std::string cache = dir + "/cache.json";
  GridConfig cfg;
  cfg.presets = {"A1-sc"};
  cfg.lmax = 3;
  cfg.checks = {"main", "additivity", "compatibility", "vertexwise", "cone", "hull"};
  cfg.jobs = 2;

  std::vector<CheckReport> first = run_grid(cfg, cache);
  CHECK(first.size() == 31);
  for (const auto& r : first) {
    CHECK(r.pass);
    CHECK(!r.cached);
  }
  std::vector<CheckReport> second = run_grid(cfg, cache);
  REQUIRE(second.size() == first.size());
  for (size_t i = 0; i < second.size(); ++i) {
    CHECK(second[i].pass);
    CHECK(second[i].cached);
    CHECK(second[i].key == first[i].key);
  }

  {
    std::ofstream out(cache);
    out << "{\"version\":99,\"entries\":{}}";
  }
  std::vector<CheckReport> third = run_grid(cfg, cache);
  for (const auto& r : third) {
    CHECK(r.pass);
    CHECK(!r.cached);
  }
  {
    std::ofstream out(cache);
    out << "this is not json";
  }
  std::vector<CheckReport> fourth = run_grid(cfg, cache);
  for (const auto& r : fourth) CHECK(r.pass);
  // the rewrite leaves a loadable cache behind
  std::vector<CheckReport> fifth = run_grid(cfg, cache);
  for (const auto& r : fifth) CHECK(r.cached);
}

TEST_CASE("grid configuration validation") {
  GridConfig cfg;
  cfg.presets = {"A2-sc"};
  cfg.mus = {{1, 1}};
  cfg.checks = {"main"};
  cfg.j_policy = "custom";
  cfg.js = {"", "0"};
  std::string dir = temp_dir();
  std::vector<CheckReport> r = run_grid(cfg, dir + "/c.json");
  CHECK(r.size() == 2);
  for (const auto& rep : r) CHECK(rep.pass);

  GridConfig bad = cfg;
  bad.mus = {{-1, 0}};
  CHECK_THROWS_AS(run_grid(bad, dir + "/c2.json"), std::invalid_argument);
  GridConfig badrank = cfg;
  badrank.mus = {{1}};
  CHECK_THROWS_AS(run_grid(badrank, dir + "/c3.json"), std::invalid_argument);
  GridConfig badj = cfg;
  badj.js = {"0,1,2"};
  CHECK_THROWS_AS(run_grid(badj, dir + "/c4.json"), std::invalid_argument);
  GridConfig badcheck = cfg;
  badcheck.j_policy = "all-proper";
  badcheck.checks = {"nonsense"};
  CHECK_THROWS_AS(run_grid(badcheck, dir + "/c5.json"), std::invalid_argument);
}

TEST_CASE("toml reader") {
  using tomlmini::Value;
  auto vals = tomlmini::parse(
      "# grid\n"
      "presets = [\"A1-sc\", \"A2-sc\"]  # inline comment\n"
      "lmax = 8\n"
      "deep = [[1, 2], [3, -4]]\n"
      "resume = true\n"
      "name = \"he\\\"llo\\n\"\n"
      "\n"
      "jobs = 4\n");
  CHECK(vals.at("lmax").i == 8);
  CHECK(vals.at("jobs").i == 4);
  CHECK(vals.at("resume").b);
  CHECK(vals.at("name").s == "he\"llo\n");
  REQUIRE(vals.at("presets").kind == Value::Kind::array);
  CHECK(vals.at("presets").arr[0].s == "A1-sc");
  CHECK(vals.at("presets").arr[1].s == "A2-sc");
  CHECK(vals.at("deep").arr[1].arr[1].i == -4);

  auto multi = tomlmini::parse("xs = [\n  1,\n  2,\n  3\n]\n");
  CHECK(multi.at("xs").arr.size() == 3);

  CHECK_THROWS_AS(tomlmini::parse("lmax 8\n"), std::runtime_error);
  CHECK_THROWS_AS(tomlmini::parse("s = \"unterminated\n"), std::runtime_error);
  CHECK_THROWS_AS(tomlmini::parse("a = [1, 2\n\n"), std::runtime_error);
  CHECK_THROWS_AS(tomlmini::parse("x = 1 y = 2\n"), std::runtime_error);
}

TEST_CASE("cli enumerates the rank-one set") {
  RunResult r = run_cli("adm --preset A1-sc --mu 1 --format json");
  REQUIRE(r.status == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  REQUIRE(j.is_array());
  CHECK(j.size() == 5);
  std::set<std::string> got;
  for (const auto& e : j) got.insert(e.dump());
  CHECK(got.count("{\"fin\":[[1]],\"trans\":[0]}") == 1);
  CHECK(got.count("{\"fin\":[[1]],\"trans\":[1]}") == 1);
  CHECK(got.count("{\"fin\":[[1]],\"trans\":[-1]}") == 1);
  CHECK(got.count("{\"fin\":[[-1]],\"trans\":[0]}") == 1);
  CHECK(got.count("{\"fin\":[[-1]],\"trans\":[-1]}") == 1);

  RunResult csv = run_cli("adm --preset A1-sc --mu 1 --format csv");
  REQUIRE(csv.status == 0);
  CHECK(count_sub(csv.out, "\n") == 6);
  CHECK(csv.out.find("length,trans,fin_word") == 0);
}

TEST_CASE("cli info and table") {
  RunResult r = run_cli("info --preset A2-sc --mu 1,1");
  REQUIRE(r.status == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["rank"] == 2);
  CHECK(j["weyl_order"] == 6);
  CHECK(j["walls"].size() == 3);
  CHECK(j["base_vertices"].size() == 3);
  CHECK(j["dominant"] == true);
  CHECK(j["translation_length"] == 4);
  CHECK(j["orbit_size"] == 6);

  RunResult t = run_cli("table --preset A1-sc --mu 1");
  REQUIRE(t.status == 0);
  CHECK(t.out.find("preset,mu,J,|Adm^J|,|Perm^{st;J}|,|Adm^st.W_J|\n") == 0);
  REQUIRE(count_sub(t.out, "\n") == 4);
  CHECK(t.out.find("A1-sc,1,-,5,5,5") != std::string::npos);
  CHECK(count_sub(t.out, ",6,6,6") == 2);
}

TEST_CASE("cli queries") {
  RunResult yes =
      run_cli("query --preset A1-sc --mu 1 --set adm-st "
              "--elt '{\"trans\":[1],\"fin\":[[1]]}'");
  REQUIRE(yes.status == 0);
  CHECK(yes.out == "true\n");
  RunResult no =
      run_cli("query --preset A1-sc --mu 1 --set adm "
              "--elt '{\"trans\":[2],\"fin\":[[1]]}'");
  REQUIRE(no.status == 0);
  CHECK(no.out == "false\n");
  RunResult cone =
      run_cli("query --preset A1-sc --mu 1 --set acute-cone --w 0 "
              "--elt '{\"trans\":[1],\"fin\":[[1]]}'");
  REQUIRE(cone.status == 0);
  RunResult missing =
      run_cli("query --preset A1-sc --mu 1 --set obtuse-cone "
              "--elt '{\"trans\":[1],\"fin\":[[1]]}'");
  CHECK(missing.status == 2);
}

TEST_CASE("cli hasse and plot") {
  RunResult h = run_cli("hasse --preset A1-sc --mu 1");
  REQUIRE(h.status == 0);
  CHECK(count_sub(h.out, "label=") == 5);
  CHECK(count_sub(h.out, "->") == 6);

  std::string dir = temp_dir();
  RunResult p = run_cli("plot --preset A2-sc --mu 1,1 --out " + dir + "/a.svg");
  REQUIRE(p.status == 0);
  std::ifstream in(dir + "/a.svg");
  std::string svg((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(count_sub(svg, "<polygon") >= 25);

  RunResult bad = run_cli("plot --preset A3-sc --mu 1,0,0");
  CHECK(bad.status == 2);
}

TEST_CASE("cli usage errors") {
  CHECK(run_cli("adm --preset NOPE --mu 1").status == 2);
  CHECK(run_cli("adm --preset A1-sc --mu x").status == 2);
  CHECK(run_cli("adm --preset A1-sc --mu 1,2").status == 2);
  CHECK(run_cli("adm --preset A1-sc --mu 1 --format yaml").status == 2);
  CHECK(run_cli("--bogus").status == 2);
  CHECK(run_cli("perm-st-j --preset A2-sc --mu 1,1 --j 9").status == 2);
}

TEST_CASE("cli verify runs a small grid") {
  std::string dir = temp_dir();
  {
    std::ofstream out(dir + "/grid.toml");
    out << "presets = [\"A1-sc\"]\n"
        << "lmax = 2\n"
        << "checks = [\"main\", \"compatibility\"]\n"
        << "jobs = 2\n";
  }
  std::string args = "verify --grid " + dir + "/grid.toml --cache " + dir + "/c.json";
  RunResult r = run_cli(args);
  REQUIRE(r.status == 0);
  CHECK(count_sub(r.out, "[PASS]") == 12);
  CHECK(r.out.find("12/12 checks passed") != std::string::npos);
  RunResult again = run_cli(args);
  CHECK(count_sub(again.out, ", cached)") == 12);

  {
    std::ofstream out(dir + "/bad.toml");
    out << "lmax = 2\n";
  }
  CHECK(run_cli("verify --grid " + dir + "/bad.toml --cache " + dir + "/c2.json")
            .status == 2);
  CHECK(run_cli("verify --grid " + dir + "/missing.toml").status == 2);
}

TEST_CASE("default grid file is well formed") {
  std::string path = std::string(ALCOVES_CONFIG_DIR) + "/default.toml";
  auto vals = tomlmini::parse_file(path);
  REQUIRE(vals.at("presets").kind == tomlmini::Value::Kind::array);
  CHECK(vals.at("presets").arr.size() == 6);
  CHECK(vals.at("lmax").i == 8);
}
