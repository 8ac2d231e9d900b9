#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "critcurve/analysis.hpp"
#include "critcurve/config.hpp"
#include "critcurve/csv.hpp"
#include "critcurve/error.hpp"
#include "critcurve/run.hpp"
#include "critcurve/svg.hpp"

using namespace critcurve;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::StartsWith;
namespace fs = std::filesystem;

namespace {

const char* kSimulate = R"(format = critcurve-config v1
[run]
mode = simulate

[system]
n = 1
p = 2
q = 2
eps = 0.01

[grid]
half_length = 200
points = 2048

[time]
t_max = 500
)";

const char* kRates = R"(format = critcurve-config v1
[run]
mode = rates
[system]
n = 1
p = 2
q = 2
s = 0.75
)";

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("critcurve_test_" + name)) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

RunConfig with_out(std::string_view text, const fs::path& out) {
  RunConfig c = parse_config(text);
  c.out_dir = out;
  return c;
}

}  // namespace

TEST_CASE("minimal simulate config parses") {
  const RunConfig c = parse_config(kSimulate);
  CHECK(c.mode == Mode::simulate);
  CHECK(c.system.n == 1);
  CHECK(c.system.p == 2.0);
  CHECK(c.system.eps == 0.01);
  CHECK(c.points == 2048);
  CHECK(c.half_length == 200.0);
  CHECK(c.time.t_max == 500.0);
  CHECK(c.window() == std::pair{100.0, 500.0});
  CHECK_THAT(c.config_hash, StartsWith("fnv1a64:"));
  CHECK(c.config_hash.size() == 8 + 16);
}

TEST_CASE("config errors are specific") {
  CHECK_THROWS_WITH(parse_config(replace(kSimulate, "p = 2", "p = 0.9")), ContainsSubstring("min{p,q} > 1"));
  CHECK_THROWS_WITH(parse_config(replace(kSimulate, "eps = 0.01", "eps = 0.01\nepsloss = 1")),
                    ContainsSubstring("nearest known key is 'eps_loss'"));
  CHECK_THROWS_WITH(parse_config(replace(kSimulate, "t_max = 500", "")), ContainsSubstring("t_max"));
  CHECK_THROWS_WITH(parse_config(replace(kSimulate, "format = critcurve-config v1", "format = other")),
                    ContainsSubstring("critcurve-config v1"));
  CHECK_THROWS_AS(parse_config(replace(kSimulate, "points = 2048", "points = 2000")), Error);
  CHECK_THROWS_AS(parse_config(replace(kSimulate, "[grid]", "[gird]")), Error);
  CHECK_THROWS_AS(parse_config(replace(kSimulate, "q = 2", "q = 2\nq = 3")), Error);
  CHECK_THROWS_AS(parse_config(replace(kSimulate, "mode = simulate", "mode = simulate\n[sweep]\np_list = 2 3")),
                  Error);
  CHECK_THROWS_AS(parse_config(replace(kSimulate, "p = 2", "p = two")), Error);
}

TEST_CASE("unknown key suggests the nearest one") {
  const std::string text = replace(kSimulate, "[time]", "[time]\ndampingg = 0.5");
  try {
    parse_config(text);
    FAIL("expected an error");
  } catch (const Error& e) {
    const std::string msg = e.what();
    CHECK_THAT(msg, ContainsSubstring("dampingg"));
    CHECK_THAT(msg, ContainsSubstring("nearest known key is 't_max'"));
  }
}

TEST_CASE("config hash follows the exact text") {
  CHECK(parse_config(kRates).config_hash == parse_config(kRates).config_hash);
  CHECK(parse_config(kRates).config_hash != parse_config(std::string(kRates) + "# comment\n").config_hash);
  CHECK(config_hash("") == "fnv1a64:cbf29ce484222325");
}

TEST_CASE("csv helpers") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1e-300) == "1e-300");
  CHECK(format_optional(std::nullopt).empty());
  CsvTable t({"a", "b"});
  t.add({"1", "2"});
  CHECK_THROWS_AS(t.add({"1"}), Error);
  CHECK_THROWS_AS(t.add({"1,2", "3"}), Error);
  CHECK(t.render("critcurve 0.1.0 config-hash=x") == "# critcurve 0.1.0 config-hash=x\na,b\n1,2\n");
  CHECK(banner("fnv1a64:00") == "critcurve 0.1.0 config-hash=fnv1a64:00");
}

TEST_CASE("rates mode writes six rows") {
  TempDir dir("rates");
  std::ostringstream log;
  REQUIRE(run(with_out(kRates, dir.path), log) == 0);
  const auto rows = lines(slurp(dir.path / "rates.csv"));
  REQUIRE(rows.size() == 8);
  CHECK_THAT(rows[0], StartsWith("# critcurve 0.1.0 config-hash=fnv1a64:"));
  CHECK(rows[1] == "norm_name,predicted_exponent,fitted_slope,stderr,one_sided_pass");
  const RateTable r = predicted_rates(1, 2, 2, 0.75, 0.01);
  for (std::size_t i = 0; i < 6; ++i)
    CHECK(rows[i + 2] == r.entries[i].norm + "," + format_number(r.entries[i].exponent) + ",,,");
}

TEST_CASE("simulate with eps = 0 writes a zero trace") {
  TempDir dir("zero");
  std::string text = replace(kSimulate, "eps = 0.01", "eps = 0");
  text = replace(text, "t_max = 500", "t_max = 5");
  std::ostringstream log;
  REQUIRE(run(with_out(text, dir.path), log) == 0);
  const auto rows = lines(slurp(dir.path / "trace.csv"));
  REQUIRE(rows.size() == 2 + 51);
  CHECK(rows[1] == "t,l2_ut,lq_ut,hs_ut,lp_v,l2_v,hs_v,lowfreq_energy,highfreq_energy");
  for (std::size_t i = 2; i < rows.size(); ++i) CHECK_THAT(rows[i], ContainsSubstring(",0,0,0,0,0,0,0,0"));
}

TEST_CASE("outputs are byte stable") {
  TempDir a("stable_a"), b("stable_b");
  std::string text = replace(kSimulate, "t_max = 500", "t_max = 20");
  text = replace(text, "points = 2048", "points = 512");
  std::ostringstream log;
  REQUIRE(run(with_out(text, a.path), log) == 0);
  REQUIRE(run(with_out(text, b.path), log) == 0);
  for (const char* f : {"trace.csv", "rates.csv"}) CHECK(slurp(a.path / f) == slurp(b.path / f));
}

TEST_CASE("sweep output with svg, serial and parallel") {
  const std::string text = R"(format = critcurve-config v1
[run]
mode = sweep
svg = true
[system]
n = 1
eps = 0.3
[data]
blowup_admissible = true
[grid]
half_length = 64
points = 256
[time]
t_max = 200
sample_every = 5
[sweep]
p_list = 1.1 3
q_list = 1.1 3
)";
  TempDir serial("sweep_1"), parallel("sweep_2");
  std::ostringstream log;
  RunConfig c = with_out(text, serial.path);
  REQUIRE(run(c, log) == 0);
  c.out_dir = parallel.path;
  c.jobs = 2;
  REQUIRE(run(c, log) == 0);
  const std::string csv = slurp(serial.path / "sweep.csv");
  CHECK(csv == slurp(parallel.path / "sweep.csv"));
  const auto rows = lines(csv);
  REQUIRE(rows.size() == 2 + 4);
  CHECK(rows[1] == "p,q,predicted_verdict,observed_verdict,margin,t_stop,peak_norm,l2_v_slope,in_band,agree");
  CHECK_FALSE(fs::exists(serial.path / "sweep_errors.csv"));

  const std::string svg = slurp(serial.path / "phase_diagram.svg");
  CHECK_THAT(svg, StartsWith("<!-- critcurve 0.1.0 config-hash="));
  CHECK_THAT(svg, ContainsSubstring("</svg>"));
  CHECK_THAT(svg, ContainsSubstring("polyline"));
}

TEST_CASE("phase diagram curves") {
  const auto crit = critical_curve(1, 4.0, 4.0);
  CHECK(crit.size() == 200);
  for (const auto& [p, q] : crit) CHECK(p * q == Catch::Approx(3.0));
  const auto gam = gamma_curve(1, 4.0, 4.0);
  CHECK(gam.size() == 200);
  for (const auto& [p, q] : gam) CHECK(gamma_curve_value(p, q) == Catch::Approx(0.5));
  CHECK(gamma_level_q(1, 3.0).value() == Catch::Approx(3.0));
}

TEST_CASE("ineq-check writes one row per sample") {
  const std::string text = R"(format = critcurve-config v1
[run]
mode = ineq-check
seed = 9
[system]
n = 1
[grid]
half_length = 20
points = 256
[ineq]
proposition = embedding
count = 12
q = 2
s1 = 0.25
s2 = 1
)";
  TempDir dir("ineq");
  std::ostringstream log;
  REQUIRE(run(with_out(text, dir.path), log) == 0);
  const auto rows = lines(slurp(dir.path / "ineq.csv"));
  REQUIRE(rows.size() == 2 + 12);
  CHECK(rows[1] == "config,sample_seed,ratio");
  CHECK_THAT(rows[2], StartsWith("embedding("));
  CHECK_THAT(log.str(), ContainsSubstring("empirical, torus"));
}

TEST_CASE("shipped configs parse") {
  int count = 0;
  for (const auto& entry : fs::directory_iterator(CRITCURVE_CONFIG_DIR)) {
    if (entry.path().extension() != ".cfg") continue;
    INFO(entry.path().string());
    CHECK_NOTHROW(load_config(entry.path()));
    ++count;
  }
  CHECK(count >= 9);
}
