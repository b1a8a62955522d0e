#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "metaprio/json_io.hpp"
#include "metaprio/parser.hpp"
#include "metaprio/printer.hpp"

using namespace metaprio;
using io::ConfigError;

namespace {

// Every artifact writer must produce the same bytes on every run: sorted keys,
// LF line endings, exactly one trailing newline.
void check_stable_bytes(const std::string& text) {
  REQUIRE(!text.empty());
  CHECK(text.back() == '\n');
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.substr(text.size() - 2) != "\n\n");
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

// Write, then load back through the file API so the disk round trip is covered.
std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = temp_path(name);
  io::write_file(path, content);
  return path;
}

const char* kSumSrc =
    "fn sum(a: [int]) -> int {"
    "  total = 0;"
    "  i = 0;"
    "  while (i < len(a)) { total = total + a[i]; i = i + 1 }"
    "  return total"
    "}";

mt::TestSuite sample_suite() {
  mt::TestSuite s;
  s.role = mt::SuiteRole::PrioritizingSource;
  mt::TestCase t1;
  t1.id = "t1";
  t1.entry = "sum";
  t1.args = {exec::Value::of_array({1, 2, 3})};
  mt::TestCase t2;
  t2.id = "t2";
  t2.entry = "sum";
  t2.args = {exec::Value::of_array({})};
  s.cases = {t1, t2};
  return s;
}

}  // namespace

TEST_CASE("file helpers create parents and report missing files") {
  std::string dir = temp_path("json_io_nested");
  std::filesystem::remove_all(dir);
  std::string path = dir + "/a/b/c.txt";
  io::write_file(path, "hello\n");
  CHECK(io::read_file(path) == "hello\n");
  CHECK_THROWS_AS(io::read_file(dir + "/missing.txt"), ConfigError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("digest is stable and content sensitive") {
  CHECK(io::digest("abc") == io::digest("abc"));
  CHECK(io::digest("abc") != io::digest("abd"));
  CHECK(io::digest("").size() == 16);
}

TEST_CASE("test suite survives a JSON round trip") {
  mt::TestSuite s = sample_suite();
  std::string text = io::test_suite_json(s);
  check_stable_bytes(text);

  std::string path = write_temp("suite_rt.json", text);
  mt::TestSuite back = io::load_test_suite(path);
  CHECK(back.role == mt::SuiteRole::PrioritizingSource);
  REQUIRE(back.cases.size() == 2);
  CHECK(back.cases[0].id == "t1");
  CHECK(back.cases[0].entry == "sum");
  REQUIRE(back.cases[0].args.size() == 1);
  CHECK(back.cases[0].args[0] == exec::Value::of_array({1, 2, 3}));
  CHECK(back.cases[1].args[0] == exec::Value::of_array({}));

  // Serializing the loaded suite reproduces the original bytes.
  CHECK(io::test_suite_json(back) == text);
  std::remove(path.c_str());
}

TEST_CASE("test suite serialization covers all three value types") {
  mt::TestSuite s;
  s.role = mt::SuiteRole::ValidationSource;
  mt::TestCase tc;
  tc.id = "mixed";
  tc.entry = "f";
  tc.args = {exec::Value::of_int(-7), exec::Value::of_bool(true),
             exec::Value::of_array({5})};
  s.cases = {tc};

  std::string path = write_temp("suite_vals.json", io::test_suite_json(s));
  mt::TestSuite back = io::load_test_suite(path);
  REQUIRE(back.cases.size() == 1);
  CHECK(back.cases[0].args[0] == exec::Value::of_int(-7));
  CHECK(back.cases[0].args[1] == exec::Value::of_bool(true));
  CHECK(back.cases[0].args[2] == exec::Value::of_array({5}));
  std::remove(path.c_str());
}

TEST_CASE("suite loader reports the offending path") {
  std::string path = write_temp("suite_bad.json",
                                "{\"role\": \"prioritizing_source\", \"cases\": "
                                "[{\"id\": \"t\", \"entry\": \"f\", \"args\": "
                                "[{\"type\": \"int\", \"value\": \"oops\"}]}]}\n");
  try {
    io::load_test_suite(path);
    FAIL("expected ConfigError");
  } catch (const ConfigError& ex) {
    CHECK(std::string(ex.what()).find("$.cases[0].args[0].value") != std::string::npos);
  }
  std::remove(path.c_str());

  path = write_temp("suite_bad2.json", "{\"cases\": []}\n");
  CHECK_THROWS_AS(io::load_test_suite(path), ConfigError);
  std::remove(path.c_str());

  path = write_temp("suite_bad3.json", "not json at all\n");
  CHECK_THROWS_AS(io::load_test_suite(path), ConfigError);
  std::remove(path.c_str());
}

TEST_CASE("MR catalog survives a JSON round trip") {
  std::vector<mt::MrSpec> mrs(2);
  mrs[0].id = "mr_reverse";
  mrs[0].transform = {"reverse", 0, 0, 0};
  mrs[0].relation = {"eq", 0, ""};
  mrs[1].id = "mr_offset";
  mrs[1].transform = {"add_constant", 7, 0, 0};
  mrs[1].relation = {"eq_offset", 0, "7 * n"};

  std::string text = io::mrs_json(mrs);
  check_stable_bytes(text);
  std::string path = write_temp("mrs_rt.json", text);
  auto back = io::load_mrs(path);
  REQUIRE(back.size() == 2);
  CHECK(back[0].id == "mr_reverse");
  CHECK(back[0].transform.name == "reverse");
  CHECK(back[1].transform.k == 7);
  CHECK(back[1].relation.expr == "7 * n");
  CHECK(io::mrs_json(back) == text);
  std::remove(path.c_str());
}

TEST_CASE("MR loader fills optional fields with defaults") {
  std::string path = write_temp(
      "mrs_minimal.json",
      "{\"mrs\": [{\"id\": \"m\", \"transform\": {\"name\": \"reverse\"}, "
      "\"relation\": {\"name\": \"eq\"}}]}\n");
  auto back = io::load_mrs(path);
  REQUIRE(back.size() == 1);
  CHECK(back[0].transform.k == 0);
  CHECK(back[0].transform.seed == 0);
  CHECK(back[0].relation.expr == "");
  std::remove(path.c_str());

  path = write_temp("mrs_bad.json", "{\"mrs\": [{\"id\": \"m\"}]}\n");
  try {
    io::load_mrs(path);
    FAIL("expected ConfigError");
  } catch (const ConfigError& ex) {
    CHECK(std::string(ex.what()).find("$.mrs[0].transform") != std::string::npos);
  }
  std::remove(path.c_str());
}

TEST_CASE("mutants round trip through printed source") {
  lang::Program p = lang::parse(kSumSrc);
  auto mutants = mutation::generate_mutants(p, {});
  REQUIRE(!mutants.empty());
  mutants[0].status = mutation::MutantStatus::Viable;

  std::string text = io::mutants_json(p, mutants);
  check_stable_bytes(text);
  std::string path = write_temp("mutants_rt.json", text);
  auto back = io::load_mutants(path);
  REQUIRE(back.size() == mutants.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].id == mutants[i].id);
    CHECK(back[i].op == mutants[i].op);
    CHECK(back[i].stmt_id == mutants[i].stmt_id);
    CHECK(back[i].variant == mutants[i].variant);
    CHECK(back[i].status == mutants[i].status);
    // The reloaded program prints byte-identically to the one we saved.
    CHECK(lang::pretty_print(back[i].program) == lang::pretty_print(mutants[i].program));
  }
  std::remove(path.c_str());
}

TEST_CASE("mutant loader rejects sources that do not parse") {
  std::string path = write_temp(
      "mutants_bad.json",
      "{\"program_digest\": \"x\", \"mutants\": [{\"id\": \"m001\", "
      "\"operator\": \"AOR\", \"stmt\": 1, \"path\": \"stmt\", \"variant\": \"v\", "
      "\"description\": \"d\", \"status\": \"viable\", \"source\": \"fn ( {\"}]}\n");
  try {
    io::load_mutants(path);
    FAIL("expected ConfigError");
  } catch (const ConfigError& ex) {
    CHECK(std::string(ex.what()).find("$.mutants[0].source") != std::string::npos);
  }
  std::remove(path.c_str());
}

TEST_CASE("kill matrix round trips exactly") {
  mutation::KillMatrix km;
  km.role = mutation::MatrixRole::Prioritizing;
  km.mr_ids = {"mr_a", "mr_b", "mr_c"};
  km.mutant_ids = {"m001", "m002"};
  km.kills = {{true, false}, {false, false}, {true, true}};
  km.mr_cost_steps = {120, 48, 300};

  std::string text = io::kill_matrix_json(km);
  check_stable_bytes(text);
  std::string path = write_temp("km_rt.json", text);
  auto back = io::load_kill_matrix(path);
  CHECK(back.role == mutation::MatrixRole::Prioritizing);
  CHECK(back.mr_ids == km.mr_ids);
  CHECK(back.mutant_ids == km.mutant_ids);
  CHECK(back.kills == km.kills);
  CHECK(back.mr_cost_steps == km.mr_cost_steps);
  CHECK(io::kill_matrix_json(back) == text);
  std::remove(path.c_str());
}

TEST_CASE("kill matrix loader enforces rectangular shape") {
  std::string path = write_temp(
      "km_ragged.json",
      "{\"role\": \"validation\", \"mr_ids\": [\"a\", \"b\"], "
      "\"mutant_ids\": [\"m1\"], \"kills\": [[true], [true, false]], "
      "\"mr_cost_steps\": [1, 2]}\n");
  try {
    io::load_kill_matrix(path);
    FAIL("expected ConfigError");
  } catch (const ConfigError& ex) {
    CHECK(std::string(ex.what()).find("$.kills[1]") != std::string::npos);
  }
  std::remove(path.c_str());

  path = write_temp("km_costs.json",
                    "{\"role\": \"validation\", \"mr_ids\": [\"a\"], "
                    "\"mutant_ids\": [], \"kills\": [[]], \"mr_cost_steps\": []}\n");
  CHECK_THROWS_AS(io::load_kill_matrix(path), ConfigError);
  std::remove(path.c_str());
}

TEST_CASE("scores serialize rationals as fixed six-digit decimals") {
  centrality::ScoreBreakdown s;
  s.mr = "mr_x";
  s.ta_total = 16;
  s.ti_total = 34;
  s.tfp_total = Rational(35, 12);
  s.quality = Rational(635, 12);
  s.per_method["sum"] = {16, 34, Rational(35, 12)};

  std::string text = io::scores_json({s}, "deadbeef00000000");
  check_stable_bytes(text);
  CHECK(text.find("\"2.916667\"") != std::string::npos);   // 35/12
  CHECK(text.find("\"52.916667\"") != std::string::npos);  // 635/12

  std::string path = write_temp("scores_rt.json", text);
  auto back = io::load_scores(path);
  REQUIRE(back.size() == 1);
  CHECK(back[0].mr == "mr_x");
  CHECK(back[0].ta_total == 16);
  CHECK(back[0].ti_total == 34);
  // from_decimal parses the printed form exactly.
  CHECK(back[0].tfp_total == Rational::from_decimal("2.916667"));
  CHECK(back[0].quality == Rational::from_decimal("52.916667"));
  std::remove(path.c_str());
}

TEST_CASE("ordering round trips with and without a seed") {
  prioritize::Ordering o;
  o.strategy = prioritize::Strategy::StmtCoverage;
  o.sequence = {"mr_b", "mr_a", "mr_c"};
  o.seed = 42;
  o.provenance["profiles"] = "0123456789abcdef";

  std::string text = io::ordering_json(o);
  check_stable_bytes(text);
  std::string path = write_temp("ordering_rt.json", text);
  auto back = io::load_ordering(path);
  CHECK(back.strategy == prioritize::Strategy::StmtCoverage);
  CHECK(back.sequence == o.sequence);
  REQUIRE(back.seed.has_value());
  CHECK(*back.seed == 42);
  CHECK(back.provenance.at("profiles") == "0123456789abcdef");
  CHECK(io::ordering_json(back) == text);
  std::remove(path.c_str());

  // Unseeded strategies write an explicit null and load back as nullopt.
  prioritize::Ordering c;
  c.strategy = prioritize::Strategy::Centrality;
  c.sequence = {"mr_a"};
  std::string ctext = io::ordering_json(c);
  CHECK(ctext.find("\"seed\": null") != std::string::npos);
  path = write_temp("ordering_null.json", ctext);
  auto cback = io::load_ordering(path);
  CHECK(!cback.seed.has_value());
  std::remove(path.c_str());
}

TEST_CASE("profiles, MR runs, and analysis artifacts are stable JSON") {
  lang::Program p = lang::parse(kSumSrc);
  auto prof = exec::execute(p, "sum", {exec::Value::of_array({1, 2, 3})}, 100000, "t1");
  std::string ptext = io::profiles_json({prof}, p.source_digest);
  check_stable_bytes(ptext);
  CHECK(ptext.find("\"status\": \"ok\"") != std::string::npos);
  CHECK(ptext.find("\"test_id\": \"t1\"") != std::string::npos);

  mt::MrSpec mr;
  mr.id = "mr_reverse";
  mr.transform = {"reverse", 0, 0, 0};
  mr.relation = {"eq", 0, ""};
  auto run = mt::run_mr(p, mr, sample_suite());
  std::string rtext = io::mr_runs_json({run}, p.source_digest);
  check_stable_bytes(rtext);
  CHECK(rtext.find("\"mr\": \"mr_reverse\"") != std::string::npos);
  CHECK(rtext.find("\"satisfied\"") != std::string::npos);

  std::string atext = io::analysis_json(p);
  check_stable_bytes(atext);
  CHECK(atext.find("\"sum\"") != std::string::npos);
  CHECK(atext.find("\"distance_to_output\"") != std::string::npos);

  // Rerunning any of the writers gives identical bytes.
  CHECK(io::profiles_json({prof}, p.source_digest) == ptext);
  CHECK(io::mr_runs_json({run}, p.source_digest) == rtext);
  CHECK(io::analysis_json(p) == atext);

  // MR runs reload with verdicts, coverage, and cost intact.
  std::string path = write_temp("mr_runs_rt.json", rtext);
  auto back = io::load_mr_runs(path);
  REQUIRE(back.size() == 1);
  CHECK(back[0].mr_id == "mr_reverse");
  CHECK(back[0].verdicts.size() == run.verdicts.size());
  CHECK(back[0].verdicts[0].kind == run.verdicts[0].kind);
  CHECK(back[0].coverage.statements == run.coverage.statements);
  CHECK(back[0].coverage.branches == run.coverage.branches);
  CHECK(back[0].coverage.program_digest == p.source_digest);
  CHECK(back[0].cost_steps == run.cost_steps);
  CHECK(io::mr_runs_json(back, p.source_digest) == rtext);
  std::remove(path.c_str());
}

TEST_CASE("report and baseline writers emit curves with one-decimal percents") {
  evaluate::EvaluationReport rep;
  rep.strategy = "centrality";
  rep.sequence = {"mr_a", "mr_b"};
  rep.curve = {Rational(200, 3), Rational(100)};
  rep.effective_size["5.0"] = 1;
  rep.apfd = Rational(7, 8);
  rep.avg_time_steps = Rational(20);
  rep.killable_count = 3;
  rep.mr_count = 2;

  std::string text = io::report_json(rep);
  check_stable_bytes(text);
  CHECK(text.find("\"66.7\"") != std::string::npos);
  CHECK(text.find("\"100.0\"") != std::string::npos);
  CHECK(text.find("\"0.875000\"") != std::string::npos);

  evaluate::BaselineAverage avg;
  avg.curve = {Rational(75), Rational(100)};
  avg.apfd = Rational(3, 4);
  avg.avg_time_steps = Rational(15, 2);
  avg.ordering_count = 100;
  std::string btext = io::baseline_json(avg);
  check_stable_bytes(btext);
  CHECK(btext.find("\"ordering_count\": 100") != std::string::npos);

  std::string csv = io::curve_csv(rep.curve);
  CHECK(csv == "set_size,pct_killed\n1,66.7\n2,100.0\n");
}

TEST_CASE("writers emit keys in sorted order") {
  mutation::KillMatrix km;
  km.role = mutation::MatrixRole::Validation;
  km.mr_ids = {"a"};
  km.mutant_ids = {"m"};
  km.kills = {{true}};
  km.mr_cost_steps = {5};
  std::string text = io::kill_matrix_json(km);
  // Top-level keys appear alphabetically.
  CHECK(text.find("\"kills\"") < text.find("\"mr_cost_steps\""));
  CHECK(text.find("\"mr_cost_steps\"") < text.find("\"mr_ids\""));
  CHECK(text.find("\"mr_ids\"") < text.find("\"mutant_ids\""));
  CHECK(text.find("\"mutant_ids\"") < text.find("\"role\""));
}
