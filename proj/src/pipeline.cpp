#include "metaprio/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <set>

#include <json.hpp>

#include "metaprio/centrality.hpp"
#include "metaprio/parser.hpp"
#include "metaprio/pdg.hpp"

namespace metaprio::pipeline {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  if (path.is_absolute()) return path.lexically_normal().string();
  return (base / path).lexically_normal().string();
}

// Part of the per-run artifact bookkeeping: write one file into the output
// directory and remember its digest for provenance and the summary.
struct Emitter {
  std::string dir;
  std::map<std::string, std::string>* digests;

  void operator()(const std::string& name, const std::string& content) const {
    io::write_file((fs::path(dir) / name).string(), content);
    (*digests)[name] = io::digest(content);
  }
};

std::string pct1(const Rational& r) { return r.to_decimal(1); }

}  // namespace

PipelineConfig load_config(const std::string& path) {
  json j;
  try {
    j = json::parse(io::read_file(path));
  } catch (const json::parse_error& ex) {
    throw io::ConfigError(path + ": " + ex.what());
  }
  if (!j.is_object()) throw io::ConfigError("$: expected an object");

  auto req_str = [&](const char* key) {
    if (!j.contains(key) || !j.at(key).is_string()) {
      throw io::ConfigError(std::string("$.") + key + ": expected a string");
    }
    return j.at(key).get<std::string>();
  };

  PipelineConfig cfg;
  fs::path base = fs::path(path).parent_path();
  cfg.subject = resolve(base, req_str("subject"));
  cfg.mrs = resolve(base, req_str("mrs"));
  cfg.prioritizing_tests = resolve(base, req_str("prioritizing_tests"));
  cfg.validation_tests = resolve(base, req_str("validation_tests"));
  cfg.output_dir = resolve(base, req_str("output_dir"));

  if (j.contains("operators")) {
    if (!j.at("operators").is_array()) throw io::ConfigError("$.operators: expected an array");
    cfg.operators.clear();
    for (const auto& op : j.at("operators")) {
      if (!op.is_string()) throw io::ConfigError("$.operators: expected strings");
      try {
        cfg.operators.insert(mutation::operator_from_string(op.get<std::string>()));
      } catch (const lang::Error& ex) {
        throw io::ConfigError(std::string("$.operators: ") + ex.what());
      }
    }
  }
  if (j.contains("aor_full")) {
    if (!j.at("aor_full").is_boolean()) throw io::ConfigError("$.aor_full: expected a boolean");
    cfg.aor_full = j.at("aor_full").get<bool>();
  }
  if (j.contains("step_limit")) {
    if (!j.at("step_limit").is_number_integer() || j.at("step_limit").get<long long>() <= 0) {
      throw io::ConfigError("$.step_limit: expected a positive integer");
    }
    cfg.step_limit = j.at("step_limit").get<long long>();
  }
  if (j.contains("seeds")) {
    const json& s = j.at("seeds");
    if (!s.is_object()) throw io::ConfigError("$.seeds: expected an object");
    if (s.contains("coverage_tie")) {
      cfg.coverage_tie_seed = s.at("coverage_tie").get<std::uint64_t>();
    }
    if (s.contains("random_baseline")) {
      cfg.random_baseline_seed = s.at("random_baseline").get<std::uint64_t>();
    }
  }
  if (j.contains("thresholds")) {
    if (!j.at("thresholds").is_array()) throw io::ConfigError("$.thresholds: expected an array");
    for (const auto& t : j.at("thresholds")) {
      if (!t.is_string()) throw io::ConfigError("$.thresholds: expected decimal strings");
      try {
        Rational::from_decimal(t.get<std::string>());
      } catch (const std::exception& ex) {
        throw io::ConfigError(std::string("$.thresholds: ") + ex.what());
      }
      cfg.thresholds.push_back(t.get<std::string>());
    }
  }
  if (j.contains("random_count")) {
    if (!j.at("random_count").is_number_integer() || j.at("random_count").get<int>() < 1) {
      throw io::ConfigError("$.random_count: expected a positive integer");
    }
    cfg.random_count = j.at("random_count").get<int>();
  }
  return cfg;
}

PipelineResult run_pipeline(const PipelineConfig& cfg, Parallelism par) {
  lang::Program p = lang::parse(io::read_file(cfg.subject));

  std::vector<mt::MrSpec> mrs = io::load_mrs(cfg.mrs);
  if (mrs.empty()) throw io::ConfigError(cfg.mrs + ": catalog holds no MRs");
  {
    std::set<std::string> seen;
    for (const auto& mr : mrs) {
      if (!seen.insert(mr.id).second) {
        throw io::ConfigError(cfg.mrs + ": duplicate MR id '" + mr.id + "'");
      }
    }
  }

  mt::TestSuite tsp = io::load_test_suite(cfg.prioritizing_tests);
  mt::TestSuite tsv = io::load_test_suite(cfg.validation_tests);
  if (tsp.role != mt::SuiteRole::PrioritizingSource) {
    throw io::ConfigError(cfg.prioritizing_tests + ": role must be prioritizing_source");
  }
  if (tsv.role != mt::SuiteRole::ValidationSource) {
    throw io::ConfigError(cfg.validation_tests + ": role must be validation_source");
  }

  // The two suites must not share test cases, otherwise the validation
  // matrix would partly measure what prioritization already saw.
  std::set<std::string> sp_ids;
  for (const auto& tc : tsp.cases) {
    if (!sp_ids.insert(tc.id).second) {
      throw io::ConfigError(cfg.prioritizing_tests + ": duplicate test id '" + tc.id + "'");
    }
  }
  std::set<std::string> sv_ids;
  for (const auto& tc : tsv.cases) {
    if (!sv_ids.insert(tc.id).second) {
      throw io::ConfigError(cfg.validation_tests + ": duplicate test id '" + tc.id + "'");
    }
    if (sp_ids.count(tc.id)) {
      throw DisjointnessError("test id '" + tc.id + "' appears in both suites");
    }
  }

  PipelineResult res;
  res.program_digest = p.source_digest;
  Emitter emit{cfg.output_dir, &res.artifact_digests};

  // Static analysis and plain execution profiles of the prioritizing suite.
  emit("analysis.json", io::analysis_json(p));
  {
    std::vector<exec::ExecutionProfile> profiles;
    for (const auto& tc : tsp.cases) {
      profiles.push_back(exec::execute(p, tc.entry, tc.args, cfg.step_limit, tc.id));
    }
    emit("profiles_tsp.json", io::profiles_json(profiles, p.source_digest));
  }

  // MR runs over the prioritizing suite drive both the centrality scores and
  // the coverage-greedy strategies.
  std::vector<mt::MrRunResult> runs;
  for (const auto& mr : mrs) {
    runs.push_back(mt::run_mr(p, mr, tsp, cfg.step_limit));
  }
  emit("mr_runs_tsp.json", io::mr_runs_json(runs, p.source_digest));

  std::map<std::string, dep::Pdg> pdgs;
  std::map<std::string, lang::Cfg> cfgs;
  for (const auto& f : p.functions) {
    pdgs.emplace(f.name, dep::compute_pdg(f));
    cfgs.emplace(f.name, lang::build_cfg(f));
  }
  std::vector<centrality::ScoreBreakdown> scores;
  for (const auto& run : runs) {
    scores.push_back(centrality::mr_quality_score(p, pdgs, cfgs, run));
  }
  emit("scores.json", io::scores_json(scores, p.source_digest));

  // Mutant pool: generate, screen against the prioritizing suite, and keep
  // the viable ones for both kill matrices.
  mutation::GenOptions gen;
  gen.operators = cfg.operators;
  gen.aor_full = cfg.aor_full;
  std::vector<mutation::Mutant> mutants = mutation::generate_mutants(p, gen);
  mutation::screen_mutants(mutants, mrs, tsp, cfg.step_limit, par);
  emit("mutants.json", io::mutants_json(p, mutants));

  std::vector<mutation::Mutant> viable;
  for (const auto& m : mutants) {
    if (m.status == mutation::MutantStatus::Viable) viable.push_back(m);
  }
  res.candidate_count = static_cast<int>(mutants.size());
  res.viable_count = static_cast<int>(viable.size());

  mutation::KillMatrix km_fp = mutation::build_kill_matrix(
      p, viable, mrs, tsp, mutation::MatrixRole::Prioritizing, cfg.step_limit, par);
  mutation::KillMatrix km_fv = mutation::build_kill_matrix(
      p, viable, mrs, tsv, mutation::MatrixRole::Validation, cfg.step_limit, par);
  emit("km_fp.json", io::kill_matrix_json(km_fp));
  emit("km_fv.json", io::kill_matrix_json(km_fv));
  res.killable_prioritizing = km_fp.killable_count();
  res.killable_validation = km_fv.killable_count();

  // One ordering per strategy. Provenance records which artifact each
  // ordering was derived from.
  std::map<std::string, exec::CoverageUnion> mr_coverage;
  for (const auto& run : runs) mr_coverage[run.mr_id] = run.coverage;

  prioritize::Ordering cen = prioritize::centrality_order(scores);
  cen.provenance["scores.json"] = res.artifact_digests.at("scores.json");
  prioritize::Ordering fb = prioritize::fault_based_order(km_fp);
  fb.provenance["km_fp.json"] = res.artifact_digests.at("km_fp.json");
  prioritize::Ordering sc = prioritize::coverage_order(
      mr_coverage, prioritize::CoverageUnit::Statement, cfg.coverage_tie_seed);
  sc.provenance["mr_runs_tsp.json"] = res.artifact_digests.at("mr_runs_tsp.json");
  prioritize::Ordering bc = prioritize::coverage_order(
      mr_coverage, prioritize::CoverageUnit::Branch, cfg.coverage_tie_seed);
  bc.provenance["mr_runs_tsp.json"] = res.artifact_digests.at("mr_runs_tsp.json");

  std::vector<Rational> thresholds;
  for (const auto& t : cfg.thresholds) thresholds.push_back(Rational::from_decimal(t));

  for (const auto& o : {cen, fb, sc, bc}) {
    std::string name = prioritize::to_string(o.strategy);
    emit("ordering_" + name + ".json", io::ordering_json(o));
    evaluate::EvaluationReport rep = evaluate::evaluate_ordering(o, km_fv, thresholds);
    emit("report_" + name + ".json", io::report_json(rep));
    emit("curve_" + name + ".csv", io::curve_csv(rep.curve));
    res.reports.push_back(std::move(rep));
  }

  // Random baseline: many shuffles of the same MR set, averaged pointwise.
  std::vector<prioritize::Ordering> rnd =
      prioritize::random_orders(km_fv.mr_ids, cfg.random_count, cfg.random_baseline_seed);
  {
    json seqs = json::array();
    for (const auto& o : rnd) seqs.push_back(o.sequence);
    json jr{{"seed", cfg.random_baseline_seed},
            {"strategy", "random"},
            {"sequences", seqs}};
    emit("orderings_random.json", jr.dump(2) + "\n");
  }
  res.baseline = evaluate::baseline_average(rnd, km_fv, par);
  emit("baseline_average.json", io::baseline_json(res.baseline));
  emit("curve_random_mean.csv", io::curve_csv(res.baseline.curve));

  // Summary, machine- and human-readable. Written last so its artifact map
  // covers everything else.
  json strategies;
  for (const auto& rep : res.reports) {
    json eff;
    for (const auto& [t, m] : rep.effective_size) eff[t] = m;
    strategies[rep.strategy] = {{"apfd", rep.apfd.to_decimal(6)},
                                {"avg_time_steps", rep.avg_time_steps.to_decimal(6)},
                                {"effective_size", eff},
                                {"final_pct", pct1(rep.curve.back())},
                                {"sequence", rep.sequence}};
  }
  json summary{{"subject_digest", p.source_digest},
               {"mr_count", static_cast<int>(mrs.size())},
               {"candidates", res.candidate_count},
               {"viable", res.viable_count},
               {"killable_prioritizing", res.killable_prioritizing},
               {"killable_validation", res.killable_validation},
               {"strategies", strategies},
               {"random_baseline",
                {{"apfd", res.baseline.apfd.to_decimal(6)},
                 {"avg_time_steps", res.baseline.avg_time_steps.to_decimal(6)},
                 {"ordering_count", res.baseline.ordering_count}}},
               {"artifacts", res.artifact_digests}};
  emit("summary.json", summary.dump(2) + "\n");

  std::string txt;
  char line[256];
  std::snprintf(line, sizeof line, "subject digest: %s\n", p.source_digest.c_str());
  txt += line;
  std::snprintf(line, sizeof line,
                "mutants: %d candidates, %d viable; killable: %d prioritizing, %d validation\n\n",
                res.candidate_count, res.viable_count, res.killable_prioritizing,
                res.killable_validation);
  txt += line;
  std::snprintf(line, sizeof line, "%-16s %10s %14s %8s\n", "strategy", "APFD",
                "avg steps", "final%");
  txt += line;
  for (const auto& rep : res.reports) {
    std::snprintf(line, sizeof line, "%-16s %10s %14s %8s\n", rep.strategy.c_str(),
                  rep.apfd.to_decimal(6).c_str(), rep.avg_time_steps.to_decimal(6).c_str(),
                  pct1(rep.curve.back()).c_str());
    txt += line;
  }
  std::snprintf(line, sizeof line, "%-16s %10s %14s %8s  (mean of %d)\n", "random",
                res.baseline.apfd.to_decimal(6).c_str(),
                res.baseline.avg_time_steps.to_decimal(6).c_str(),
                pct1(res.baseline.curve.back()).c_str(), res.baseline.ordering_count);
  txt += line;
  emit("summary.txt", txt);

  return res;
}

}  // namespace metaprio::pipeline
