// Command-line front end. Each subcommand wraps one library stage and speaks
// the same JSON schemas the pipeline writes, so stages can be mixed and
// matched or replaced by external producers.
//
// Exit codes: 0 success, 2 bad config/arguments, 3 static analysis errors in
// the subject program, 4 execution-stage failures.

#include <cstdio>
#include <exception>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "metaprio/centrality.hpp"
#include "metaprio/json_io.hpp"
#include "metaprio/parser.hpp"
#include "metaprio/pdg.hpp"
#include "metaprio/pipeline.hpp"

using namespace metaprio;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kAnalysisError = 3;
constexpr int kExecutionError = 4;

void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::fputs(content.c_str(), stdout);
  } else {
    io::write_file(path, content);
  }
}

lang::Program load_program(const std::string& path) {
  return lang::parse(io::read_file(path));
}

std::vector<mt::MrRunResult> run_all_mrs(const lang::Program& p,
                                         const std::vector<mt::MrSpec>& mrs,
                                         const mt::TestSuite& suite, long long step_limit) {
  std::vector<mt::MrRunResult> runs;
  for (const auto& mr : mrs) runs.push_back(mt::run_mr(p, mr, suite, step_limit));
  return runs;
}

std::map<std::string, exec::CoverageUnion> coverage_by_mr(
    const std::vector<mt::MrRunResult>& runs) {
  std::map<std::string, exec::CoverageUnion> cov;
  for (const auto& r : runs) cov[r.mr_id] = r.coverage;
  return cov;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metamorphic-relation prioritization laboratory"};
  app.require_subcommand(1);

  std::string program_path, tests_path, mrs_path, mutants_path, matrix_path;
  std::string scores_path, runs_path, ordering_path, out_path, csv_path, role_arg;
  std::string strategy, config_path, ops_arg;
  long long step_limit = exec::kDefaultStepLimit;
  std::uint64_t seed = 0;
  bool aor_full = false, serial = false;
  std::vector<std::string> thresholds;

  auto* analyze = app.add_subcommand("analyze", "dump CFG + dependence info as JSON");
  analyze->add_option("program", program_path, "MiniLang source file")->required();
  analyze->add_option("--emit", out_path, "output file (default: stdout)");

  auto* run = app.add_subcommand("run", "execute a test suite, emit per-case profiles");
  run->add_option("program", program_path)->required();
  run->add_option("--tests", tests_path, "test suite JSON")->required();
  run->add_option("--step-limit", step_limit, "interpreter step budget per run");
  run->add_option("--emit", out_path);

  auto* score = app.add_subcommand("score", "run MRs and compute centrality quality scores");
  score->add_option("program", program_path)->required();
  score->add_option("--mrs", mrs_path, "MR catalog JSON")->required();
  score->add_option("--tests", tests_path, "source test suite JSON")->required();
  score->add_option("--step-limit", step_limit);
  score->add_option("--emit", out_path);
  score->add_option("--emit-runs", runs_path, "also write the per-MR run records");

  auto* mutate = app.add_subcommand("mutate", "generate first-order mutants");
  mutate->add_option("program", program_path)->required();
  mutate->add_option("--ops", ops_arg, "comma-separated operator subset (default: all)");
  mutate->add_flag("--aor-full", aor_full, "full arithmetic cross-product instead of pairs");
  mutate->add_option("--mrs", mrs_path, "screen against this catalog (with --tests)");
  mutate->add_option("--tests", tests_path, "screening suite (with --mrs)");
  mutate->add_option("--step-limit", step_limit);
  mutate->add_option("--emit", out_path);

  auto* kill = app.add_subcommand("kill-matrix", "run MRs against mutants");
  kill->add_option("program", program_path)->required();
  kill->add_option("--mutants", mutants_path, "mutants JSON")->required();
  kill->add_option("--mrs", mrs_path)->required();
  kill->add_option("--tests", tests_path)->required();
  kill->add_option("--role", role_arg, "prioritizing|validation (default: from suite role)");
  kill->add_option("--step-limit", step_limit);
  kill->add_option("--emit", out_path);

  auto* prio = app.add_subcommand("prioritize", "order MRs by one strategy");
  prio->add_option("--strategy", strategy, "centrality|fault|stmt-cov|branch-cov|random")
      ->required();
  prio->add_option("--scores", scores_path, "scores JSON (centrality)");
  prio->add_option("--kill-matrix", matrix_path, "prioritizing matrix JSON (fault)");
  prio->add_option("--mr-runs", runs_path, "MR run records JSON (stmt-cov/branch-cov)");
  prio->add_option("--mrs", mrs_path, "MR catalog JSON (random)");
  prio->add_option("--seed", seed, "tie-break / shuffle seed");
  prio->add_option("--emit", out_path);

  auto* eval = app.add_subcommand("evaluate", "score an ordering against a kill matrix");
  eval->add_option("--ordering", ordering_path)->required();
  eval->add_option("--kill-matrix", matrix_path)->required();
  eval->add_option("--threshold", thresholds, "plateau cutoff percent (repeatable)");
  eval->add_option("--emit", out_path);
  eval->add_option("--emit-csv", csv_path, "effectiveness curve CSV");

  auto* pipe = app.add_subcommand("pipeline", "full run from a config file");
  pipe->add_option("config", config_path, "pipeline config JSON")->required();
  pipe->add_option("--out", out_path, "override the config's output directory");
  pipe->add_flag("--serial", serial, "disable the parallel execution paths");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (*analyze) {
      emit(out_path, io::analysis_json(load_program(program_path)));
    } else if (*run) {
      lang::Program p = load_program(program_path);
      mt::TestSuite suite = io::load_test_suite(tests_path);
      std::vector<exec::ExecutionProfile> profiles;
      for (const auto& tc : suite.cases) {
        profiles.push_back(exec::execute(p, tc.entry, tc.args, step_limit, tc.id));
      }
      emit(out_path, io::profiles_json(profiles, p.source_digest));
    } else if (*score) {
      lang::Program p = load_program(program_path);
      auto mrs = io::load_mrs(mrs_path);
      auto suite = io::load_test_suite(tests_path);
      auto runs = run_all_mrs(p, mrs, suite, step_limit);
      if (!runs_path.empty()) {
        io::write_file(runs_path, io::mr_runs_json(runs, p.source_digest));
      }
      std::map<std::string, dep::Pdg> pdgs;
      std::map<std::string, lang::Cfg> cfgs;
      for (const auto& f : p.functions) {
        pdgs.emplace(f.name, dep::compute_pdg(f));
        cfgs.emplace(f.name, lang::build_cfg(f));
      }
      std::vector<centrality::ScoreBreakdown> scores;
      for (const auto& r : runs) {
        scores.push_back(centrality::mr_quality_score(p, pdgs, cfgs, r));
      }
      emit(out_path, io::scores_json(scores, p.source_digest));
    } else if (*mutate) {
      lang::Program p = load_program(program_path);
      mutation::GenOptions gen;
      gen.aor_full = aor_full;
      if (!ops_arg.empty()) {
        gen.operators.clear();
        std::string item;
        for (char c : ops_arg + ",") {
          if (c == ',') {
            if (!item.empty()) gen.operators.insert(mutation::operator_from_string(item));
            item.clear();
          } else {
            item += c;
          }
        }
      }
      auto mutants = mutation::generate_mutants(p, gen);
      if (mrs_path.empty() != tests_path.empty()) {
        throw io::ConfigError("screening needs both --mrs and --tests");
      }
      if (!mrs_path.empty()) {
        auto mrs = io::load_mrs(mrs_path);
        auto suite = io::load_test_suite(tests_path);
        mutation::screen_mutants(mutants, mrs, suite, step_limit, Parallelism::OpenMP);
      }
      emit(out_path, io::mutants_json(p, mutants));
    } else if (*kill) {
      lang::Program p = load_program(program_path);
      auto mrs = io::load_mrs(mrs_path);
      auto suite = io::load_test_suite(tests_path);
      auto all = io::load_mutants(mutants_path);
      std::vector<mutation::Mutant> pool;
      for (const auto& m : all) {
        if (m.status != mutation::MutantStatus::ScreenedOut) pool.push_back(m);
      }
      mutation::MatrixRole role;
      if (role_arg.empty()) {
        role = (suite.role == mt::SuiteRole::PrioritizingSource)
                   ? mutation::MatrixRole::Prioritizing
                   : mutation::MatrixRole::Validation;
      } else if (role_arg == "prioritizing") {
        role = mutation::MatrixRole::Prioritizing;
      } else if (role_arg == "validation") {
        role = mutation::MatrixRole::Validation;
      } else {
        throw io::ConfigError("--role must be prioritizing or validation");
      }
      auto km = mutation::build_kill_matrix(p, pool, mrs, suite, role, step_limit,
                                            Parallelism::OpenMP);
      emit(out_path, io::kill_matrix_json(km));
    } else if (*prio) {
      prioritize::Ordering o;
      if (strategy == "centrality") {
        if (scores_path.empty()) throw io::ConfigError("centrality needs --scores");
        o = prioritize::centrality_order(io::load_scores(scores_path));
      } else if (strategy == "fault") {
        if (matrix_path.empty()) throw io::ConfigError("fault needs --kill-matrix");
        o = prioritize::fault_based_order(io::load_kill_matrix(matrix_path));
      } else if (strategy == "stmt-cov" || strategy == "branch-cov") {
        if (runs_path.empty()) throw io::ConfigError(strategy + " needs --mr-runs");
        auto runs = io::load_mr_runs(runs_path);
        o = prioritize::coverage_order(coverage_by_mr(runs),
                                       strategy == "stmt-cov"
                                           ? prioritize::CoverageUnit::Statement
                                           : prioritize::CoverageUnit::Branch,
                                       seed);
      } else if (strategy == "random") {
        if (mrs_path.empty()) throw io::ConfigError("random needs --mrs");
        std::vector<std::string> ids;
        for (const auto& mr : io::load_mrs(mrs_path)) ids.push_back(mr.id);
        o = prioritize::random_orders(ids, 1, seed).at(0);
      } else {
        throw io::ConfigError("unknown strategy '" + strategy + "'");
      }
      emit(out_path, io::ordering_json(o));
    } else if (*eval) {
      auto o = io::load_ordering(ordering_path);
      auto km = io::load_kill_matrix(matrix_path);
      std::vector<Rational> ths;
      for (const auto& t : thresholds) ths.push_back(Rational::from_decimal(t));
      auto rep = evaluate::evaluate_ordering(o, km, ths);
      if (!csv_path.empty()) io::write_file(csv_path, io::curve_csv(rep.curve));
      emit(out_path, io::report_json(rep));
    } else if (*pipe) {
      pipeline::PipelineConfig cfg = pipeline::load_config(config_path);
      if (!out_path.empty()) cfg.output_dir = out_path;
      pipeline::PipelineResult res = pipeline::run_pipeline(
          cfg, serial ? Parallelism::Serial : Parallelism::OpenMP);
      std::string summary = io::read_file(
          (std::filesystem::path(cfg.output_dir) / "summary.txt").string());
      std::fputs(summary.c_str(), stdout);
      std::printf("\nartifacts: %zu files in %s\n", res.artifact_digests.size(),
                  cfg.output_dir.c_str());
    }
  } catch (const io::ConfigError& ex) {
    std::fprintf(stderr, "config error: %s\n", ex.what());
    return kConfigError;
  } catch (const pipeline::DisjointnessError& ex) {
    std::fprintf(stderr, "config error: %s\n", ex.what());
    return kConfigError;
  } catch (const lang::SyntaxError& ex) {
    std::fprintf(stderr, "analysis error: %s\n", ex.what());
    return kAnalysisError;
  } catch (const lang::TypeError& ex) {
    std::fprintf(stderr, "analysis error: %s\n", ex.what());
    return kAnalysisError;
  } catch (const lang::DuplicateFunctionError& ex) {
    std::fprintf(stderr, "analysis error: %s\n", ex.what());
    return kAnalysisError;
  } catch (const lang::UnknownFunctionError& ex) {
    std::fprintf(stderr, "analysis error: %s\n", ex.what());
    return kAnalysisError;
  } catch (const lang::UnknownStatementError& ex) {
    std::fprintf(stderr, "analysis error: %s\n", ex.what());
    return kAnalysisError;
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return kExecutionError;
  }
  return kOk;
}
