#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "metaprio/evaluate.hpp"
#include "metaprio/json_io.hpp"
#include "metaprio/parallel.hpp"

// End-to-end run over one subject: analyze, score, mutate, build kill
// matrices, produce one ordering per strategy, evaluate everything against
// the validation matrix, and drop all artifacts into an output directory.
// Every artifact is deterministic — rerunning the same config produces the
// same bytes, which is what makes result diffing and caching trustworthy.

namespace metaprio::pipeline {

struct DisjointnessError : lang::Error {
  using Error::Error;
};

struct PipelineConfig {
  std::string subject;             // resolved path to the MiniLang source
  std::string mrs;                 // resolved path to the MR catalog
  std::string prioritizing_tests;  // resolved path, role prioritizing_source
  std::string validation_tests;    // resolved path, role validation_source
  std::set<mutation::Operator> operators = {
      mutation::Operator::AOR, mutation::Operator::ROR, mutation::Operator::LOR,
      mutation::Operator::CRP, mutation::Operator::SDL};
  bool aor_full = false;
  long long step_limit = exec::kDefaultStepLimit;
  std::uint64_t coverage_tie_seed = 0;
  std::uint64_t random_baseline_seed = 0;
  std::vector<std::string> thresholds;  // plateau cutoffs, decimal text
  int random_count = 100;
  std::string output_dir;
};

// Reads a config file; every relative path inside is resolved against the
// directory containing the file (including output_dir).
PipelineConfig load_config(const std::string& path);

struct PipelineResult {
  std::string program_digest;
  int candidate_count = 0;
  int viable_count = 0;
  int killable_prioritizing = 0;
  int killable_validation = 0;
  std::vector<evaluate::EvaluationReport> reports;  // one per strategy
  evaluate::BaselineAverage baseline;               // random-ordering mean
  std::map<std::string, std::string> artifact_digests;  // file name -> digest
};

PipelineResult run_pipeline(const PipelineConfig& cfg,
                            Parallelism par = Parallelism::Serial);

}  // namespace metaprio::pipeline
